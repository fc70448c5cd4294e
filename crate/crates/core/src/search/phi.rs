use super::{Method, Quantity, SearchResult, Witness};
use crate::bitset::VertexSet;
use crate::cliques::binomial;
use crate::error::{Error, Result};
use crate::setsystem::{is_l_intersecting, IntersectionSpec, UniformSetSystem};

/// Largest compatibility graph `phi_exact` builds: `C(n, r)` nodes.
pub const MAX_PHI_NODES: u64 = 100_000;

/// Search-tree nodes allowed before `phi_exact` gives up.
pub const MAX_PHI_BRANCHES: u64 = 50_000_000;

/// Maximum clique of the graph on all `r`-subsets, adjacent when their
/// intersection size is allowed. Adjacency is evaluated on demand from the
/// subset masks.
struct Compat<'a> {
    masks: Vec<VertexSet>,
    ok: &'a [bool],
    best: Vec<u32>,
    branches: u64,
}

impl Compat<'_> {
    fn adjacent(&self, a: u32, b: u32) -> bool {
        self.ok[self.masks[a as usize].intersection_len(&self.masks[b as usize])]
    }

    /// Greedy sequential colouring of `p`; returns the vertices sorted by
    /// colour together with their colour numbers (1-based).
    fn colour_sort(&self, p: &[u32]) -> (Vec<u32>, Vec<usize>) {
        let mut classes: Vec<Vec<u32>> = Vec::new();
        for &v in p {
            match classes
                .iter_mut()
                .find(|c| c.iter().all(|&w| !self.adjacent(v, w)))
            {
                Some(c) => c.push(v),
                None => classes.push(vec![v]),
            }
        }
        let mut order = Vec::with_capacity(p.len());
        let mut colours = Vec::with_capacity(p.len());
        for (k, class) in classes.into_iter().enumerate() {
            colours.extend(std::iter::repeat_n(k + 1, class.len()));
            order.extend(class);
        }
        (order, colours)
    }

    fn expand(&mut self, clique: &mut Vec<u32>, p: Vec<u32>) -> Result<()> {
        self.branches += 1;
        if self.branches > MAX_PHI_BRANCHES {
            return Err(Error::Budget(format!(
                "Φ branch and bound exceeded {MAX_PHI_BRANCHES} nodes; use a heuristic"
            )));
        }
        let (order, colours) = self.colour_sort(&p);
        for i in (0..order.len()).rev() {
            if clique.len() + colours[i] <= self.best.len() {
                return Ok(());
            }
            let v = order[i];
            let next: Vec<u32> = order[..i]
                .iter()
                .copied()
                .filter(|&w| self.adjacent(v, w))
                .collect();
            clique.push(v);
            if next.is_empty() {
                if clique.len() > self.best.len() {
                    self.best = clique.clone();
                }
            } else {
                self.expand(clique, next)?;
            }
            clique.pop();
        }
        Ok(())
    }
}

/// `Φ_r(n, L)`: the largest `L`-intersecting family of `r`-subsets of
/// `0..n`, by branch and bound with greedy colouring bounds.
pub fn phi_exact(n: usize, spec: &IntersectionSpec) -> Result<SearchResult> {
    let r = spec.r();
    let nodes = binomial(n as u64, r as u64).filter(|&c| c <= MAX_PHI_NODES);
    let Some(nodes) = nodes else {
        return Err(Error::Budget(format!(
            "C({n}, {r}) exceeds the {MAX_PHI_NODES}-node budget for exact Φ"
        )));
    };
    let all = UniformSetSystem::complete(n, r);
    debug_assert_eq!(all.len() as u64, nodes);
    let ok: Vec<bool> = (0..=r).map(|k| spec.allows(k)).collect();
    let mut search = Compat {
        masks: all.masks(),
        ok: &ok,
        best: Vec::new(),
        branches: 0,
    };
    let p: Vec<u32> = (0..all.len() as u32).collect();
    if !p.is_empty() {
        search.expand(&mut Vec::new(), p)?;
    }
    let mut members: Vec<Vec<usize>> = search
        .best
        .iter()
        .map(|&i| all.edges()[i as usize].clone())
        .collect();
    members.sort();
    let family = UniformSetSystem::new(n, r, members)?;
    if !is_l_intersecting(&family, spec)?.holds() {
        return Err(Error::Invariant("Φ witness is not L-intersecting".into()));
    }
    Ok(SearchResult::new(
        Quantity::Phi,
        n,
        spec,
        family.len() as u64,
        Witness::Family(family),
        Method::BranchAndBound,
        true,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(r: usize, l: &[usize]) -> IntersectionSpec {
        IntersectionSpec::new(r, l.iter().copied()).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(phi_exact(5, &spec(3, &[2])).unwrap().value, 4);
        assert_eq!(phi_exact(6, &spec(3, &[0])).unwrap().value, 2);
        // At n = 5 any two triples meet, so the whole C(5, 3) qualifies; the
        // star C(n − 1, 2) is optimal from n = 2r on.
        let t1 = IntersectionSpec::t_intersecting(3, 1).unwrap();
        let got: Vec<u64> = (5..=7).map(|n| phi_exact(n, &t1).unwrap().value).collect();
        assert_eq!(got, vec![10, 10, 15]);
        assert_eq!(phi_exact(2, &spec(3, &[0])).unwrap().value, 0);
        assert_eq!(phi_exact(7, &IntersectionSpec::full(3).unwrap()).unwrap().value, 35);
    }

    #[test]
    fn budget_refusal() {
        assert!(matches!(phi_exact(100, &spec(4, &[0])), Err(Error::Budget(_))));
    }

    #[test]
    fn deterministic_witness() {
        let s = spec(3, &[0, 1]);
        assert_eq!(phi_exact(7, &s).unwrap(), phi_exact(7, &s).unwrap());
    }
}
