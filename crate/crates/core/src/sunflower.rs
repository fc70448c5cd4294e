//! Sunflower (Δ-system) detection and maximum sunflowers with a given core.

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::setsystem::{common_core, UniformSetSystem};

/// Search nodes allowed for one maximum-sunflower computation.
pub const MAX_SUNFLOWER_NODES: u64 = 20_000_000;

/// A family whose members pairwise intersect exactly in `core`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sunflower {
    pub core: Vec<usize>,
    /// `e ∖ core` for each member, in lexicographic order of the members.
    pub petals: Vec<Vec<usize>>,
}

impl Sunflower {
    pub fn len(&self) -> usize {
        self.petals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.petals.is_empty()
    }

    /// The members `core ∪ petal`, each sorted.
    pub fn edges(&self) -> Vec<Vec<usize>> {
        self.petals
            .iter()
            .map(|p| {
                let mut e: Vec<usize> = self.core.iter().chain(p).copied().collect();
                e.sort_unstable();
                e
            })
            .collect()
    }

    /// Whether every two reconstructed members meet exactly in the core.
    pub fn is_valid(&self) -> bool {
        let core: std::collections::BTreeSet<usize> = self.core.iter().copied().collect();
        let petals: Vec<std::collections::BTreeSet<usize>> = self
            .petals
            .iter()
            .map(|p| p.iter().copied().collect())
            .collect();
        petals.iter().all(|p| p.is_disjoint(&core))
            && petals
                .iter()
                .enumerate()
                .all(|(i, p)| petals[i + 1..].iter().all(|q| p.is_disjoint(q)))
    }
}

/// Result of [`find_sunflower`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SunflowerCheck {
    Sunflower(Sunflower),
    /// The only possible core is the common intersection; `witness` is the
    /// lexicographically first pair meeting in more than that.
    NotSunflower {
        candidate_core: Vec<usize>,
        witness: (Vec<usize>, Vec<usize>),
    },
}

impl SunflowerCheck {
    pub fn sunflower(&self) -> Option<&Sunflower> {
        match self {
            SunflowerCheck::Sunflower(s) => Some(s),
            SunflowerCheck::NotSunflower { .. } => None,
        }
    }
}

/// Decides whether `h` is a sunflower.
///
/// If all pairwise intersections equal some set `C`, then `C` is the
/// intersection of all edges, so only that candidate needs checking.
pub fn find_sunflower(h: &UniformSetSystem) -> Result<SunflowerCheck> {
    if h.len() < 2 {
        return Err(Error::invalid(format!(
            "a sunflower check needs at least two edges, got {}",
            h.len()
        )));
    }
    let core = common_core(h)?;
    let masks = h.masks();
    for i in 0..masks.len() {
        for j in i + 1..masks.len() {
            // The core lies in both edges, so equal sizes mean equal sets.
            if masks[i].intersection_len(&masks[j]) != core.len() {
                return Ok(SunflowerCheck::NotSunflower {
                    candidate_core: core,
                    witness: (h.edges()[i].clone(), h.edges()[j].clone()),
                });
            }
        }
    }
    let petals = h
        .edges()
        .iter()
        .map(|e| e.iter().copied().filter(|v| core.binary_search(v).is_err()).collect())
        .collect();
    Ok(SunflowerCheck::Sunflower(Sunflower { core, petals }))
}

struct Packing<'a> {
    petals: &'a [VertexSet],
    best: Vec<usize>,
    nodes: u64,
}

impl Packing<'_> {
    fn search(&mut self, idx: usize, chosen: &mut Vec<usize>, used: &VertexSet) -> Result<()> {
        self.nodes += 1;
        if self.nodes > MAX_SUNFLOWER_NODES {
            return Err(Error::Budget(format!(
                "maximum sunflower search exceeded {MAX_SUNFLOWER_NODES} nodes"
            )));
        }
        let open = self.petals[idx..]
            .iter()
            .filter(|p| p.is_disjoint(used))
            .count();
        if chosen.len() + open <= self.best.len() {
            return Ok(());
        }
        if idx == self.petals.len() {
            self.best = chosen.clone();
            return Ok(());
        }
        if self.petals[idx].is_disjoint(used) {
            let mut next = used.clone();
            next.union_with(&self.petals[idx]);
            chosen.push(idx);
            self.search(idx + 1, chosen, &next)?;
            chosen.pop();
        }
        self.search(idx + 1, chosen, used)
    }
}

/// A largest subfamily of `{ e ∈ h : c ⊆ e }` whose petals `e ∖ c` are
/// pairwise disjoint.
///
/// Exact branch and bound over the candidate edges in lexicographic order,
/// including before excluding. The first leaf reached is the greedy
/// selection, and a later leaf replaces the incumbent only when strictly
/// larger, so among maximum families the lexicographically greedy-first
/// one is returned.
pub fn max_sunflower_with_core(h: &UniformSetSystem, c: &[usize]) -> Result<Sunflower> {
    let mut core = c.to_vec();
    core.sort_unstable();
    core.dedup();
    if core.len() != c.len() {
        return Err(Error::invalid("core repeats an element"));
    }
    if core.len() >= h.r() {
        return Err(Error::invalid(format!(
            "core size {} must be below the uniformity {}",
            core.len(),
            h.r()
        )));
    }
    if let Some(&bad) = core.iter().find(|&&v| v >= h.n()) {
        return Err(Error::invalid(format!("core element {bad} outside 0..{}", h.n())));
    }
    let core_set = VertexSet::from_iter_in(h.n(), core.iter().copied());
    let candidates: Vec<Vec<usize>> = h
        .edges()
        .iter()
        .filter(|e| core.iter().all(|v| e.binary_search(v).is_ok()))
        .map(|e| e.iter().copied().filter(|v| !core_set.contains(*v)).collect())
        .collect();
    let petals: Vec<VertexSet> = candidates
        .iter()
        .map(|p: &Vec<usize>| VertexSet::from_iter_in(h.n(), p.iter().copied()))
        .collect();

    let pairwise_disjoint = petals
        .iter()
        .enumerate()
        .all(|(i, p)| petals[i + 1..].iter().all(|q| p.is_disjoint(q)));
    let chosen: Vec<usize> = if pairwise_disjoint {
        (0..petals.len()).collect()
    } else {
        let mut packing = Packing {
            petals: &petals,
            best: Vec::new(),
            nodes: 0,
        };
        packing.search(0, &mut Vec::new(), &VertexSet::new(h.n()))?;
        packing.best
    };
    Ok(Sunflower {
        core,
        petals: chosen.into_iter().map(|i| candidates[i].clone()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(n: usize, r: usize, edges: &[&[usize]]) -> UniformSetSystem {
        UniformSetSystem::new(n, r, edges.iter().map(|e| e.to_vec())).unwrap()
    }

    #[test]
    fn finds_core() {
        let h = sys(5, 3, &[&[0, 1, 2], &[0, 1, 3], &[0, 1, 4]]);
        let s = find_sunflower(&h).unwrap();
        let s = s.sunflower().unwrap();
        assert_eq!(s.core, vec![0, 1]);
        assert_eq!(s.edges(), h.edges());
        assert!(s.is_valid());
    }

    #[test]
    fn rejects_non_sunflower() {
        let h = sys(6, 3, &[&[0, 1, 2], &[0, 3, 4], &[1, 3, 5]]);
        match find_sunflower(&h).unwrap() {
            SunflowerCheck::NotSunflower { candidate_core, witness } => {
                assert!(candidate_core.is_empty());
                assert_eq!(witness, (vec![0, 1, 2], vec![0, 3, 4]));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn needs_two_edges() {
        assert!(find_sunflower(&sys(3, 3, &[&[0, 1, 2]])).is_err());
    }

    #[test]
    fn max_sunflower_examples() {
        let star = sys(11, 3, &[&[0, 1, 2], &[0, 3, 4], &[0, 5, 6], &[0, 7, 8], &[0, 9, 10]]);
        assert_eq!(max_sunflower_with_core(&star, &[0]).unwrap().len(), 5);

        let tri = sys(4, 3, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3]]);
        let s = max_sunflower_with_core(&tri, &[0]).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s.petals, vec![vec![1, 2]]);

        assert!(max_sunflower_with_core(&tri, &[3, 1, 2]).is_err());
        assert!(max_sunflower_with_core(&star, &[1, 3]).unwrap().is_empty());
    }

    #[test]
    fn exact_beats_greedy() {
        // Greedy takes {0,1,2} and blocks both others; optimum is 2.
        let h = sys(6, 3, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 4]]);
        let s = max_sunflower_with_core(&h, &[0]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.petals, vec![vec![1, 3], vec![2, 4]]);
    }

    #[test]
    fn fano_plane_is_not_a_sunflower() {
        // Seven lines, pairwise meeting in one point: {1}-intersecting with
        // r^2 - r + 1 edges for r = 3, yet no common core. One more edge
        // than this forces a sunflower.
        let lines: [&[usize]; 7] = [
            &[0, 1, 2],
            &[0, 3, 4],
            &[0, 5, 6],
            &[1, 3, 5],
            &[1, 4, 6],
            &[2, 3, 6],
            &[2, 4, 5],
        ];
        let fano = sys(7, 3, &lines);
        let spec = crate::setsystem::IntersectionSpec::new(3, [1]).unwrap();
        assert!(crate::setsystem::is_l_intersecting(&fano, &spec).unwrap().holds());
        assert!(find_sunflower(&fano).unwrap().sunflower().is_none());
    }
}
