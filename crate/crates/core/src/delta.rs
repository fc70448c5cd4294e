//! The sunflower decomposition of a `(K_r, {0, ℓ})`-intersecting graph and
//! checks of the structural facts it is expected to satisfy.
//!
//! Vertices of high `K_r`-degree form `U`. Each vertex of `U` lies in an
//! `ℓ`-set core `C` carrying a large sunflower `S_C` of `K_r` copies; the
//! cores are the nodes of an auxiliary graph `H`, with `C ~ C'` when a
//! member of one sunflower contains the other core.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::VertexSet;
use crate::cliques::{count_kr, enumerate_kr, CliqueSet};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::write_graph6;
use crate::setsystem::{common_core, is_l_intersecting, link, IntersectionSpec, Violation};
use crate::sunflower::{find_sunflower, max_sunflower_with_core, Sunflower};

/// How candidate cores are found.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CoreDiscovery {
    /// From the sunflower structure of the link of each high-degree vertex.
    #[default]
    LinkScan,
    /// Every `ℓ`-subset of the vertex set; only for `n ≤ 20`.
    FullScan,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DecomposeOptions {
    /// Degree threshold for `U`; `r²` when absent.
    pub threshold: Option<usize>,
    pub discovery: CoreDiscovery,
}

const FULL_SCAN_MAX_N: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SunflowerDecomposition {
    pub g: Graph,
    pub r: usize,
    pub ell: usize,
    pub threshold: usize,
    pub kgr: CliqueSet,
    /// `K_r`-degree of every vertex.
    pub degrees: Vec<usize>,
    pub u: Vec<usize>,
    pub ubar: Vec<usize>,
    /// Sorted lexicographically; `sunflowers[i]` has core `cores[i]`.
    pub cores: Vec<Vec<usize>>,
    pub sunflowers: Vec<Sunflower>,
    /// Auxiliary graph; node `i` is `cores[i]`.
    pub aux: Graph,
}

fn violation_message(v: &Violation) -> String {
    format!(
        "{:?} and {:?} meet in {} vertices",
        v.first, v.second, v.size
    )
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn decompose(g: &Graph, r: usize, ell: usize, options: &DecomposeOptions) -> Result<SunflowerDecomposition> {
    if !(ell >= 1 && ell < r) {
        return Err(Error::invalid(format!("need 1 <= l <= r - 1, got l = {ell}, r = {r}")));
    }
    let spec = IntersectionSpec::new(r, [0, ell])?;
    let kgr = enumerate_kr(g, r)?;
    if let Some(v) = is_l_intersecting(kgr.as_system(), &spec)?.witness {
        return Err(Error::invalid(format!(
            "graph is not (K_{r}, {spec})-intersecting: {}",
            violation_message(&v)
        )));
    }
    let n = g.n();
    let threshold = options.threshold.unwrap_or(r * r);
    let h = kgr.as_system();
    let degrees = h.degrees();
    let (u, ubar): (Vec<usize>, Vec<usize>) = (0..n).partition(|&v| degrees[v] >= threshold);

    let candidates: BTreeSet<Vec<usize>> = match options.discovery {
        CoreDiscovery::LinkScan => u
            .par_iter()
            .map(|&v| -> Result<Option<Vec<usize>>> {
                let lk = link(h, v)?;
                if lk.len() < 2 {
                    return Ok(None);
                }
                Ok(find_sunflower(&lk)?.sunflower().and_then(|s| {
                    let mut c = s.core.clone();
                    c.push(v);
                    c.sort_unstable();
                    (c.len() == ell).then_some(c)
                }))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect(),
        CoreDiscovery::FullScan => {
            if n > FULL_SCAN_MAX_N {
                return Err(Error::Budget(format!(
                    "full core scan is limited to n <= {FULL_SCAN_MAX_N}"
                )));
            }
            subsets(n, ell).into_iter().collect()
        }
    };
    let scored: Vec<(Vec<usize>, Sunflower)> = candidates
        .into_par_iter()
        .map(|c| max_sunflower_with_core(h, &c).map(|s| (c, s)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, s)| s.len() >= threshold)
        .collect();
    let (cores, sunflowers): (Vec<Vec<usize>>, Vec<Sunflower>) = scored.into_iter().unzip();

    let core_sets: Vec<VertexSet> = cores
        .iter()
        .map(|c| VertexSet::from_iter_in(n, c.iter().copied()))
        .collect();
    let member_sets: Vec<Vec<VertexSet>> = sunflowers
        .iter()
        .map(|s| {
            s.edges()
                .into_iter()
                .map(|e| VertexSet::from_iter_in(n, e))
                .collect()
        })
        .collect();
    let mut aux = Graph::empty(cores.len());
    for i in 0..cores.len() {
        for j in i + 1..cores.len() {
            let i_holds_j = member_sets[i].iter().any(|e| core_sets[j].is_subset(e));
            let j_holds_i = member_sets[j].iter().any(|e| core_sets[i].is_subset(e));
            if i_holds_j || j_holds_i {
                aux.add_edge(i, j)?;
            }
        }
    }
    Ok(SunflowerDecomposition {
        g: g.clone(),
        r,
        ell,
        threshold,
        kgr,
        degrees,
        u,
        ubar,
        cores,
        sunflowers,
        aux,
    })
}

/// JSON-facing view of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionSummary {
    pub n: usize,
    pub r: usize,
    pub ell: usize,
    pub threshold: usize,
    pub kr_count: usize,
    pub u: Vec<usize>,
    pub ubar: Vec<usize>,
    pub cores: Vec<Vec<usize>>,
    pub sunflower_sizes: Vec<usize>,
    /// graph6 of `H` with node `i` standing for `cores[i]`.
    pub aux_graph6: String,
    pub aux_edges: usize,
}

impl SunflowerDecomposition {
    pub fn summary(&self) -> Result<DecompositionSummary> {
        Ok(DecompositionSummary {
            n: self.g.n(),
            r: self.r,
            ell: self.ell,
            threshold: self.threshold,
            kr_count: self.kgr.len(),
            u: self.u.clone(),
            ubar: self.ubar.clone(),
            cores: self.cores.clone(),
            sunflower_sizes: self.sunflowers.iter().map(Sunflower::len).collect(),
            aux_graph6: write_graph6(&self.aux)?,
            aux_edges: self.aux.edge_count(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimCheck {
    /// `a` through `e`.
    pub claim: char,
    pub statement: &'static str,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimReport {
    pub claims: Vec<ClaimCheck>,
    pub all_passed: bool,
}

fn claim(id: char, statement: &'static str, witness: Option<String>) -> ClaimCheck {
    ClaimCheck {
        claim: id,
        statement,
        passed: witness.is_none(),
        witness,
    }
}

fn claim_cover(d: &SunflowerDecomposition) -> Option<String> {
    let union: BTreeSet<usize> = d.cores.iter().flatten().copied().collect();
    let u: BTreeSet<usize> = d.u.iter().copied().collect();
    if union != u {
        let missing: Vec<usize> = u.difference(&union).copied().collect();
        let extra: Vec<usize> = union.difference(&u).copied().collect();
        return Some(format!("U minus cores: {missing:?}; cores minus U: {extra:?}"));
    }
    (d.u.len() != d.ell * d.cores.len()).then(|| {
        format!("|U| = {} but l * |cores| = {}", d.u.len(), d.ell * d.cores.len())
    })
}

fn claim_disjoint(d: &SunflowerDecomposition) -> Option<String> {
    for (i, a) in d.cores.iter().enumerate() {
        for b in &d.cores[i + 1..] {
            if a.iter().any(|v| b.binary_search(v).is_ok()) {
                return Some(format!("cores {a:?} and {b:?} intersect"));
            }
        }
    }
    None
}

fn claim_edges(d: &SunflowerDecomposition) -> Option<String> {
    d.cores
        .par_iter()
        .zip(d.sunflowers.par_iter())
        .find_map_first(|(c, s)| {
            let members: BTreeSet<Vec<usize>> = s.edges().into_iter().collect();
            d.kgr.members().iter().find_map(|e| {
                let meets = c.iter().any(|v| e.binary_search(v).is_ok());
                (meets && !members.contains(e))
                    .then(|| format!("{e:?} meets core {c:?} but is not in its sunflower"))
            })
        })
}

fn claim_aux_clique(d: &SunflowerDecomposition) -> Result<Option<String>> {
    let k = (2 * d.r).div_ceil(d.ell);
    let found = count_kr(&d.aux, k)?;
    Ok((found > 0).then(|| format!("auxiliary graph contains {found} copies of K_{k}")))
}

fn claim_degree(d: &SunflowerDecomposition) -> Option<String> {
    let ubar = d.ubar.len();
    for (i, c) in d.cores.iter().enumerate() {
        let rhs = d.ell * d.aux.degree(i) + ubar;
        for &v in c {
            if d.degrees[v] * (d.r - d.ell) > rhs {
                return Some(format!(
                    "vertex {v} of core {c:?}: d = {}, (l * d_H + |Ubar|) / (r - l) = {rhs}/{}",
                    d.degrees[v],
                    d.r - d.ell
                ));
            }
        }
    }
    None
}

/// Evaluates the five structural claims; failures are reported, not raised.
pub fn verify_claims(d: &SunflowerDecomposition) -> Result<ClaimReport> {
    let claims = vec![
        claim('a', "U is the union of the cores and |U| = l * |cores|", claim_cover(d)),
        claim('b', "cores are pairwise disjoint", claim_disjoint(d)),
        claim(
            'c',
            "every K_r copy is in S_C or misses C, for every core C",
            claim_edges(d),
        ),
        claim(
            'd',
            "the auxiliary graph is K_ceil(2r/l)-free",
            claim_aux_clique(d)?,
        ),
        claim(
            'e',
            "d(u) <= (l * d_H(C) + |Ubar|) / (r - l) for u in C",
            claim_degree(d),
        ),
    ];
    let all_passed = claims.iter().all(|c| c.passed);
    Ok(ClaimReport { claims, all_passed })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeAudit {
    pub r_times_kr_count: u64,
    pub degree_sum: u64,
    pub handshake_holds: bool,
    pub sum_over_u: u64,
    pub sum_over_ubar: u64,
    pub twice_aux_edges: u64,
    /// `Σ_{u∈Ū} d(u) ≤ r² |Ū|`.
    pub ubar_within_estimate: bool,
}

pub fn degree_sum_audit(d: &SunflowerDecomposition) -> DegreeAudit {
    let deg = |vs: &[usize]| vs.iter().map(|&v| d.degrees[v] as u64).sum::<u64>();
    let sum_over_u = deg(&d.u);
    let sum_over_ubar = deg(&d.ubar);
    let degree_sum = d.degrees.iter().map(|&x| x as u64).sum();
    let r_times_kr_count = (d.r * d.kgr.len()) as u64;
    DegreeAudit {
        r_times_kr_count,
        degree_sum,
        handshake_holds: r_times_kr_count == degree_sum,
        sum_over_u,
        sum_over_ubar,
        twice_aux_edges: 2 * d.aux.edge_count() as u64,
        ubar_within_estimate: sum_over_ubar <= (d.r * d.r * d.ubar.len()) as u64,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Case2Reduction {
    /// The `ℓ1` vertices common to every `K_r`.
    pub core: Vec<usize>,
    /// `g` induced on the common neighbourhood of `core`.
    #[serde(skip)]
    pub reduced: Graph,
    /// `labels[i]` is the vertex of `g` that became vertex `i` of `reduced`.
    pub labels: Vec<usize>,
    pub r_prime: usize,
    pub ell_prime: usize,
    pub kr_count: u64,
}

/// Reduces a `(K_r, {ℓ1, ℓ2})`-intersecting graph with `ℓ1 ≥ 1` to a
/// `(K_{r−ℓ1}, {0, ℓ2−ℓ1})`-intersecting graph with the same clique count.
///
/// `T` is the first `ℓ1` elements of the common core of the `K_r` copies;
/// the count identity and the reduced intersection property are checked,
/// not assumed.
pub fn reduce_case2(g: &Graph, r: usize, l1: usize, l2: usize) -> Result<Case2Reduction> {
    if !(1 <= l1 && l1 < l2 && l2 < r) {
        return Err(Error::invalid(format!(
            "need 1 <= l1 < l2 <= r - 1, got l1 = {l1}, l2 = {l2}, r = {r}"
        )));
    }
    let spec = IntersectionSpec::new(r, [l1, l2])?;
    let kgr = enumerate_kr(g, r)?;
    if let Some(v) = is_l_intersecting(kgr.as_system(), &spec)?.witness {
        return Err(Error::invalid(format!(
            "graph is not (K_{r}, {spec})-intersecting: {}",
            violation_message(&v)
        )));
    }
    if kgr.is_empty() {
        return Err(Error::Hypothesis(format!("core hypothesis fails: graph has no K_{r}")));
    }
    let common = common_core(kgr.as_system())?;
    if common.len() < l1 {
        return Err(Error::Hypothesis(format!(
            "core hypothesis fails: common core {common:?} has fewer than {l1} vertices"
        )));
    }
    let core = common[..l1].to_vec();
    let mut nbhd = VertexSet::full(g.n());
    for &v in &core {
        nbhd.intersect_with(g.neighbors(v));
    }
    let labels = nbhd.to_vec();
    let reduced = g.induced(&labels)?;
    let (r_prime, ell_prime) = (r - l1, l2 - l1);
    let reduced_cliques = enumerate_kr(&reduced, r_prime)?;
    if reduced_cliques.len() != kgr.len() {
        return Err(Error::Invariant(format!(
            "reduction changed the count: {} vs {}",
            kgr.len(),
            reduced_cliques.len()
        )));
    }
    let reduced_spec = IntersectionSpec::new(r_prime, [0, ell_prime])?;
    if let Some(v) = is_l_intersecting(reduced_cliques.as_system(), &reduced_spec)?.witness {
        return Err(Error::Invariant(format!(
            "reduced graph is not (K_{r_prime}, {reduced_spec})-intersecting: {}",
            violation_message(&v)
        )));
    }
    Ok(Case2Reduction {
        core,
        reduced,
        labels,
        r_prime,
        ell_prime,
        kr_count: kgr.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{s_graph, single_l_graph, turan_graph};

    fn all_pass(d: &SunflowerDecomposition) {
        let rep = verify_claims(d).unwrap();
        assert!(rep.all_passed, "{rep:#?}");
        assert!(degree_sum_audit(d).handshake_holds);
    }

    #[test]
    fn single_core() {
        // ⌊(40 − 1)/2⌋ = 19 >= 9 petals.
        let g = single_l_graph(40, 3, 1).unwrap();
        let d = decompose(&g, 3, 1, &DecomposeOptions::default()).unwrap();
        assert_eq!(d.cores, vec![vec![0]]);
        assert_eq!(d.u, vec![0]);
        assert_eq!(d.aux.n(), 1);
        assert_eq!(d.sunflowers[0].len(), 19);
        all_pass(&d);
        let audit = degree_sum_audit(&d);
        assert!(audit.ubar_within_estimate);
        assert_eq!(audit.sum_over_u, 19);
    }

    #[test]
    fn below_threshold() {
        let g = single_l_graph(10, 3, 1).unwrap();
        let d = decompose(&g, 3, 1, &DecomposeOptions::default()).unwrap();
        assert!(d.u.is_empty() && d.cores.is_empty());
        all_pass(&d);
    }

    #[test]
    fn two_blocks() {
        let a = single_l_graph(22, 3, 2).unwrap();
        let g = Graph::disjoint_union(&[a.clone(), a]);
        let d = decompose(&g, 3, 2, &DecomposeOptions::default()).unwrap();
        assert_eq!(d.cores, vec![vec![0, 1], vec![22, 23]]);
        assert_eq!(d.aux.edge_count(), 0);
        all_pass(&d);
    }

    #[test]
    fn link_scan_matches_full_scan() {
        let a = single_l_graph(11, 3, 1).unwrap();
        let g = Graph::disjoint_union(&[a.clone(), single_l_graph(9, 3, 2).unwrap()]);
        for (r, ell) in [(3, 1), (3, 2)] {
            let Ok(x) = decompose(&g, r, ell, &DecomposeOptions { threshold: Some(4), ..Default::default() }) else {
                continue;
            };
            let y = decompose(
                &g,
                r,
                ell,
                &DecomposeOptions {
                    threshold: Some(4),
                    discovery: CoreDiscovery::FullScan,
                },
            )
            .unwrap();
            assert_eq!(x.cores, y.cores);
            assert_eq!(x.aux, y.aux);
        }
    }

    #[test]
    fn aux_edges_appear() {
        // Cores {0} and {1}: each has 9 private triangles, and the triangle
        // {0, 1, 2} lies in both sunflowers.
        let mut edges = vec![(0, 1), (0, 2), (1, 2)];
        let mut next = 3;
        for c in [0, 1] {
            for _ in 0..9 {
                edges.extend([(c, next), (c, next + 1), (next, next + 1)]);
                next += 2;
            }
        }
        let g = Graph::from_edges(next, edges).unwrap();
        let d = decompose(&g, 3, 1, &DecomposeOptions::default()).unwrap();
        assert_eq!(d.cores, vec![vec![0], vec![1]]);
        assert_eq!(d.aux.edge_count(), 1);
        all_pass(&d);
    }

    #[test]
    fn rejects_non_intersecting() {
        let err = decompose(&Graph::complete(5), 3, 1, &DecomposeOptions::default()).unwrap_err();
        assert_eq!(err.kind(), "invalid-input");
        assert!(decompose(&Graph::complete(5), 3, 3, &DecomposeOptions::default()).is_err());
    }

    #[test]
    fn case2_on_s_graph() {
        // S(n, r, t) is {t, t+1}-intersecting exactly when r = t + 2.
        for (n, r, t) in [(9, 3, 1), (10, 4, 2), (8, 5, 3)] {
            let g = s_graph(n, r, t).unwrap();
            let red = reduce_case2(&g, r, t, t + 1).unwrap();
            assert_eq!(red.core, (0..t).collect::<Vec<_>>());
            assert_eq!(red.reduced, turan_graph(n - t, r - t).unwrap());
            assert_eq!(red.kr_count, count_kr(&g, r).unwrap());
        }
    }

    #[test]
    fn case2_single_clique() {
        let g = Graph::disjoint_union(&[Graph::complete(4), Graph::empty(3)]);
        let red = reduce_case2(&g, 4, 2, 3).unwrap();
        assert_eq!(red.core, vec![0, 1]);
        assert_eq!(red.labels, vec![2, 3]);
        assert_eq!(red.kr_count, 1);
    }

    #[test]
    fn case2_missing_core() {
        let g = Graph::disjoint_union(&[Graph::complete(3), Graph::complete(3)]);
        assert_eq!(reduce_case2(&g, 3, 1, 2).unwrap_err().kind(), "invalid-input");
        // The four triangles of K_4 pairwise share an edge but no vertex is
        // common to all of them.
        let g = Graph::complete(4);
        let err = reduce_case2(&g, 3, 1, 2).unwrap_err();
        assert_eq!(err.kind(), "hypothesis");
    }
}
