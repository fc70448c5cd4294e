//! Edit distance to `ℓ`-partiteness and the stability checks built on it.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{furedi_removal_bound, BoundReport, Precondition};
use crate::cliques::{binomial, count_kr, enumerate_kr};
use crate::constructions::TuranParts;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{int, pow, ratio, serde_pq, to_pq, Rational};
use crate::setsystem::{common_core, is_l_intersecting, IntersectionSpec};

/// Largest `ℓ^n` explored by [`min_edits_to_partite`].
pub const MAX_COLOURINGS: u128 = 10_000_000;

/// An assignment of vertices to classes `0..ℓ` and the edges inside
/// classes, whose removal leaves an `ℓ`-partite graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionEdit {
    pub parts: Vec<usize>,
    pub removed: Vec<(usize, usize)>,
    pub cost: usize,
}

impl PartitionEdit {
    fn from_parts(g: &Graph, parts: Vec<usize>) -> Self {
        let removed: Vec<(usize, usize)> = g.edges().filter(|&(u, v)| parts[u] == parts[v]).collect();
        PartitionEdit {
            cost: removed.len(),
            parts,
            removed,
        }
    }
}

/// Vertices lying in every copy of `K_r`.
pub fn extract_graph_core(g: &Graph, r: usize) -> Result<Vec<usize>> {
    let cliques = enumerate_kr(g, r)?;
    if cliques.is_empty() {
        return Err(Error::invalid(format!("graph has no K_{r}")));
    }
    common_core(cliques.as_system())
}

struct Colouring<'a> {
    g: &'a Graph,
    ell: usize,
    parts: Vec<usize>,
    cost: usize,
    best: (usize, Vec<usize>),
}

impl Colouring<'_> {
    /// Neighbours of `v` among `0..v` in each class.
    fn conflicts(&self, v: usize) -> Vec<usize> {
        let mut per = vec![0; self.ell];
        for w in self.g.neighbors(v).iter().take_while(|&w| w < v) {
            per[self.parts[w]] += 1;
        }
        per
    }

    /// Every later vertex adds at least its cheapest class against the
    /// vertices already placed.
    fn lower_bound(&self, next: usize) -> usize {
        (next..self.g.n())
            .map(|v| {
                let mut per = vec![0; self.ell];
                for w in self.g.neighbors(v).iter().take_while(|&w| w < next) {
                    per[self.parts[w]] += 1;
                }
                per.into_iter().min().unwrap_or(0)
            })
            .sum()
    }

    fn search(&mut self, v: usize, used: usize) {
        if self.cost >= self.best.0 {
            return;
        }
        if v == self.g.n() {
            self.best = (self.cost, self.parts.clone());
            return;
        }
        if self.cost + self.lower_bound(v) >= self.best.0 {
            return;
        }
        let per = self.conflicts(v);
        let limit = (used + 1).min(self.ell);
        let mut order: Vec<usize> = (0..limit).collect();
        order.sort_by_key(|&c| per[c]);
        for c in order {
            self.parts[v] = c;
            self.cost += per[c];
            self.search(v + 1, used.max(c + 1));
            self.cost -= per[c];
        }
    }
}

fn greedy_parts(g: &Graph, ell: usize) -> Vec<usize> {
    let mut parts = vec![0; g.n()];
    for v in 0..g.n() {
        let mut per = vec![0; ell];
        for w in g.neighbors(v).iter().take_while(|&w| w < v) {
            per[parts[w]] += 1;
        }
        parts[v] = (0..ell).min_by_key(|&c| per[c]).unwrap_or(0);
    }
    parts
}

/// Minimum number of edges whose removal makes `g` `ℓ`-partite, with an
/// optimal partition.
///
/// Branch and bound over colourings in restricted-growth form (vertex `i`
/// opens at most one new class), so each partition is visited once up to
/// class renaming. The branches for vertex 1 run in parallel; ties go
/// to the first branch.
pub fn min_edits_to_partite(g: &Graph, ell: usize) -> Result<PartitionEdit> {
    let n = g.n();
    if ell == 0 {
        return Err(Error::invalid("need at least one class"));
    }
    if ell >= n {
        return Ok(PartitionEdit::from_parts(g, (0..n).collect()));
    }
    let space = (ell as u128).checked_pow(n as u32).filter(|&s| s <= MAX_COLOURINGS);
    if space.is_none() {
        return Err(Error::Budget(format!(
            "exact edit distance needs l^n <= {MAX_COLOURINGS}; got l = {ell}, n = {n}; use the heuristic"
        )));
    }
    let greedy = PartitionEdit::from_parts(g, greedy_parts(g, ell));
    let start = (greedy.cost + 1, greedy.parts.clone());
    let first_edge = usize::from(g.has_edge(0, 1));
    let branches: Vec<(usize, Vec<usize>)> = (0..2usize.min(ell))
        .into_par_iter()
        .map(|c1| {
            let mut parts = vec![0; n];
            parts[1] = c1;
            let mut col = Colouring {
                g,
                ell,
                parts,
                cost: if c1 == 0 { first_edge } else { 0 },
                best: start.clone(),
            };
            col.search(2, c1 + 1);
            col.best
        })
        .collect();
    let best = branches
        .into_iter()
        .min_by_key(|b| b.0)
        .expect("at least one branch");
    if best.0 > greedy.cost {
        return Ok(greedy);
    }
    Ok(PartitionEdit::from_parts(g, best.1))
}

fn descend(g: &Graph, ell: usize, parts: &mut [usize], order: &mut [usize], rng: &mut ChaCha8Rng) {
    loop {
        order.shuffle(rng);
        let mut moved = false;
        for &v in order.iter() {
            let mut per = vec![0usize; ell];
            for w in g.neighbors(v).iter() {
                per[parts[w]] += 1;
            }
            let best = (0..ell).min_by_key(|&c| (per[c], usize::from(c != parts[v]))).unwrap_or(0);
            if per[best] < per[parts[v]] {
                parts[v] = best;
                moved = true;
            }
        }
        if !moved {
            return;
        }
    }
}

fn internal_edges(g: &Graph, parts: &[usize]) -> usize {
    g.edges().filter(|&(u, v)| parts[u] == parts[v]).count()
}

/// An upper bound on the edit distance to `ℓ`-partiteness by iterated
/// local search.
///
/// Each restart descends by moving single vertices to their least
/// conflicting class, then repeatedly perturbs a few vertices and descends
/// again, keeping the perturbation when it does not cost more. The first
/// restart begins at the greedy colouring. Deterministic per seed.
pub fn partite_heuristic(g: &Graph, ell: usize, seed: u64) -> Result<PartitionEdit> {
    let n = g.n();
    if ell == 0 {
        return Err(Error::invalid("need at least one class"));
    }
    if ell >= n {
        return Ok(PartitionEdit::from_parts(g, (0..n).collect()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    let restarts = 16;
    let kicks = 40 * n;
    let mut best = greedy_parts(g, ell);
    let mut best_cost = internal_edges(g, &best);
    for k in 0..restarts {
        if best_cost == 0 {
            break;
        }
        let mut parts: Vec<usize> = if k == 0 {
            best.clone()
        } else {
            (0..n).map(|_| rng.random_range(0..ell)).collect()
        };
        descend(g, ell, &mut parts, &mut order, &mut rng);
        let mut cost = internal_edges(g, &parts);
        for _ in 0..kicks {
            if cost == 0 {
                break;
            }
            let mut trial = parts.clone();
            for _ in 0..rng.random_range(1..=3usize.min(n)) {
                let v = rng.random_range(0..n);
                trial[v] = rng.random_range(0..ell);
            }
            descend(g, ell, &mut trial, &mut order, &mut rng);
            let c = internal_edges(g, &trial);
            if c <= cost {
                parts = trial;
                cost = c;
            }
        }
        if cost < best_cost {
            best = parts;
            best_cost = cost;
        }
    }
    Ok(PartitionEdit::from_parts(g, best))
}

/// A bound comparison together with the optimal edit that was measured.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EditCheck {
    pub report: BoundReport,
    pub edit: Option<PartitionEdit>,
}

/// A `K_{ℓ+1}`-free graph with at least `|T(n,ℓ)| − m` edges becomes
/// `ℓ`-partite after removing at most `m` edges.
pub fn check_furedi(g: &Graph, ell: usize) -> Result<EditCheck> {
    if ell == 0 {
        return Err(Error::invalid("need l >= 1"));
    }
    let turan = TuranParts::new(g.n(), ell)?.edge_count() as i64;
    let m = turan - g.edge_count() as i64;
    if count_kr(g, ell + 1)? > 0 {
        return Ok(EditCheck {
            report: BoundReport::not_applicable("furedi", int(m), format!("graph contains K_{}", ell + 1)),
            edit: None,
        });
    }
    if m < 0 {
        return Ok(EditCheck {
            report: BoundReport::not_applicable("furedi", int(m), "more edges than the Turán graph"),
            edit: None,
        });
    }
    let edit = min_edits_to_partite(g, ell)?;
    let report = BoundReport::compare(
        "furedi",
        int(m),
        Some(edit.cost.into()),
        Precondition::Met,
        format!("m = |T(n, {ell})| - |E| = {turan} - {}", g.edge_count()),
    );
    Ok(EditCheck { report, edit: Some(edit) })
}

/// With `m = C(ℓ,r)(n/ℓ)^r − N(K_r, g) ≥ 0`, a `K_{ℓ+1}`-free graph becomes
/// `ℓ`-partite after removing at most `furedi_removal_bound(n, ℓ, r, m)`
/// edges. `m` stays an exact rational.
pub fn check_furedi_extension(g: &Graph, ell: usize, r: usize) -> Result<EditCheck> {
    if !(ell >= r && r >= 2) {
        return Err(Error::invalid(format!("need l >= r >= 2, got l = {ell}, r = {r}")));
    }
    let n = g.n();
    let ideal = int(binomial(ell as u64, r as u64).expect("small binomial")) * pow(&ratio(n, ell), r);
    let m = ideal - int(count_kr(g, r)?);
    if count_kr(g, ell + 1)? > 0 {
        return Ok(EditCheck {
            report: BoundReport::not_applicable("furedi-extension", m, format!("graph contains K_{}", ell + 1)),
            edit: None,
        });
    }
    if m < int(0) {
        return Ok(EditCheck {
            report: BoundReport::not_applicable(
                "furedi-extension",
                m,
                "clique count exceeds C(l,r)(n/l)^r",
            ),
            edit: None,
        });
    }
    let bound = if n == 0 {
        int(0)
    } else {
        furedi_removal_bound(n, ell, r, &m)?.value
    };
    let edit = min_edits_to_partite(g, ell)?;
    let report = BoundReport::compare(
        "furedi-extension",
        bound,
        Some(edit.cost.into()),
        Precondition::Met,
        format!("m = {}", to_pq(&m)),
    );
    Ok(EditCheck { report, edit: Some(edit) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EkrStabilityReport {
    pub n: usize,
    pub r: usize,
    pub t: usize,
    /// Number of classes `r − t` for the partite part.
    pub ell: usize,
    #[serde(serialize_with = "serde_pq::serialize")]
    pub eps: Rational,
    pub kr_count: u64,
    /// `(1 − ε)((n − t)/(r − t))^{r−t}`.
    #[serde(serialize_with = "serde_pq::serialize")]
    pub count_threshold: Rational,
    pub hypotheses_hold: bool,
    /// The `t`-set removed before measuring the edit distance.
    #[serde(rename = "T")]
    pub core: Option<Vec<usize>>,
    /// Compares the edit cost of `G − T` against `2ε(n − t)²`.
    pub report: BoundReport,
    pub edit: Option<PartitionEdit>,
}

/// Finds the `t`-set common to all `K_r` copies, removes it, and compares
/// the edit distance of the rest to `(r − t)`-partiteness with
/// `2ε(n − t)²`. The size threshold for the statement is unspecified, so
/// the precondition is reported as unknown.
pub fn check_ekr_stability(g: &Graph, r: usize, t: usize, eps: &Rational) -> Result<EkrStabilityReport> {
    let n = g.n();
    if !(t >= 1 && t < r && n >= r) {
        return Err(Error::invalid(format!(
            "need r > t >= 1 and n >= r, got n = {n}, r = {r}, t = {t}"
        )));
    }
    if *eps < int(0) {
        return Err(Error::invalid("eps must be non-negative"));
    }
    let ell = r - t;
    let bound = int(2) * eps * int((n - t) * (n - t));
    let count_threshold = (int(1) - eps) * pow(&ratio(n - t, ell), ell);
    let cliques = enumerate_kr(g, r)?;
    let kr_count = cliques.len() as u64;
    let spec = IntersectionSpec::t_intersecting(r, t)?;
    let intersecting = is_l_intersecting(cliques.as_system(), &spec)?.holds();
    let big_enough = int(kr_count) >= count_threshold;
    let mut out = EkrStabilityReport {
        n,
        r,
        t,
        ell,
        eps: eps.clone(),
        kr_count,
        count_threshold,
        hypotheses_hold: intersecting && big_enough,
        core: None,
        report: BoundReport::not_applicable("ekr-stability", bound.clone(), ""),
        edit: None,
    };
    if !intersecting {
        out.report.precondition_note = format!("graph is not (K_{r}, {t})-intersecting");
        return Ok(out);
    }
    if !big_enough {
        out.report.precondition_note = format!(
            "N(K_{r}) = {kr_count} is below (1 - eps)((n - t)/(r - t))^(r - t) = {}",
            to_pq(&out.count_threshold)
        );
        return Ok(out);
    }
    let core = common_core(cliques.as_system())?;
    if core.len() < t {
        out.report.precondition_note = format!("common core {core:?} has fewer than {t} vertices");
        return Ok(out);
    }
    let chosen = core[..t].to_vec();
    let (rest, _) = g.without_vertices(&chosen)?;
    let edit = min_edits_to_partite(&rest, ell)?;
    out.report = BoundReport::compare(
        "ekr-stability",
        bound,
        Some(edit.cost.into()),
        Precondition::Unknown,
        "holds for n >= n0 and eps <= eps0, both unspecified; edits are on G - T",
    );
    out.core = Some(chosen);
    out.edit = Some(edit);
    Ok(out)
}

/// Whether `parts` is a proper colouring once `removed` is deleted.
pub fn edit_is_valid(g: &Graph, edit: &PartitionEdit) -> bool {
    let removed: std::collections::BTreeSet<(usize, usize)> = edit.removed.iter().copied().collect();
    edit.parts.len() == g.n()
        && removed.len() == edit.cost
        && g.edges().all(|(u, v)| edit.parts[u] != edit.parts[v] || removed.contains(&(u, v)))
}
