use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{feasible_count, Method, Quantity, SearchResult, Witness};
use crate::bitset::VertexSet;
use crate::cliques::{cliques_through_edge, cliques_through_vertex, enumerate_kr};
use crate::constructions::{rs_graph, s_graph, single_l_graph};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::setsystem::IntersectionSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeuristicOptions {
    /// Total number of proposed moves across all restarts.
    pub budget: u64,
    pub seed: u64,
    pub restarts: usize,
}

impl Default for HeuristicOptions {
    fn default() -> Self {
        HeuristicOptions {
            budget: 10_000,
            seed: 0,
            restarts: 4,
        }
    }
}

/// The best feasible graph among the known constructions for `(r, L)`,
/// with its name and clique count. Ties go to the earlier construction in
/// the order: empty, complete, `S(n, r, t)`, single-`ℓ`, Ruzsa–Szemerédi.
pub fn seed_construction(n: usize, spec: &IntersectionSpec) -> Result<(Graph, u64, String)> {
    let r = spec.r();
    let mut candidates: Vec<(String, Graph)> = vec![("empty".into(), Graph::empty(n))];
    if n >= r {
        if spec.as_t_intersecting() == Some(0) {
            candidates.push(("complete".into(), Graph::complete(n)));
        }
        for t in 0..r {
            if (t..r).all(|k| spec.allows(k)) {
                candidates.push((format!("s-graph(t={t})"), s_graph(n, r, t)?));
            }
        }
        for ell in spec.values() {
            candidates.push((format!("single-l(l={ell})"), single_l_graph(n, r, ell)?));
        }
    }
    if r == 3 && spec.allows(0) && spec.allows(1) && n >= 3 {
        candidates.push(("rs-graph".into(), rs_graph(n)?));
    }
    let mut best: Option<(Graph, u64, String)> = None;
    for (name, g) in candidates {
        if let Some(c) = feasible_count(&g, spec)? {
            if best.as_ref().is_none_or(|b| c > b.1) {
                best = Some((g, c, name));
            }
        }
    }
    best.ok_or_else(|| Error::Invariant("the empty graph is always feasible".into()))
}

/// A graph together with its `K_r` copies.
struct State {
    g: Graph,
    cliques: Vec<VertexSet>,
}

impl State {
    fn new(g: Graph, r: usize) -> Result<Self> {
        let cliques = enumerate_kr(&g, r)?
            .members()
            .iter()
            .map(|c| VertexSet::from_iter_in(g.n(), c.iter().copied()))
            .collect();
        Ok(State { g, cliques })
    }

    fn count(&self) -> u64 {
        self.cliques.len() as u64
    }
}

/// Whether `added` is compatible with itself and with every kept clique.
fn compatible(kept: &[VertexSet], added: &[VertexSet], ok: &[bool]) -> bool {
    added.iter().enumerate().all(|(i, a)| {
        added[i + 1..].iter().all(|b| ok[a.intersection_len(b)])
            && kept.iter().all(|k| ok[a.intersection_len(k)])
    })
}

fn to_masks(n: usize, cliques: Vec<Vec<usize>>) -> Vec<VertexSet> {
    cliques
        .into_iter()
        .map(|c| VertexSet::from_iter_in(n, c))
        .collect()
}

/// Toggles the edge `uv` if the result stays feasible and loses no clique.
fn try_toggle(state: &mut State, u: usize, v: usize, r: usize, ok: &[bool]) -> Result<bool> {
    let n = state.g.n();
    if state.g.has_edge(u, v) {
        if state.cliques.iter().any(|c| c.contains(u) && c.contains(v)) {
            return Ok(false);
        }
        state.g.remove_edge(u, v)?;
        return Ok(true);
    }
    state.g.add_edge(u, v)?;
    let added = to_masks(n, cliques_through_edge(&state.g, u, v, r));
    if compatible(&state.cliques, &added, ok) {
        state.cliques.extend(added);
        Ok(true)
    } else {
        state.g.remove_edge(u, v)?;
        Ok(false)
    }
}

/// Replaces the neighbourhood of `v` by `fresh` if the result stays
/// feasible and the clique count does not drop.
fn try_reshuffle(state: &mut State, v: usize, fresh: &VertexSet, r: usize, ok: &[bool]) -> Result<bool> {
    let n = state.g.n();
    let mut g = state.g.clone();
    for w in state.g.neighbors(v).iter() {
        g.remove_edge(v, w)?;
    }
    for w in fresh.iter() {
        g.add_edge(v, w)?;
    }
    let kept: Vec<VertexSet> = state
        .cliques
        .iter()
        .filter(|c| !c.contains(v))
        .cloned()
        .collect();
    let added = to_masks(n, cliques_through_vertex(&g, v, r));
    if kept.len() + added.len() < state.cliques.len() || !compatible(&kept, &added, ok) {
        return Ok(false);
    }
    state.g = g;
    state.cliques = kept;
    state.cliques.extend(added);
    Ok(true)
}

fn climb(state: &mut State, steps: u64, r: usize, ok: &[bool], rng: &mut ChaCha8Rng) -> Result<()> {
    let n = state.g.n();
    if n < 2 {
        return Ok(());
    }
    for _ in 0..steps {
        if rng.random_ratio(1, 10) {
            let v = rng.random_range(0..n);
            let fresh = VertexSet::from_iter_in(n, (0..n).filter(|&w| w != v && rng.random_bool(0.5)));
            try_reshuffle(state, v, &fresh, r, ok)?;
        } else {
            let u = rng.random_range(0..n);
            let mut v = rng.random_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            try_toggle(state, u.min(v), u.max(v), r, ok)?;
        }
    }
    Ok(())
}

/// A lower bound on `Ψ_r(n, L)` by hill climbing.
///
/// The first restart begins at [`seed_construction`], later ones at the
/// empty graph. Moves toggle one edge or redraw one vertex's neighbourhood,
/// and are accepted when the graph stays `(K_r, L)`-intersecting and the
/// clique count does not decrease. The run is a pure function of the
/// inputs and the seed.
pub fn psi_heuristic(n: usize, spec: &IntersectionSpec, options: &HeuristicOptions) -> Result<SearchResult> {
    let r = spec.r();
    let ok: Vec<bool> = (0..=r).map(|k| spec.allows(k)).collect();
    let (seeded, _, _) = seed_construction(n, spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let restarts = options.restarts.max(1) as u64;
    let share = options.budget / restarts;
    let mut best = State::new(seeded.clone(), r)?;
    if r >= 2 && options.budget > 0 {
        for k in 0..restarts {
            let start = if k == 0 { seeded.clone() } else { Graph::empty(n) };
            let steps = share + if k == 0 { options.budget % restarts } else { 0 };
            let mut state = State::new(start, r)?;
            climb(&mut state, steps, r, &ok, &mut rng)?;
            if state.count() > best.count() {
                best = state;
            }
        }
    }
    let value = best.count();
    if feasible_count(&best.g, spec)? != Some(value) {
        return Err(Error::Invariant("heuristic witness does not attain its value".into()));
    }
    Ok(SearchResult::new(
        Quantity::Psi,
        n,
        spec,
        value,
        Witness::Graph(best.g),
        Method::Heuristic,
        false,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(r: usize, l: &[usize]) -> IntersectionSpec {
        IntersectionSpec::new(r, l.iter().copied()).unwrap()
    }

    #[test]
    fn construction_floor() {
        let s = spec(3, &[1, 2]);
        for seed in 0..3 {
            let opts = HeuristicOptions {
                budget: 2_000,
                seed,
                restarts: 2,
            };
            assert!(psi_heuristic(20, &s, &opts).unwrap().value >= 90);
        }
    }

    #[test]
    fn zero_budget_returns_seed() {
        let s = spec(3, &[1, 2]);
        let opts = HeuristicOptions {
            budget: 0,
            ..HeuristicOptions::default()
        };
        let res = psi_heuristic(20, &s, &opts).unwrap();
        assert_eq!(res.value, 90);
        assert_eq!(res.witness, Witness::Graph(s_graph(20, 3, 1).unwrap()));
        assert!(!res.exact);
    }

    #[test]
    fn reproducible() {
        let s = spec(3, &[0, 1]);
        let opts = HeuristicOptions {
            budget: 3_000,
            seed: 7,
            restarts: 3,
        };
        assert_eq!(psi_heuristic(12, &s, &opts).unwrap(), psi_heuristic(12, &s, &opts).unwrap());
    }

    #[test]
    fn improves_from_empty() {
        // {0}: disjoint triangles; the seed already attains n/3.
        let s = spec(3, &[0]);
        let res = psi_heuristic(9, &s, &HeuristicOptions::default()).unwrap();
        assert_eq!(res.value, 3);
    }
}
