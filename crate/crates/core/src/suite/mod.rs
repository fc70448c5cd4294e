//! Self-contained regression batteries, each comparing the library with an
//! independent oracle or a known identity on seeded inputs.

pub mod oracles;

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{erdos_check, fact_inequality, fisher_ryan_check, Verdict};
use crate::cliques::{binomial, count_kr};
use crate::constructions::{count_kr_turan_closed, rs_graph, s_graph, single_l_graph};
use crate::delta::{decompose, degree_sum_audit, reduce_case2, verify_claims, DecomposeOptions};
use crate::error::Result;
use crate::graph::Graph;
use crate::graph6::{parse_graph6, write_graph6};
use crate::rational::ratio;
use crate::search::{generate_graphs, phi_exact, psi_le_phi_report};
use crate::setsystem::{is_kr_l_intersecting, IntersectionSpec, UniformSetSystem};
use crate::stability::{check_ekr_stability, check_furedi};
use crate::sunflower::find_sunflower;

use oracles::{naive_core, naive_count_kr, naive_phi};

/// Failure messages kept per battery.
const MAX_REPORTED: usize = 10;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BatteryOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub checked: u64,
    pub failures: Vec<String>,
    pub seconds: f64,
    /// Wall-clock budget the battery is expected to meet in an optimized build.
    pub limit_seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub batteries: Vec<BatteryOutcome>,
    pub all_passed: bool,
}

#[derive(Default)]
struct Tally {
    checked: u64,
    failed: u64,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_REPORTED {
                self.failures.push(msg());
            }
        }
    }

    fn ok<T>(&mut self, res: Result<T>, context: impl FnOnce() -> String) -> Option<T> {
        match res {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, || format!("{}: {e}", context()));
                None
            }
        }
    }
}

type Battery = fn(&mut Tally);

const BATTERIES: [(u8, &str, f64, Battery); 10] = [
    (1, "clique-count-oracle", 10.0, clique_count_oracle),
    (2, "s-graph-identity", 5.0, s_graph_identity),
    (3, "intersecting-certification", 30.0, intersecting_certification),
    (4, "sunflower-detector", 10.0, sunflower_detector),
    (5, "small-n-bound-sweep", 120.0, small_n_sweep),
    (6, "fact-inequality-sweep", 5.0, fact_sweep),
    (7, "search-cross-validation", 60.0, search_cross_validation),
    (8, "decomposition-claims", 30.0, decomposition_claims),
    (9, "stability-pipeline", 20.0, stability_pipeline),
    (10, "graph6-round-trip", 10.0, graph6_round_trip),
];

/// Names of the batteries in order.
pub fn battery_names() -> Vec<(u8, &'static str)> {
    BATTERIES.iter().map(|b| (b.0, b.1)).collect()
}

/// Runs the batteries whose ids are in `only`, or all of them.
pub fn run_suite(only: Option<&[u8]>) -> SuiteReport {
    let batteries: Vec<BatteryOutcome> = BATTERIES
        .iter()
        .filter(|b| only.is_none_or(|ids| ids.contains(&b.0)))
        .map(|&(id, name, limit_seconds, run)| {
            let start = Instant::now();
            let mut tally = Tally::default();
            run(&mut tally);
            if tally.failed > tally.failures.len() as u64 {
                tally
                    .failures
                    .push(format!("... {} failures in total", tally.failed));
            }
            BatteryOutcome {
                id,
                name,
                passed: tally.failed == 0,
                checked: tally.checked,
                failures: tally.failures,
                seconds: start.elapsed().as_secs_f64(),
                limit_seconds,
            }
        })
        .collect();
    let all_passed = batteries.iter().all(|b| b.passed);
    SuiteReport { batteries, all_passed }
}

/// `G(n, p)` from `rng`.
pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.insert_unchecked(u, v);
            }
        }
    }
    g
}

/// A randomly labelled `{ℓ}`-intersecting `r`-graph with `edges` members:
/// a core of size `ℓ` with disjoint petals, on a ground set with a few
/// spare vertices.
pub fn random_sunflower_family(r: usize, ell: usize, edges: usize, rng: &mut impl Rng) -> UniformSetSystem {
    let n = ell + edges * (r - ell) + rng.random_range(0..4usize);
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let members = (0..edges).map(|i| {
        let mut e: Vec<usize> = (0..ell)
            .chain(ell + i * (r - ell)..ell + (i + 1) * (r - ell))
            .map(|v| labels[v])
            .collect();
        e.sort_unstable();
        e
    });
    UniformSetSystem::new(n, r, members).expect("valid family")
}

/// A randomly labelled graph `K_{ℓ1} ∨ H` with `H = G(m, p)`; only some
/// draws are `(K_r, {ℓ1, ℓ2})`-intersecting.
pub fn random_case2_candidate(r: usize, l1: usize, rng: &mut impl Rng) -> Graph {
    let m = rng.random_range(r - l1..=r - l1 + 6);
    let p = rng.random_range(0.15..0.6);
    let h = random_graph(m, p, rng);
    let g = Graph::join(&Graph::complete(l1), &h);
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    g.permuted(&perm).expect("permutation")
}

fn clique_count_oracle(t: &mut Tally) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for i in 0..200 {
        let n = rng.random_range(0..=10usize);
        let p = rng.random_range(0.0..1.0);
        let g = random_graph(n, p, &mut rng);
        for r in 1..=n {
            if let Some(c) = t.ok(count_kr(&g, r), || format!("graph {i}, r = {r}")) {
                let want = naive_count_kr(&g, r);
                t.check(c == want, || format!("graph {i}, r = {r}: {c} vs oracle {want}"));
            }
        }
    }
}

fn s_graph_identity(t: &mut Tally) {
    for r in 3..=6 {
        for s in 1..r {
            for n in r..=30 {
                let ctx = || format!("S({n}, {r}, {s})");
                let Some(g) = t.ok(s_graph(n, r, s), ctx) else { continue };
                let got = t.ok(count_kr(&g, r), ctx);
                let want = t.ok(count_kr_turan_closed(n - s, r - s, r - s), ctx);
                t.check(got.is_some() && got == want, || format!("{}: {got:?} vs {want:?}", ctx()));
            }
        }
    }
}

fn intersecting_certification(t: &mut Tally) {
    for r in 3..=6 {
        for s in 1..r {
            for n in r..=30 {
                let ctx = || format!("n = {n}, r = {r}, t = {s}");
                let ekr = IntersectionSpec::t_intersecting(r, s).expect("t < r");
                let single = IntersectionSpec::new(r, [s]).expect("t < r");
                if let Some(g) = t.ok(s_graph(n, r, s), ctx) {
                    let ok = t.ok(is_kr_l_intersecting(&g, &ekr), ctx).map(|c| c.holds());
                    t.check(ok == Some(true), || format!("S-graph fails {ekr}: {}", ctx()));
                }
                if let Some(g) = t.ok(single_l_graph(n, r, s), ctx) {
                    let ok = t.ok(is_kr_l_intersecting(&g, &single), ctx).map(|c| c.holds());
                    t.check(ok == Some(true), || format!("single-l graph fails {single}: {}", ctx()));
                }
            }
        }
    }
    let spec = IntersectionSpec::new(3, [0, 1]).expect("valid");
    for n in [12, 30, 60, 120] {
        if let Some(g) = t.ok(rs_graph(n), || format!("rs_graph({n})")) {
            let ok = t.ok(is_kr_l_intersecting(&g, &spec), || format!("rs_graph({n})"));
            t.check(ok.is_some_and(|c| c.holds()), || format!("rs_graph({n}) fails {{0,1}}"));
        }
    }
}

fn sunflower_detector(t: &mut Tally) {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for r in 3..=4 {
        for ell in 1..r {
            let least = r * r - r + 1;
            for i in 0..100 {
                let m = rng.random_range(least..=least + 5);
                let h = random_sunflower_family(r, ell, m, &mut rng);
                let ctx = || format!("r = {r}, l = {ell}, family {i}");
                let Some(found) = t.ok(find_sunflower(&h), ctx) else { continue };
                let core = found.sunflower().map(|s| s.core.clone());
                t.check(core.as_ref().is_some_and(|c| c.len() == ell), || {
                    format!("{}: no core of size {ell}", ctx())
                });
                if h.len() <= 12 {
                    let want = naive_core(h.edges());
                    t.check(core == want, || format!("{}: {core:?} vs oracle {want:?}", ctx()));
                }
            }
        }
    }
}

fn small_n_sweep(t: &mut Tally) {
    for n in 0..=7 {
        let Some(graphs) = t.ok(generate_graphs(n), || format!("generate {n}")) else { continue };
        for (i, g) in graphs.iter().enumerate() {
            for ell in 2..=6 {
                let ctx = || format!("n = {n}, graph {i}, l = {ell}");
                let Some(big) = t.ok(count_kr(g, ell + 1), ctx) else { continue };
                if big > 0 {
                    continue;
                }
                for r in 2..=ell {
                    if let Some(rep) = t.ok(fisher_ryan_check(g, ell, r), ctx) {
                        t.check(rep.verdict == Verdict::Holds, || format!("Fisher-Ryan {}, r = {r}", ctx()));
                    }
                    if let Some(rep) = t.ok(erdos_check(g, ell, r), ctx) {
                        t.check(rep.verdict == Verdict::Holds, || format!("Erdos {}, r = {r}", ctx()));
                    }
                }
                if ell <= 3 {
                    if let Some(rep) = t.ok(check_furedi(g, ell), ctx) {
                        t.check(rep.report.verdict == Verdict::Holds, || format!("Furedi {}", ctx()));
                    }
                }
            }
        }
    }
}

fn fact_sweep(t: &mut Tally) {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..10_000 {
        let r = rng.random_range(2..=12usize);
        let q = rng.random_range(1..=1000i64);
        // −q ≤ p and p(r − 1) < q.
        let hi = (q - 1).div_euclid(r as i64 - 1);
        let p = rng.random_range(-q..=hi);
        let x = ratio(p, q);
        let res = fact_inequality(r, &x);
        t.check(res == Ok(true), || format!("r = {r}, x = {p}/{q}: {res:?}"));
    }
}

/// Nonempty `L ⊆ 0..r` up to behaviour on `r`-subsets of `0..n`: only the
/// intersection sizes that can occur matter.
pub fn distinct_specs(n: usize, r: usize) -> Vec<IntersectionSpec> {
    let lo = (2 * r).saturating_sub(n);
    let occurring: Vec<usize> = (lo..r).collect();
    let spare = (0..r).find(|k| !occurring.contains(k));
    let mut out = Vec::new();
    for mask in 0u32..1 << occurring.len() {
        let mut l: Vec<usize> = occurring
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &k)| k)
            .collect();
        if l.is_empty() {
            match spare {
                Some(s) => l.push(s),
                None => continue,
            }
        }
        out.push(IntersectionSpec::new(r, l).expect("values below r"));
    }
    out
}

fn search_cross_validation(t: &mut Tally) {
    for n in 1..=20usize {
        for r in 1..=n {
            if binomial(n as u64, r as u64).is_none_or(|c| c > 20) {
                continue;
            }
            for spec in distinct_specs(n, r) {
                let ctx = || format!("Φ_{r}({n}, {spec})");
                if let Some(res) = t.ok(phi_exact(n, &spec), ctx) {
                    let allowed: Vec<bool> = (0..=r).map(|k| spec.allows(k)).collect();
                    let want = naive_phi(n, r, &allowed);
                    t.check(res.value == want, || format!("{}: {} vs oracle {want}", ctx(), res.value));
                }
            }
        }
    }
    let spec = IntersectionSpec::new(3, [2]).expect("valid");
    let got = phi_exact(5, &spec).map(|r| r.value);
    t.check(got == Ok(4), || format!("Φ_3(5, {{2}}) = {got:?}"));
    for mask in 1u32..8 {
        let spec = IntersectionSpec::new(3, (0..3).filter(|k| mask >> k & 1 == 1)).expect("valid");
        for n in 1..=7 {
            let ctx = || format!("Ψ ≤ Φ at n = {n}, L = {spec}");
            if let Some(cmp) = t.ok(psi_le_phi_report(n, &spec), ctx) {
                t.check(cmp.psi.value <= cmp.phi.value, ctx);
            }
        }
    }
}

fn decomposition_claims(t: &mut Tally) {
    let mut cases: Vec<(Graph, usize, usize, usize)> = Vec::new();
    for r in 3..=4 {
        for ell in 1..r {
            let petals = r * r;
            for extra in [0, 2, 5] {
                let n = ell + (petals + extra) * (r - ell);
                cases.push((single_l_graph(n, r, ell).expect("n >= r"), r, ell, 1));
            }
            for blocks in 2..=3 {
                let parts: Vec<Graph> = (0..blocks)
                    .map(|b| single_l_graph(ell + (petals + b) * (r - ell), r, ell).expect("n >= r"))
                    .collect();
                cases.push((Graph::disjoint_union(&parts), r, ell, blocks));
            }
        }
    }
    for (i, (g, r, ell, cores)) in cases.iter().enumerate() {
        let ctx = || format!("case {i}: n = {}, r = {r}, l = {ell}", g.n());
        let Some(d) = t.ok(decompose(g, *r, *ell, &DecomposeOptions::default()), ctx) else { continue };
        t.check(d.cores.len() == *cores, || format!("{}: {} cores, expected {cores}", ctx(), d.cores.len()));
        if let Some(rep) = t.ok(verify_claims(&d), ctx) {
            t.check(rep.all_passed, || format!("{}: {:?}", ctx(), rep.claims.iter().filter(|c| !c.passed).collect::<Vec<_>>()));
        }
        let audit = degree_sum_audit(&d);
        t.check(audit.handshake_holds, || format!("{}: handshake fails", ctx()));
    }
}

fn stability_pipeline(t: &mut Tally) {
    for n in 8..=14 {
        let ctx = || format!("S({n}, 3, 1)");
        let Some(g) = t.ok(s_graph(n, 3, 1), ctx) else { continue };
        if let Some(rep) = t.ok(check_ekr_stability(&g, 3, 1, &ratio(1, 10)), ctx) {
            let cost = rep.edit.as_ref().map(|e| e.cost);
            t.check(rep.core == Some(vec![0]) && cost == Some(0), || {
                format!("{}: T = {:?}, cost = {cost:?}", ctx(), rep.core)
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let shapes = [(3, 1, 2), (4, 1, 2), (4, 1, 3), (4, 2, 3), (5, 1, 3), (5, 2, 4)];
    let mut valid = 0;
    let mut attempts = 0;
    while valid < 100 && attempts < 100_000 {
        attempts += 1;
        let (r, l1, l2) = shapes[rng.random_range(0..shapes.len())];
        let g = random_case2_candidate(r, l1, &mut rng);
        let Ok(red) = reduce_case2(&g, r, l1, l2) else { continue };
        valid += 1;
        let want = naive_count_kr(&g, r);
        let got = naive_count_kr(&red.reduced, red.r_prime);
        t.check(want == got && red.kr_count == want, || {
            format!("case-2 instance {valid}: {want} vs reduced {got} (reported {})", red.kr_count)
        });
    }
    t.check(valid == 100, || format!("only {valid} valid case-2 instances in {attempts} draws"));
}

fn graph6_round_trip(t: &mut Tally) {
    for n in 0..=7 {
        let Some(graphs) = t.ok(generate_graphs(n), || format!("generate {n}")) else { continue };
        for g in graphs {
            let back = write_graph6(g).and_then(|s| parse_graph6(&s));
            t.check(back.as_ref() == Ok(g), || format!("round trip fails on a graph with {n} vertices"));
        }
    }
    t.check(parse_graph6("C~") == Ok(Graph::complete(4)), || "C~ is not K_4".into());
    t.check(parse_graph6("A_") == Ok(Graph::complete(2)), || "A_ is not K_2".into());
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_classes() {
        // r-subsets of a 2r-set can meet in every size below r.
        assert_eq!(distinct_specs(6, 3).len(), 7);
        // Two 2-subsets of a 3-set always meet in one vertex.
        let specs = distinct_specs(3, 2);
        assert_eq!(specs.len(), 2);
        assert_eq!(specs[0].values(), vec![0]);
        assert_eq!(specs[1].values(), vec![1]);
    }

    #[test]
    fn quick_batteries_pass() {
        let report = run_suite(Some(&[2, 4, 6, 10]));
        assert_eq!(report.batteries.len(), 4);
        for b in &report.batteries {
            assert!(b.passed, "{}: {:?}", b.name, b.failures);
            assert!(b.checked > 0);
        }
    }

    #[test]
    fn generators_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let h = random_sunflower_family(4, 2, 13, &mut rng);
        assert_eq!(h.len(), 13);
        assert_eq!(find_sunflower(&h).unwrap().sunflower().unwrap().core.len(), 2);
        let g = random_case2_candidate(3, 1, &mut rng);
        assert!(g.n() >= 3);
    }
}
