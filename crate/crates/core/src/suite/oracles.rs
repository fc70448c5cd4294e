//! Slow reference implementations used to cross-check the fast paths.

use crate::graph::Graph;

/// `N(K_r, g)` by testing every `r`-subset.
pub fn naive_count_kr(g: &Graph, r: usize) -> u64 {
    fn rec(g: &Graph, start: usize, left: usize, chosen: &mut Vec<usize>) -> u64 {
        if left == 0 {
            return 1;
        }
        let mut total = 0;
        for v in start..g.n() {
            if chosen.iter().all(|&u| g.has_edge(u, v)) {
                chosen.push(v);
                total += rec(g, v + 1, left - 1, chosen);
                chosen.pop();
            }
        }
        total
    }
    rec(g, 0, r, &mut Vec::new())
}

/// The common pairwise intersection of `edges`, if all pairs agree.
pub fn naive_core(edges: &[Vec<usize>]) -> Option<Vec<usize>> {
    let meet = |a: &[usize], b: &[usize]| -> Vec<usize> { a.iter().copied().filter(|x| b.contains(x)).collect() };
    let mut core: Option<Vec<usize>> = None;
    for (i, a) in edges.iter().enumerate() {
        for b in &edges[i + 1..] {
            let m = meet(a, b);
            match &core {
                None => core = Some(m),
                Some(c) if *c != m => return None,
                _ => {}
            }
        }
    }
    core
}

/// Every `r`-subset of `0..n` in lexicographic order.
pub fn all_subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..r).collect();
    if r > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..r).rev().find(|&i| cur[i] < n - r + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..r {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// `Φ_r(n, L)` by enumerating every `L`-intersecting family without any
/// bound; `allowed[k]` says whether intersection size `k` is allowed.
pub fn naive_phi(n: usize, r: usize, allowed: &[bool]) -> u64 {
    let sets = all_subsets(n, r);
    let meet = |a: &[usize], b: &[usize]| a.iter().filter(|x| b.contains(x)).count();
    fn rec(i: usize, sets: &[Vec<usize>], chosen: &mut Vec<usize>, ok: &dyn Fn(usize, usize) -> bool) -> u64 {
        if i == sets.len() {
            return chosen.len() as u64;
        }
        let mut best = rec(i + 1, sets, chosen, ok);
        if chosen.iter().all(|&j| ok(i, j)) {
            chosen.push(i);
            best = best.max(rec(i + 1, sets, chosen, ok));
            chosen.pop();
        }
        best
    }
    let ok = |i: usize, j: usize| allowed[meet(&sets[i], &sets[j])];
    rec(0, &sets, &mut Vec::new(), &ok)
}
