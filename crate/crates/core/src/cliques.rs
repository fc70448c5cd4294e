//! Enumeration and counting of `K_r` copies.
//!
//! Cliques are grown in increasing vertex order: the candidates for the next
//! vertex are the common neighbours with a larger index than every vertex
//! chosen so far. A branch is cut as soon as fewer candidates remain than
//! vertices still needed. Each clique is therefore produced exactly once,
//! in lexicographic order of its sorted vertex list.

use rayon::prelude::*;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::setsystem::UniformSetSystem;

/// Graphs below this order are processed on the calling thread.
const PARALLEL_THRESHOLD: usize = 48;

/// The family of vertex sets of all copies of `K_r` in a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueSet {
    system: UniformSetSystem,
}

impl CliqueSet {
    pub fn r(&self) -> usize {
        self.system.r()
    }

    pub fn len(&self) -> usize {
        self.system.len()
    }

    pub fn is_empty(&self) -> bool {
        self.system.is_empty()
    }

    /// Members as sorted vertex lists, in lexicographic order.
    pub fn members(&self) -> &[Vec<usize>] {
        self.system.edges()
    }

    pub fn as_system(&self) -> &UniformSetSystem {
        &self.system
    }

    pub fn into_system(self) -> UniformSetSystem {
        self.system
    }
}

/// `C(n, k)` if it fits in 64 bits.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

fn check_request(g: &Graph, r: usize) -> Result<()> {
    if r == 0 {
        return Err(Error::invalid("clique order r must be at least 1"));
    }
    if binomial(g.n() as u64, r as u64).is_none() {
        return Err(Error::Overflow(format!(
            "C({}, {r}) exceeds the 64-bit range",
            g.n()
        )));
    }
    Ok(())
}

fn forward_neighbourhoods(g: &Graph) -> Vec<VertexSet> {
    (0..g.n())
        .map(|v| {
            let mut row = g.neighbors(v).clone();
            row.intersect_with(&VertexSet::above(g.n(), v));
            row
        })
        .collect()
}

fn count_from(fwd: &[VertexSet], cand: &VertexSet, need: usize) -> u64 {
    match need {
        0 => 1,
        1 => cand.len() as u64,
        2 => cand
            .iter()
            .map(|v| cand.intersection_len(&fwd[v]) as u64)
            .sum(),
        _ => {
            let mut remaining = cand.len();
            let mut total = 0;
            for v in cand.iter() {
                if remaining < need {
                    break;
                }
                remaining -= 1;
                let next = cand.intersection(&fwd[v]);
                if next.len() + 1 >= need {
                    total += count_from(fwd, &next, need - 1);
                }
            }
            total
        }
    }
}

fn collect_from(
    fwd: &[VertexSet],
    cand: &VertexSet,
    need: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if need == 0 {
        out.push(current.clone());
        return;
    }
    let mut remaining = cand.len();
    for v in cand.iter() {
        if remaining < need {
            break;
        }
        remaining -= 1;
        current.push(v);
        if need == 1 {
            out.push(current.clone());
        } else {
            let next = cand.intersection(&fwd[v]);
            if next.len() + 1 >= need {
                collect_from(fwd, &next, need - 1, current, out);
            }
        }
        current.pop();
    }
}

/// Number of copies of `K_r` in `g`, without materialising them.
pub fn count_kr(g: &Graph, r: usize) -> Result<u64> {
    check_request(g, r)?;
    if r > g.n() {
        return Ok(0);
    }
    if r == 1 {
        return Ok(g.n() as u64);
    }
    let fwd = forward_neighbourhoods(g);
    let per_root = |v: usize| count_from(&fwd, &fwd[v], r - 1);
    let total = if g.n() >= PARALLEL_THRESHOLD {
        (0..g.n()).into_par_iter().map(per_root).sum()
    } else {
        (0..g.n()).map(per_root).sum()
    };
    Ok(total)
}

/// All copies of `K_r` in `g`, as the associated `r`-graph.
pub fn enumerate_kr(g: &Graph, r: usize) -> Result<CliqueSet> {
    check_request(g, r)?;
    let n = g.n();
    if r > n {
        return Ok(CliqueSet {
            system: UniformSetSystem::from_sorted_unchecked(n, r, Vec::new()),
        });
    }
    let fwd = forward_neighbourhoods(g);
    let per_root = |v: usize| {
        let mut out = Vec::new();
        let mut current = vec![v];
        collect_from(&fwd, &fwd[v], r - 1, &mut current, &mut out);
        out
    };
    let members: Vec<Vec<usize>> = if n >= PARALLEL_THRESHOLD {
        (0..n).into_par_iter().flat_map_iter(per_root).collect()
    } else {
        (0..n).flat_map(per_root).collect()
    };
    Ok(CliqueSet {
        system: UniformSetSystem::from_sorted_unchecked(n, r, members),
    })
}

/// Copies of `K_r` that contain both `u` and `v` (which must be adjacent).
pub(crate) fn cliques_through_edge(g: &Graph, u: usize, v: usize, r: usize) -> Vec<Vec<usize>> {
    debug_assert!(r >= 2 && g.has_edge(u, v));
    let common = g.neighbors(u).intersection(g.neighbors(v));
    let fwd = forward_neighbourhoods(g);
    let mut out = Vec::new();
    let mut current = Vec::new();
    collect_from(&fwd, &common, r - 2, &mut current, &mut out);
    for c in out.iter_mut() {
        c.push(u);
        c.push(v);
        c.sort_unstable();
    }
    out
}

/// Copies of `K_r` that contain `v`.
pub(crate) fn cliques_through_vertex(g: &Graph, v: usize, r: usize) -> Vec<Vec<usize>> {
    debug_assert!(r >= 1);
    let fwd = forward_neighbourhoods(g);
    let mut out = Vec::new();
    let mut current = Vec::new();
    collect_from(&fwd, g.neighbors(v), r - 1, &mut current, &mut out);
    for c in out.iter_mut() {
        c.push(v);
        c.sort_unstable();
    }
    out
}
