//! Canonical labelling by minimal adjacency string and orderly generation of
//! all graphs on up to seven vertices.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest `n` generated internally.
pub const MAX_GENERATED: usize = 7;

/// Numbers of isomorphism classes of simple graphs on `n` vertices.
pub const CLASS_COUNTS: [u64; 12] = [
    1, 1, 2, 4, 11, 34, 156, 1044, 12_346, 274_668, 12_005_168, 1_018_997_864,
];

/// Largest vertex count whose canonical key is computed.
pub const MAX_CANONICAL_VERTICES: usize = 12;

const MAX_FRONTIER: usize = 1 << 22;

/// The column-major upper-triangle bit string of a relabelled graph, stored
/// one column per word (`column j` holds `x(0,j) … x(j−1,j)`, most
/// significant first). Comparing keys compares the bit strings
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u16>);

#[derive(Clone, Debug)]
pub struct Canonical {
    pub key: CanonicalKey,
    /// `perm[i]` is the original vertex placed at position `i`.
    pub perm: Vec<usize>,
    pub graph: Graph,
}

fn column(g: &Graph, placed: &[usize], v: usize) -> u16 {
    placed
        .iter()
        .fold(0u16, |acc, &u| (acc << 1) | u16::from(g.has_edge(u, v)))
}

/// Minimal adjacency string over all vertex orderings.
///
/// Because the string is a concatenation of fixed-width columns, the
/// minimum can be built column by column, keeping only the partial
/// orderings that achieve the smallest prefix so far.
pub fn canonical_form(g: &Graph) -> Result<Canonical> {
    let n = g.n();
    if n > MAX_CANONICAL_VERTICES {
        return Err(Error::Budget(format!(
            "canonical labelling is limited to n <= {MAX_CANONICAL_VERTICES}, got {n}"
        )));
    }
    // Swapping two twins is an automorphism fixing every other vertex, so
    // a twin is only tried if no smaller unused twin exists.
    let twin_masks: Vec<u32> = (0..n)
        .map(|v| {
            (0..v)
                .filter(|&w| {
                    let mut a = g.neighbors(v).clone();
                    let mut b = g.neighbors(w).clone();
                    a.remove(w);
                    b.remove(v);
                    a == b
                })
                .fold(0u32, |m, w| m | 1 << w)
        })
        .collect();
    let mut frontier: Vec<(Vec<usize>, u32)> = vec![(Vec::new(), 0)];
    let mut key = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<u16> = None;
        let mut next = Vec::new();
        for (placed, used) in &frontier {
            let open = |v: usize| used & (1 << v) == 0 && twin_masks[v] & !used == 0;
            for v in (0..n).filter(|&v| open(v)) {
                let c = column(g, placed, v);
                match best {
                    Some(b) if c > b => continue,
                    Some(b) if c < b => next.clear(),
                    _ => {}
                }
                best = Some(c);
                let mut p = placed.clone();
                p.push(v);
                next.push((p, used | (1 << v)));
            }
        }
        if next.len() > MAX_FRONTIER {
            return Err(Error::Budget(format!(
                "canonical labelling kept more than {MAX_FRONTIER} tied orderings"
            )));
        }
        key.push(best.expect("at least one vertex remains"));
        frontier = next;
    }
    let perm = frontier.swap_remove(0).0;
    let graph = g.permuted(&perm)?;
    Ok(Canonical {
        key: CanonicalKey(key),
        perm,
        graph,
    })
}

/// One representative per isomorphism class on `n ≤ 7` vertices, each in
/// canonical labelling, sorted by canonical key.
pub fn generate_graphs(n: usize) -> Result<&'static [Graph]> {
    static CACHE: [OnceLock<Vec<Graph>>; MAX_GENERATED + 1] = [const { OnceLock::new() }; MAX_GENERATED + 1];
    if n > MAX_GENERATED {
        return Err(Error::Budget(format!(
            "internal generation stops at n = {MAX_GENERATED}; supply a graph6 catalog for n = {n}"
        )));
    }
    if let Some(v) = CACHE[n].get() {
        return Ok(v);
    }
    let built = if n == 0 {
        vec![Graph::empty(0)]
    } else {
        extend_by_one(generate_graphs(n - 1)?)
    };
    Ok(CACHE[n].get_or_init(|| built))
}

/// Every graph on `m + 1` vertices is a graph on `m` vertices plus one
/// vertex with some neighbourhood, so extending each class representative
/// in every way and deduplicating is complete.
fn extend_by_one(smaller: &[Graph]) -> Vec<Graph> {
    let m = smaller.first().map_or(0, Graph::n);
    let candidates: Vec<(usize, u32)> = (0..smaller.len())
        .flat_map(|i| (0..1u32 << m).map(move |s| (i, s)))
        .collect();
    let found: Vec<Canonical> = candidates
        .into_par_iter()
        .map(|(i, s)| {
            let base = &smaller[i];
            let edges = base
                .edges()
                .chain((0..m).filter(|&u| s & (1 << u) != 0).map(|u| (u, m)));
            let g = Graph::from_edges(m + 1, edges).expect("extension edges are valid");
            canonical_form(&g).expect("generated graphs are small")
        })
        .collect();
    let mut classes: BTreeMap<CanonicalKey, Graph> = BTreeMap::new();
    for c in found {
        classes.entry(c.key).or_insert(c.graph);
    }
    classes.into_values().collect()
}
