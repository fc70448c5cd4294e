//! Uniform set systems (`r`-graphs) and intersection-size constraints.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::bitset::VertexSet;
use crate::cliques::enumerate_kr;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Families with fewer edges than this are checked on the calling thread.
const PARALLEL_PAIRS_THRESHOLD: usize = 512;

/// A family of distinct `r`-subsets of `0..n`.
///
/// Edges are stored as sorted vertex lists and the family is kept in
/// lexicographic order, so iteration order and witness selection are
/// reproducible.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniformSetSystem {
    n: usize,
    r: usize,
    edges: Vec<Vec<usize>>,
}

impl UniformSetSystem {
    pub fn new(n: usize, r: usize, edges: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for mut e in edges {
            e.sort_unstable();
            if e.len() != r {
                return Err(Error::invalid(format!(
                    "edge {e:?} has {} elements, expected {r}",
                    e.len()
                )));
            }
            if let Some(&bad) = e.iter().find(|&&v| v >= n) {
                return Err(Error::invalid(format!("element {bad} of {e:?} outside 0..{n}")));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!("edge {e:?} repeats an element")));
            }
            out.push(e);
        }
        out.sort();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("edge {:?} appears twice", w[0])));
        }
        Ok(UniformSetSystem { n, r, edges: out })
    }

    /// Caller guarantees sorted, distinct, in-range edges in lexicographic order.
    pub(crate) fn from_sorted_unchecked(n: usize, r: usize, edges: Vec<Vec<usize>>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|e| e.len() == r));
        UniformSetSystem { n, r, edges }
    }

    pub fn empty(n: usize, r: usize) -> Self {
        UniformSetSystem { n, r, edges: Vec::new() }
    }

    /// All `r`-subsets of `0..n`.
    pub fn complete(n: usize, r: usize) -> Self {
        let mut edges = Vec::new();
        let mut current = Vec::with_capacity(r);
        fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == r {
                out.push(cur.clone());
                return;
            }
            for v in start..n {
                if n - v < r - cur.len() {
                    break;
                }
                cur.push(v);
                rec(v + 1, n, r, cur, out);
                cur.pop();
            }
        }
        rec(0, n, r, &mut current, &mut edges);
        UniformSetSystem { n, r, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn contains(&self, edge: &[usize]) -> bool {
        self.edges
            .binary_search_by(|e| e.as_slice().cmp(edge))
            .is_ok()
    }

    pub fn masks(&self) -> Vec<VertexSet> {
        self.edges
            .iter()
            .map(|e| VertexSet::from_iter_in(self.n, e.iter().copied()))
            .collect()
    }

    /// Number of edges containing `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.binary_search(&v).is_ok()).count()
    }

    /// Degrees of all vertices in one pass.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            for &v in e {
                d[v] += 1;
            }
        }
        d
    }

    /// Subfamily of edges satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&[usize]) -> bool) -> UniformSetSystem {
        UniformSetSystem {
            n: self.n,
            r: self.r,
            edges: self.edges.iter().filter(|e| keep(e)).cloned().collect(),
        }
    }

    /// One edge per line, elements separated by single spaces.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(usize::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the line format written by [`to_text`](Self::to_text).
    ///
    /// Blank lines and lines starting with `#` are skipped. The uniformity
    /// is taken from the first edge; `n` defaults to one more than the
    /// largest element when not given.
    pub fn parse(text: &str, n: Option<usize>) -> Result<Self> {
        let mut edges = Vec::new();
        let mut offset = 0usize;
        for line in text.split_inclusive('\n') {
            let body = line.trim_end_matches(['\n', '\r']);
            let trimmed = body.trim();
            if !trimmed.is_empty() && !trimmed.starts_with('#') {
                let mut edge = Vec::new();
                let mut col = 0usize;
                for tok in body.split(' ') {
                    if !tok.is_empty() {
                        let v: usize = tok.parse().map_err(|_| {
                            Error::parse(offset + col, format!("expected an integer, found {tok:?}"))
                        })?;
                        edge.push(v);
                    }
                    col += tok.len() + 1;
                }
                edges.push((offset, edge));
            }
            offset += line.len();
        }
        let r = edges.first().map_or(0, |(_, e)| e.len());
        if let Some((at, e)) = edges.iter().find(|(_, e)| e.len() != r) {
            return Err(Error::parse(
                *at,
                format!("edge has {} elements, expected {r}", e.len()),
            ));
        }
        let max = edges.iter().flat_map(|(_, e)| e.iter().copied()).max();
        let n = match (n, max) {
            (Some(n), _) => n,
            (None, Some(m)) => m
                .checked_add(1)
                .ok_or_else(|| Error::parse(0, "element too large"))?,
            (None, None) => 0,
        };
        UniformSetSystem::new(n, r, edges.into_iter().map(|(_, e)| e))
    }
}

impl fmt::Debug for UniformSetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UniformSetSystem")
            .field("n", &self.n)
            .field("r", &self.r)
            .field("edges", &self.edges)
            .finish()
    }
}

/// The allowed intersection sizes `L ⊆ {0, …, r−1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntersectionSpec {
    r: usize,
    allowed: BTreeSet<usize>,
}

impl IntersectionSpec {
    pub fn new(r: usize, allowed: impl IntoIterator<Item = usize>) -> Result<Self> {
        let allowed: BTreeSet<usize> = allowed.into_iter().collect();
        if allowed.is_empty() {
            return Err(Error::invalid("intersection set L must be nonempty"));
        }
        if let Some(&bad) = allowed.iter().find(|&&l| l >= r) {
            return Err(Error::invalid(format!(
                "intersection size {bad} is not in 0..{r} (r = {r})"
            )));
        }
        Ok(IntersectionSpec { r, allowed })
    }

    /// `L = {t, t+1, …, r−1}`.
    pub fn t_intersecting(r: usize, t: usize) -> Result<Self> {
        if t >= r {
            return Err(Error::invalid(format!("t = {t} must be below r = {r}")));
        }
        IntersectionSpec::new(r, t..r)
    }

    /// `L = {0, …, r−1}`: every family qualifies.
    pub fn full(r: usize) -> Result<Self> {
        IntersectionSpec::new(r, 0..r)
    }

    /// Parses a comma-separated list such as `0,1`. Duplicates collapse.
    pub fn parse(r: usize, text: &str) -> Result<Self> {
        let mut values = Vec::new();
        let mut offset = 0;
        for tok in text.split(',') {
            let t = tok.trim();
            let v: usize = t.parse().map_err(|_| {
                Error::parse(offset, format!("expected an integer, found {t:?}"))
            })?;
            values.push(v);
            offset += tok.len() + 1;
        }
        IntersectionSpec::new(r, values)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    #[inline]
    pub fn allows(&self, size: usize) -> bool {
        self.allowed.contains(&size)
    }

    /// Members of `L` in increasing order.
    pub fn values(&self) -> Vec<usize> {
        self.allowed.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.allowed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.allowed.is_empty()
    }

    pub fn min(&self) -> usize {
        *self.allowed.iter().next().expect("L is nonempty")
    }

    pub fn is_subset(&self, other: &IntersectionSpec) -> bool {
        self.allowed.is_subset(&other.allowed)
    }

    /// `Some(t)` when `L = {t, …, r−1}`.
    pub fn as_t_intersecting(&self) -> Option<usize> {
        let t = self.min();
        (self.allowed.len() == self.r - t).then_some(t)
    }

    fn table(&self) -> Vec<bool> {
        (0..=self.r).map(|k| self.allowed.contains(&k)).collect()
    }
}

impl fmt::Display for IntersectionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.allowed.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A pair of distinct edges whose intersection size is not allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub size: usize,
}

/// Outcome of an intersection check: `witness` is the lexicographically
/// first violating pair, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionCheck {
    pub witness: Option<Violation>,
}

impl IntersectionCheck {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// `{ |e ∩ e'| : e ≠ e' }`.
pub fn intersection_profile(h: &UniformSetSystem) -> BTreeSet<usize> {
    let masks = h.masks();
    let mut seen = vec![false; h.r() + 1];
    for i in 0..masks.len() {
        for j in i + 1..masks.len() {
            seen[masks[i].intersection_len(&masks[j])] = true;
        }
    }
    seen.iter()
        .enumerate()
        .filter_map(|(k, &s)| s.then_some(k))
        .collect()
}

/// First `(i, j)`, `i < j`, whose intersection size fails `ok`.
fn first_bad_pair(masks: &[VertexSet], ok: &[bool]) -> Option<(usize, usize, usize)> {
    let scan = |i: usize| {
        (i + 1..masks.len()).find_map(|j| {
            let k = masks[i].intersection_len(&masks[j]);
            (!ok[k]).then_some((i, j, k))
        })
    };
    if masks.len() >= PARALLEL_PAIRS_THRESHOLD {
        (0..masks.len()).into_par_iter().find_map_first(scan)
    } else {
        (0..masks.len()).find_map(scan)
    }
}

/// Whether every two distinct edges of `h` meet in a size allowed by `spec`.
pub fn is_l_intersecting(h: &UniformSetSystem, spec: &IntersectionSpec) -> Result<IntersectionCheck> {
    if h.r() != spec.r() {
        return Err(Error::invalid(format!(
            "uniformity mismatch: family has r = {}, L was given for r = {}",
            h.r(),
            spec.r()
        )));
    }
    let witness = first_bad_pair(&h.masks(), &spec.table()).map(|(i, j, size)| Violation {
        first: h.edges[i].clone(),
        second: h.edges[j].clone(),
        size,
    });
    Ok(IntersectionCheck { witness })
}

/// Whether the `K_r` copies of `g` form an `L`-intersecting family.
pub fn is_kr_l_intersecting(g: &Graph, spec: &IntersectionSpec) -> Result<IntersectionCheck> {
    let cliques = enumerate_kr(g, spec.r())?;
    is_l_intersecting(cliques.as_system(), spec)
}

/// `{ S : S ∪ {v} ∈ h, v ∉ S }`, an `(r−1)`-uniform family.
pub fn link(h: &UniformSetSystem, v: usize) -> Result<UniformSetSystem> {
    if v >= h.n() {
        return Err(Error::invalid(format!("vertex {v} outside 0..{}", h.n())));
    }
    if h.r() == 0 {
        return Err(Error::invalid("the link of a 0-uniform family is undefined"));
    }
    let edges = h
        .edges
        .iter()
        .filter(|e| e.binary_search(&v).is_ok())
        .map(|e| e.iter().copied().filter(|&u| u != v).collect())
        .collect();
    // Removing a common element keeps lexicographic order and distinctness.
    Ok(UniformSetSystem::from_sorted_unchecked(h.n(), h.r() - 1, edges))
}

/// Intersection of all edges.
pub fn common_core(h: &UniformSetSystem) -> Result<Vec<usize>> {
    let mut it = h.edges.iter();
    let first = it
        .next()
        .ok_or_else(|| Error::invalid("common core of an empty family is undefined"))?;
    let mut core = VertexSet::from_iter_in(h.n(), first.iter().copied());
    for e in it {
        core.intersect_with(&VertexSet::from_iter_in(h.n(), e.iter().copied()));
        if core.is_empty() {
            break;
        }
    }
    Ok(core.to_vec())
}
