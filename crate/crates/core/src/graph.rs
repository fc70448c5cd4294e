//! Simple undirected graphs on dense vertex labels `0..n`.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// A simple undirected graph on vertices `0..n`.
///
/// Adjacency is kept as one bitset row per vertex; rows are symmetric and
/// never contain the vertex itself.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    edges: usize,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: (0..n).map(|_| VertexSet::new(n)).collect(),
            edges: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_unchecked(u, v);
            }
        }
        g
    }

    /// Cycle `0-1-...-(n-1)-0`. Requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// The Petersen graph: outer 5-cycle 0..5, inner pentagram 5..10, spokes.
    pub fn petersen() -> Self {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, 5 + i));
        }
        Graph::from_edges(10, edges).expect("petersen edges are valid")
    }

    /// Builds a graph from an edge list. Duplicate edges are rejected, as are
    /// self-loops and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.check_pair(u, v)?;
            if g.has_edge(u, v) {
                return Err(Error::invalid(format!("duplicate edge {{{u},{v}}}")));
            }
            g.insert_unchecked(u, v);
        }
        Ok(g)
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::invalid(format!(
                "edge {{{u},{v}}} has an endpoint outside 0..{}",
                self.n
            )));
        }
        if u == v {
            return Err(Error::invalid(format!("self-loop at vertex {u}")));
        }
        Ok(())
    }

    #[inline]
    pub(crate) fn insert_unchecked(&mut self, u: usize, v: usize) {
        if !self.adj[u].contains(v) {
            self.adj[u].insert(v);
            self.adj[v].insert(u);
            self.edges += 1;
        }
    }

    /// Adds `{u, v}`; returns whether the edge was new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_pair(u, v)?;
        let fresh = !self.has_edge(u, v);
        self.insert_unchecked(u, v);
        Ok(fresh)
    }

    /// Removes `{u, v}`; returns whether the edge was present.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_pair(u, v)?;
        if !self.has_edge(u, v) {
            return Ok(false);
        }
        self.adj[u].remove(v);
        self.adj[v].remove(u);
        self.edges -= 1;
        Ok(true)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adj[u]
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Whether every pair inside `s` is an edge. Sets of size at most one
    /// are cliques.
    pub fn is_clique(&self, s: &[usize]) -> Result<bool> {
        if let Some(&bad) = s.iter().find(|&&v| v >= self.n) {
            return Err(Error::invalid(format!("vertex {bad} outside 0..{}", self.n)));
        }
        for (i, &u) in s.iter().enumerate() {
            for &v in &s[i + 1..] {
                if u == v {
                    return Err(Error::invalid(format!("vertex {u} repeated")));
                }
                if !self.adj[u].contains(v) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Induced subgraph on `vertices`, relabeled to `0..k` in the order
    /// given.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.n {
                return Err(Error::invalid(format!("vertex {v} outside 0..{}", self.n)));
            }
            if index[v] != usize::MAX {
                return Err(Error::invalid(format!("vertex {v} repeated")));
            }
            index[v] = i;
        }
        let mut h = Graph::empty(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for w in self.adj[v].iter() {
                let j = index[w];
                if j != usize::MAX && i < j {
                    h.insert_unchecked(i, j);
                }
            }
        }
        Ok(h)
    }

    /// Removes the vertices of `removed`, keeping the rest in increasing
    /// order. Returns the remaining graph and the original labels of its
    /// vertices.
    pub fn without_vertices(&self, removed: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let drop = VertexSet::from_iter_in(self.n, removed.iter().copied().filter(|&v| v < self.n));
        if let Some(&bad) = removed.iter().find(|&&v| v >= self.n) {
            return Err(Error::invalid(format!("vertex {bad} outside 0..{}", self.n)));
        }
        let keep: Vec<usize> = (0..self.n).filter(|&v| !drop.contains(v)).collect();
        Ok((self.induced(&keep)?, keep))
    }

    /// Disjoint union; the vertices of `graphs[k]` are shifted past those of
    /// all earlier graphs.
    pub fn disjoint_union(graphs: &[Graph]) -> Graph {
        let n = graphs.iter().map(Graph::n).sum();
        let mut out = Graph::empty(n);
        let mut offset = 0;
        for g in graphs {
            for (u, v) in g.edges() {
                out.insert_unchecked(offset + u, offset + v);
            }
            offset += g.n;
        }
        out
    }

    /// Join: disjoint union plus every pair with one endpoint in each part.
    pub fn join(a: &Graph, b: &Graph) -> Graph {
        let mut out = Graph::disjoint_union(&[a.clone(), b.clone()]);
        for u in 0..a.n {
            for v in 0..b.n {
                out.insert_unchecked(u, a.n + v);
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let mut out = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.adj[u].contains(v) {
                    out.insert_unchecked(u, v);
                }
            }
        }
        out
    }

    /// Relabels so that new vertex `i` is old vertex `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::invalid("permutation length differs from vertex count"));
        }
        self.induced(perm)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn is_clique_examples() {
        assert!(Graph::complete(4).is_clique(&[0, 1, 2]).unwrap());
        assert!(!Graph::empty(5).is_clique(&[0, 1]).unwrap());
        // {0,2} is not an edge of the 5-cycle
        assert!(!Graph::cycle(5).unwrap().is_clique(&[0, 1, 2]).unwrap());
        assert!(Graph::empty(3).is_clique(&[2]).unwrap());
        assert!(Graph::empty(3).is_clique(&[]).unwrap());
    }

    #[test]
    fn is_clique_rejects_out_of_range() {
        assert!(matches!(
            Graph::complete(3).is_clique(&[0, 3]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn from_edges_validation() {
        assert!(Graph::from_edges(3, [(0, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 3)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1), (1, 0)]).is_err());
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn petersen_shape() {
        let p = Graph::petersen();
        assert_eq!(p.edge_count(), 15);
        assert!((0..10).all(|v| p.degree(v) == 3));
    }

    #[test]
    fn join_and_union() {
        let j = Graph::join(&Graph::complete(1), &Graph::empty(3));
        assert_eq!(j.edge_count(), 3);
        let u = Graph::disjoint_union(&[Graph::complete(3), Graph::complete(2)]);
        assert_eq!(u.n(), 5);
        assert!(u.has_edge(3, 4) && !u.has_edge(2, 3));
    }

    #[test]
    fn without_vertices_relabels() {
        let g = Graph::complete(4);
        let (h, keep) = g.without_vertices(&[1]).unwrap();
        assert_eq!(keep, vec![0, 2, 3]);
        assert_eq!(h.edge_count(), 3);
    }
}
