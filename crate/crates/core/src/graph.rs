//! Undirected simple graphs on at most 62 vertices.
//!
//! Adjacency is stored as one `u64` bitset per vertex, so neighbourhood
//! intersections used by the clique and embedding searches are single word
//! operations.

use std::fmt;

use rand::Rng;

use crate::error::{invalid, Error, Result};

/// Largest order supported by the short graph6 form and the bitset layout.
pub const MAX_ORDER: usize = 62;

/// A set of vertex indices backed by a single machine word.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn iter(self) -> VertexSetIter {
        VertexSetIter(self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexSetIter;
    fn into_iter(self) -> VertexSetIter {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone, Debug)]
pub struct VertexSetIter(u64);

impl Iterator for VertexSetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for VertexSetIter {}

/// Undirected simple graph with vertices `0..n`.
///
/// Invariants: adjacency is symmetric and loop free. Every operation in this
/// crate takes graphs by shared reference and returns new values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Edgeless graph of order `n`.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge(n));
        }
        Ok(Graph { n, adj: vec![VertexSet::EMPTY; n] })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for v in 0..n {
            g.adj[v] = VertexSet::full(n).difference(VertexSet::singleton(v));
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(invalid(format!("cycle needs at least 3 vertices, got {n}")));
        }
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Result<Self> {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    /// Complete multipartite graph whose parts are consecutive label blocks
    /// of the given sizes.
    pub fn complete_multipartite(part_sizes: &[usize]) -> Result<Self> {
        let n: usize = part_sizes.iter().sum();
        let mut g = Graph::empty(n)?;
        let mut start = 0;
        let mut blocks = Vec::with_capacity(part_sizes.len());
        for &s in part_sizes {
            blocks.push((start..start + s).collect::<VertexSet>());
            start += s;
        }
        for (i, &block) in blocks.iter().enumerate() {
            let others = blocks.iter().enumerate().filter(|&(j, _)| j != i).fold(VertexSet::EMPTY, |acc, (_, &b)| acc.union(b));
            for v in block {
                g.adj[v] = others;
            }
        }
        Ok(g)
    }

    /// Complete multipartite graph on `n` vertices with the given parts.
    /// Parts must be pairwise disjoint and cover `0..n`.
    pub fn from_parts(n: usize, parts: &[VertexSet]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        let mut seen = VertexSet::EMPTY;
        for &part in parts {
            if !part.intersection(seen).is_empty() {
                return Err(invalid("parts overlap"));
            }
            seen = seen.union(part);
        }
        if seen != VertexSet::full(n) {
            return Err(invalid("parts do not cover the vertex set"));
        }
        for &part in parts {
            let others = seen.difference(part);
            for v in part {
                g.adj[v] = others;
            }
        }
        Ok(g)
    }

    /// Erdős–Rényi graph G(n, prob).
    pub fn random<R: Rng + ?Sized>(n: usize, prob: f64, rng: &mut R) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for j in 1..n {
            for i in 0..j {
                if rng.gen_bool(prob) {
                    g.add_edge(i, j)?;
                }
            }
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Loop(u));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.adj[u].remove(v);
        self.adj[v].remove(u);
        Ok(())
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, order: self.n })
        }
    }

    /// Number of vertices, v(G).
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Γ(v). Panics on an out-of-range vertex; use [`Graph::neighbors`] for a
    /// checked lookup.
    pub fn nbrs(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(self.adj[v])
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(|s| s.len()).collect()
    }

    /// e(G).
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// δ(G); 0 for the graph with no vertices.
    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(|s| s.len()).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    /// Edges `(i, j)` with `i < j`, ordered by `j` then `i`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.n).flat_map(move |j| self.adj[j].intersection(VertexSet::full(j)).iter().map(move |i| (i, j)))
    }

    /// G − u, with the remaining vertices relabelled to `0..n-1` in their
    /// original relative order.
    pub fn delete_vertex(&self, u: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        let keep: Vec<usize> = (0..self.n).filter(|&v| v != u).collect();
        Ok(self.induced_by_list(&keep))
    }

    /// G[S], relabelled to `0..|S|` in increasing order of the original labels.
    pub fn induced_subgraph(&self, set: VertexSet) -> Result<Graph> {
        if let Some(bad) = set.difference(self.vertices()).first() {
            return Err(Error::VertexOutOfRange { vertex: bad, order: self.n });
        }
        let keep: Vec<usize> = set.iter().collect();
        Ok(self.induced_by_list(&keep))
    }

    fn induced_by_list(&self, keep: &[usize]) -> Graph {
        let mut g = Graph { n: keep.len(), adj: vec![VertexSet::EMPTY; keep.len()] };
        for (a, &u) in keep.iter().enumerate() {
            for (b, &v) in keep.iter().enumerate() {
                if self.adj[u].contains(v) {
                    g.adj[a].insert(b);
                }
            }
        }
        g
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, found: perm.len() });
        }
        let mut seen = VertexSet::EMPTY;
        for &p in perm {
            self.check_vertex(p)?;
            if seen.contains(p) {
                return Err(invalid("relabelling is not a permutation"));
            }
            seen.insert(p);
        }
        let mut g = Graph::empty(self.n)?;
        for (i, j) in self.edges() {
            g.add_edge(perm[i], perm[j])?;
        }
        Ok(g)
    }

    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let mut g = Graph::empty(self.n + other.n)?;
        for (i, j) in self.edges() {
            g.add_edge(i, j)?;
        }
        for (i, j) in other.edges() {
            g.add_edge(self.n + i, self.n + j)?;
        }
        Ok(g)
    }

    /// D_G(v, x) = Σ_{i ∈ Γ(v)} x_i for every vertex.
    pub fn weighted_degrees(&self, x: &[f64]) -> Vec<f64> {
        self.adj.iter().map(|s| s.iter().map(|i| x[i]).sum()).collect()
    }

    /// True iff the graph is complete multipartite, i.e. non-adjacency is an
    /// equivalence relation. Returns the parts in order of their least vertex.
    pub fn multipartite_parts(&self) -> Option<Vec<VertexSet>> {
        let mut parts = Vec::new();
        let mut rest = self.vertices();
        while let Some(v) = rest.first() {
            let part = self.vertices().difference(self.adj[v]);
            if !part.difference(rest).is_empty() {
                return None;
            }
            for w in part {
                if self.vertices().difference(self.adj[w]) != part {
                    return None;
                }
            }
            parts.push(part);
            rest = rest.difference(part);
        }
        Some(parts)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (k, (i, j)) in self.edges().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{i}-{j}")?;
        }
        f.write_str("])")
    }
}

/// Turán graph T_r(n): complete r-partite graph on `n` vertices whose
/// `n mod r` leading parts have ⌈n/r⌉ vertices and the rest ⌊n/r⌋.
pub fn turan_graph(r: usize, n: usize) -> Result<Graph> {
    if r < 1 || n < 1 {
        return Err(invalid(format!("turan_graph needs r >= 1 and n >= 1, got r={r}, n={n}")));
    }
    if r > MAX_ORDER || n > MAX_ORDER {
        return Err(Error::OrderTooLarge(r.max(n)));
    }
    Graph::complete_multipartite(&turan_part_sizes(r, n))
}

pub fn turan_part_sizes(r: usize, n: usize) -> Vec<usize> {
    let (s, t) = (n / r, n % r);
    (0..r).map(|i| if i < t { s + 1 } else { s }).collect()
}

/// K_r^+(s; t): complete r-partite graph with r−1 parts of size `s` and a
/// last part of size `t`, plus the edge {0, 1} inside the first part.
pub fn kr_plus(r: usize, s: usize, t: usize) -> Result<Graph> {
    if r < 2 {
        return Err(invalid(format!("kr_plus needs r >= 2, got {r}")));
    }
    if s < 2 {
        return Err(invalid(format!("kr_plus needs s >= 2 to hold the extra edge, got {s}")));
    }
    if t < 1 {
        return Err(invalid("kr_plus needs t >= 1"));
    }
    let n = (r - 1) * s + t;
    if n > MAX_ORDER {
        return Err(Error::OrderTooLarge(n));
    }
    let mut sizes = vec![s; r - 1];
    sizes.push(t);
    let mut g = Graph::complete_multipartite(&sizes)?;
    g.add_edge(0, 1)?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn turan_examples() {
        let g = turan_graph(2, 4).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert!(!g.has_edge(0, 1) && !g.has_edge(2, 3));
        assert!(g.has_edge(0, 2) && g.has_edge(1, 3));

        let g = turan_graph(3, 7).unwrap();
        assert_eq!(turan_part_sizes(3, 7), vec![3, 2, 2]);
        assert_eq!(g.edge_count(), 16);
        assert_eq!(g.min_degree(), 4);

        assert_eq!(turan_graph(1, 5).unwrap().edge_count(), 0);
        assert_eq!(turan_graph(2, 5).unwrap().edge_count(), 6);
        assert!(turan_graph(0, 5).is_err());
        assert!(turan_graph(2, 0).is_err());
    }

    #[test]
    fn kr_plus_examples() {
        let g = kr_plus(2, 2, 2).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.edge_count(), 5);
        let tri = kr_plus(2, 2, 1).unwrap();
        assert_eq!(tri, Graph::complete(3).unwrap());
        assert_eq!(kr_plus(3, 2, 2).unwrap().edge_count(), 13);
        assert!(kr_plus(3, 1, 2).is_err());
    }

    #[test]
    fn vertex_deletion_relabels_in_order() {
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(k3.delete_vertex(0).unwrap(), Graph::complete(2).unwrap());
        let p = Graph::path(4).unwrap();
        let q = p.delete_vertex(1).unwrap();
        // 0-1-2-3 minus 1: old 2-3 becomes 1-2
        assert_eq!(q, Graph::from_edges(3, [(1, 2)]).unwrap());
        assert!(matches!(k3.delete_vertex(3), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn induced_and_neighbors() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.neighbors(0).unwrap(), [1, 4].into_iter().collect());
        assert!(c5.neighbors(5).is_err());
        let h = c5.induced_subgraph([0, 1, 2].into_iter().collect()).unwrap();
        assert_eq!(h, Graph::path(3).unwrap());
        assert!(c5.induced_subgraph(VertexSet::singleton(7)).is_err());
    }

    #[test]
    fn rejects_loops_and_large_orders() {
        let mut g = Graph::empty(3).unwrap();
        assert!(matches!(g.add_edge(1, 1), Err(Error::Loop(1))));
        assert!(g.add_edge(0, 3).is_err());
        assert!(matches!(Graph::empty(63), Err(Error::OrderTooLarge(63))));
    }

    #[test]
    fn multipartite_detection() {
        let t = turan_graph(3, 7).unwrap();
        let parts = t.multipartite_parts().unwrap();
        assert_eq!(parts.len(), 3);
        assert!(Graph::cycle(5).unwrap().multipartite_parts().is_none());
        assert_eq!(Graph::empty(4).unwrap().multipartite_parts().unwrap().len(), 1);
    }
}
