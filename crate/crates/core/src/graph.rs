//! Immutable simple undirected graphs on dense labels 0..n-1.
//!
//! Adjacency is stored as one bitset row per vertex (multi-word above 64
//! vertices), giving O(1)-per-word neighborhood intersection for the search
//! routines. Every constructor documents its labeling so that the partitions
//! used by the spectral module are contiguous label ranges.

use serde::{Deserialize, Serialize};
use thiserror::Error;

mod graph6;
pub use graph6::Graph6Error;

/// Errors from checked graph operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range for graph on {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("duplicate vertex {0} in set")]
    DuplicateVertex(usize),
}

/// An immutable simple undirected graph.
///
/// Invariants: adjacency symmetric, empty diagonal, no multi-edges (bitsets
/// make multi-edges unrepresentable).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    fn words_for(n: usize) -> usize {
        n.div_ceil(64).max(1)
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        let words = Self::words_for(n);
        Graph {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    /// Builds from an edge list; panics on out-of-range or loop edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            assert!(u < n && v < n, "edge ({u},{v}) out of range for n={n}");
            assert_ne!(u, v, "self-loop at {u}");
            g.set_edge(u, v);
        }
        g
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
    }

    fn clear_edge(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] &= !(1 << (v % 64));
        self.bits[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    /// Path on `m` vertices (m-1 edges along consecutive labels).
    pub fn path(m: usize) -> Self {
        let mut g = Self::empty(m);
        for i in 1..m {
            g.set_edge(i - 1, i);
        }
        g
    }

    /// Cycle on `m` vertices; `m >= 3`.
    pub fn cycle(m: usize) -> Self {
        assert!(m >= 3, "cycle needs at least 3 vertices");
        let mut g = Self::path(m);
        g.set_edge(m - 1, 0);
        g
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.set_edge(u, v);
            }
        }
        g
    }

    /// Complete bipartite graph; the size-`a` class takes labels 0..a.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Self::empty(a + b);
        for u in 0..a {
            for v in a..(a + b) {
                g.set_edge(u, v);
            }
        }
        g
    }

    /// Join of two graphs: all cross edges added, `g`'s labels precede `h`'s.
    pub fn join(g: &Graph, h: &Graph) -> Self {
        let n = g.n + h.n;
        let mut out = Self::empty(n);
        for u in 0..g.n {
            for v in g.neighbors(u) {
                if v > u {
                    out.set_edge(u, v);
                }
            }
        }
        for u in 0..h.n {
            for v in h.neighbors(u) {
                if v > u {
                    out.set_edge(g.n + u, g.n + v);
                }
            }
        }
        for u in 0..g.n {
            for v in 0..h.n {
                out.set_edge(u, g.n + v);
            }
        }
        out
    }

    /// Disjoint union; vertex labels follow the list order.
    pub fn disjoint_union(gs: &[Graph]) -> Self {
        let n = gs.iter().map(|g| g.n).sum();
        let mut out = Self::empty(n);
        let mut base = 0;
        for g in gs {
            for u in 0..g.n {
                for v in g.neighbors(u) {
                    if v > u {
                        out.set_edge(base + u, base + v);
                    }
                }
            }
            base += g.n;
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n);
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 != 0
    }

    /// Bitset row of `v`.
    pub fn row(&self, v: usize) -> &[u64] {
        assert!(v < self.n);
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        let total: usize = (0..self.n).map(|v| self.degree(v)).sum();
        total / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.row(v);
        row.iter().enumerate().flat_map(|(wi, &w)| {
            let base = wi * 64;
            BitIter(w).map(move |b| base + b)
        })
    }

    /// Copy with one extra edge; panics on invalid endpoints.
    pub fn with_edge(&self, u: usize, v: usize) -> Graph {
        assert!(u < self.n && v < self.n && u != v);
        let mut g = self.clone();
        g.set_edge(u, v);
        g
    }

    /// Copy with one edge removed.
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        assert!(u < self.n && v < self.n);
        let mut g = self.clone();
        g.clear_edge(u, v);
        g
    }

    /// Subgraph induced by `verts`, preserving the relative vertex order.
    /// Panics on out-of-range or duplicate vertices.
    pub fn induced(&self, verts: &[usize]) -> Graph {
        let mut seen = vec![false; self.n];
        for &v in verts {
            assert!(v < self.n, "vertex {v} out of range");
            assert!(!seen[v], "duplicate vertex {v}");
            seen[v] = true;
        }
        let mut g = Self::empty(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(i, j);
                }
            }
        }
        g
    }

    /// Connected components as sorted vertex lists, ordered by smallest label.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            let mut members = vec![];
            comp[start] = id;
            while let Some(v) = stack.pop() {
                members.push(v);
                for u in self.neighbors(v) {
                    if comp[u] == usize::MAX {
                        comp[u] = id;
                        stack.push(u);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Complement graph (tests use this to build dense counterexamples).
    pub fn complement(&self) -> Graph {
        let mut g = Self::empty(self.n);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    /// graph6 encoding (header-free variant), bit-exact per the format.
    pub fn to_graph6(&self) -> String {
        graph6::encode(self)
    }

    /// Decodes a graph6 string; malformed input is rejected with position.
    pub fn from_graph6(s: &str) -> Result<Graph, Graph6Error> {
        graph6::decode(s)
    }

    /// Adjacency-list JSON value `{"n":int,"edges":[[u,v],...]}`.
    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges(),
        }
    }

    pub fn from_json(j: &GraphJson) -> Graph {
        Graph::from_edges(j.n, &j.edges)
    }

    pub(crate) fn empty_builder(n: usize) -> Graph {
        Self::empty(n)
    }

    pub(crate) fn add_edge_mut(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n && u != v);
        self.set_edge(u, v);
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// JSON wire form of a graph.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

/// A validated subset of the vertices of some graph on `n` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    n: usize,
    members: Vec<usize>,
}

impl VertexSet {
    /// Checked constructor; members are kept in the given order.
    pub fn new(n: usize, members: Vec<usize>) -> Result<Self, GraphError> {
        let mut seen = vec![false; n];
        for &v in &members {
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            if seen[v] {
                return Err(GraphError::DuplicateVertex(v));
            }
            seen[v] = true;
        }
        Ok(VertexSet { n, members })
    }

    /// Contiguous label range, the common case for join-block partitions.
    pub fn range(n: usize, r: std::ops::Range<usize>) -> Result<Self, GraphError> {
        Self::new(n, r.collect())
    }

    pub fn ambient_n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(&v)
    }
}
