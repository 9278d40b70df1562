//! Simple undirected graphs and the structural operations built on them.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub mod canon;
pub mod density;
pub mod generators;
pub mod glue;
pub mod io;
pub mod predicates;
pub mod spectrum;

pub use canon::{canonical_form, canonical_labeling, isomorphism, CanonicalForm};
pub use density::{two_density_screen, ScreenResult};
pub use glue::glue;
pub use predicates::{girth, is_c4_free, max_codegree, triangles, Girth};

/// Fixed-width bitset over `0..n`, one bit per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bits {
    words: Vec<u64>,
}

impl Bits {
    pub fn new(n: usize) -> Self {
        Bits { words: vec![0; n.div_ceil(64)] }
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Size of the intersection with `other`.
    #[inline]
    pub fn and_count(&self, other: &Bits) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

/// Largest vertex count for which per-vertex bitset rows are built.
pub const BITSET_LIMIT: usize = 1 << 16;

/// A simple undirected graph on `0..n`.
///
/// Edges are stored normalized (`u <= v`) and sorted. Loops are only
/// representable when the graph was built with [`Graph::with_loops`]; a loop
/// contributes one incidence to the degree of its vertex.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    allow_loops: bool,
    rows: OnceLock<Vec<Bits>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges && self.allow_loops == other.allow_loops
    }
}

impl Eq for Graph {}

impl std::hash::Hash for Graph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.edges.hash(state);
        self.allow_loops.hash(state);
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    loops: bool,
}

/// Serialized as `{"n": .., "edges": [[u, v], ..]}`; deserialization
/// validates like [`Graph::new`].
impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr { n: self.n, edges: self.edges.clone(), loops: self.allow_loops }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = GraphRepr::deserialize(d)?;
        Graph::build(r.n, r.edges, r.loops).map_err(serde::de::Error::custom)
    }
}

impl Graph {
    /// Builds a loop-free simple graph, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::build(n, edges, false)
    }

    /// Like [`Graph::new`] but accepts loops `(v, v)`.
    pub fn with_loops(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::build(n, edges, true)
    }

    pub fn empty(n: usize) -> Self {
        Self::build(n, [], false).expect("edgeless graph is valid")
    }

    fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>, allow_loops: bool) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v && !allow_loops {
                return Err(Error::LoopNotAllowed(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            if u != v {
                adj[v].push(u);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph { n, edges: list, adj, allow_loops, rows: OnceLock::new() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn allows_loops(&self) -> bool {
        self.allow_loops
    }

    /// Sorted neighbors; a looped vertex lists itself once.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(u, v)| u == v).count()
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|(u, v)| u == v)
    }

    /// Bitset adjacency rows (loops set the diagonal bit).
    ///
    /// # Panics
    /// When `n` exceeds [`BITSET_LIMIT`].
    pub fn rows(&self) -> &[Bits] {
        assert!(self.n <= BITSET_LIMIT, "bitset rows are limited to {BITSET_LIMIT} vertices");
        self.rows.get_or_init(|| {
            let mut rows = vec![Bits::new(self.n); self.n];
            for &(u, v) in &self.edges {
                rows[u].set(v);
                rows[v].set(u);
            }
            rows
        })
    }

    /// Number of common neighbors of `u` and `v`.
    pub fn codegree(&self, u: usize, v: usize) -> usize {
        let rows = self.rows();
        rows[u].and_count(&rows[v])
    }

    /// Same graph with loops permitted in later edits.
    pub fn allowing_loops(&self) -> Graph {
        Graph::with_loops(self.n, self.edges.iter().copied()).expect("valid")
    }

    /// Copy without any loops.
    pub fn without_loops(&self) -> Graph {
        Graph::new(self.n, self.edges.iter().copied().filter(|(u, v)| u != v)).expect("valid")
    }

    /// Subgraph induced on `vertices`, relabeled `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u], pos[v]));
        Self::build(vertices.len(), edges, self.allow_loops).expect("induced subgraph is valid")
    }

    /// Same vertex set, edges restricted to those accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, usize) -> bool) -> Graph {
        let edges = self.edges.iter().copied().filter(|&(u, v)| keep(u, v));
        Self::build(self.n, edges, self.allow_loops).expect("edge subset is valid")
    }

    /// Graph with the extra edges added.
    pub fn with_edges(&self, extra: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        Self::build(self.n, self.edges.iter().copied().chain(extra), self.allow_loops)
    }

    /// Graph with `k` extra isolated vertices appended.
    pub fn with_isolated(&self, k: usize) -> Graph {
        Self::build(self.n + k, self.edges.iter().copied(), self.allow_loops).expect("valid")
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        Self::build(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])), self.allow_loops)
            .expect("relabeling by a permutation is valid")
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        Self::build(self.n + other.n, edges, self.allow_loops || other.allow_loops).expect("valid")
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Vertices of degree zero.
    pub fn isolated(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.adj[v].is_empty()).collect()
    }

    /// Dense 0/1 adjacency matrix, row-major; loops on the diagonal.
    pub fn adjacency_matrix(&self) -> Vec<u8> {
        let mut a = vec![0u8; self.n * self.n];
        for &(u, v) in &self.edges {
            a[u * self.n + v] = 1;
            a[v * self.n + u] = 1;
        }
        a
    }

    /// Number of ordered pairs `(a, b)` with `a ∈ A`, `b ∈ B` adjacent.
    ///
    /// Edges inside `A ∩ B` are counted twice and loops once, matching the
    /// bilinear form `1_Aᵀ · Adj · 1_B`.
    pub fn bilinear_count(&self, a: &[bool], b: &[bool]) -> u64 {
        let mut total = 0u64;
        for (x, nb) in self.adj.iter().enumerate() {
            if a[x] {
                total += nb.iter().filter(|&&y| b[y]).count() as u64;
            }
        }
        total
    }
}

/// A pattern with a marked independent set of ends.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootedPattern {
    pattern: Graph,
    ends: Vec<usize>,
}

impl RootedPattern {
    /// Rejects out-of-range or repeated ends and ends joined by an edge.
    pub fn new(pattern: Graph, ends: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut ends: Vec<usize> = ends.into_iter().collect();
        ends.sort_unstable();
        ends.dedup();
        for &e in &ends {
            if e >= pattern.n() {
                return Err(Error::VertexOutOfRange { vertex: e, n: pattern.n() });
            }
        }
        for (i, &a) in ends.iter().enumerate() {
            for &b in &ends[i..] {
                if pattern.has_edge(a, b) {
                    return Err(Error::EndsNotIndependent(a, b));
                }
            }
        }
        Ok(RootedPattern { pattern, ends })
    }

    pub fn pattern(&self) -> &Graph {
        &self.pattern
    }

    pub fn ends(&self) -> &[usize] {
        &self.ends
    }
}
