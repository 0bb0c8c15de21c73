//! Immutable undirected simple graphs, vertex sets, and partitions.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// An immutable undirected simple graph on vertices `0..n`.
///
/// Edges are stored as ordered pairs `(u, v)` with `u < v`, sorted and
/// deduplicated at construction. Isolated vertices are permitted: the vertex
/// count is explicit, not inferred from the edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    degrees: Vec<usize>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges, and endpoints
    /// outside `0..n`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut normalized = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::Validation(format!("self-loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::Validation(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{n}"
                )));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Validation(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        let mut degrees = vec![0usize; n];
        for &(u, v) in &normalized {
            degrees[u] += 1;
            degrees[v] += 1;
        }
        Ok(Self {
            n,
            edges: normalized,
            degrees,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Sum of all degrees; equals twice the edge count.
    pub fn volume(&self) -> u64 {
        2 * self.edges.len() as u64
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).is_ok()
    }

    /// Number of connected components; isolated vertices count as their own
    /// components. An empty graph has zero.
    pub fn component_count(&self) -> usize {
        let mut dsu = DisjointSets::new(self.n);
        for &(u, v) in &self.edges {
            dsu.union(u, v);
        }
        dsu.set_count()
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_count() == 1
    }

    /// Per-vertex component labels, numbered by first appearance.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut dsu = DisjointSets::new(self.n);
        for &(u, v) in &self.edges {
            dsu.union(u, v);
        }
        let mut labels = vec![usize::MAX; self.n];
        let mut next = 0;
        for v in 0..self.n {
            let root = dsu.find(v);
            if labels[root] == usize::MAX {
                labels[root] = next;
                next += 1;
            }
            labels[v] = labels[root];
        }
        labels
    }

    /// Sum of degrees over the vertices of `s`.
    pub fn volume_of(&self, s: &VertexSet) -> u64 {
        assert_eq!(s.n(), self.n, "vertex set bound to a different graph");
        s.iter().map(|v| self.degrees[v] as u64).sum()
    }

    /// Ordered incidence count `Σ_{u∈S, v∈T} A_{uv}`.
    ///
    /// For disjoint `s`, `t` this is the plain number of edges between them;
    /// for `s = t` every internal edge is counted twice, so that
    /// `vol(S) = e(S,S) + e(S, S̄)` holds for every `S`.
    pub fn edge_count_between(&self, s: &VertexSet, t: &VertexSet) -> u64 {
        assert_eq!(s.n(), self.n, "vertex set bound to a different graph");
        assert_eq!(t.n(), self.n, "vertex set bound to a different graph");
        let mut count = 0u64;
        for &(u, v) in &self.edges {
            if s.contains(u) && t.contains(v) {
                count += 1;
            }
            if s.contains(v) && t.contains(u) {
                count += 1;
            }
        }
        count
    }

    /// Plain edge count across the cut `(s, V \ s)`.
    pub fn boundary_edges(&self, s: &VertexSet) -> u64 {
        assert_eq!(s.n(), self.n, "vertex set bound to a different graph");
        self.edges
            .iter()
            .filter(|&&(u, v)| s.contains(u) != s.contains(v))
            .count() as u64
    }
}

/// A subset of a graph's vertices `0..n`, stored as a bitset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
    len: usize,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            words: vec![0; n.div_ceil(64)],
            len: 0,
        }
    }

    pub fn full(n: usize) -> Self {
        let mut set = Self::empty(n);
        for v in 0..n {
            set.words[v / 64] |= 1 << (v % 64);
        }
        set.len = n;
        set
    }

    /// Builds a set from members, rejecting vertices outside `0..n`.
    pub fn from_members(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = Self::empty(n);
        for v in members {
            if v >= n {
                return Err(Error::Validation(format!(
                    "vertex {v} outside 0..{n}"
                )));
            }
            let mask = 1u64 << (v % 64);
            if set.words[v / 64] & mask == 0 {
                set.words[v / 64] |= mask;
                set.len += 1;
            }
        }
        Ok(set)
    }

    /// Vertices `v` with bit `v` set in `mask`; convenient for enumeration.
    pub fn from_bitmask(n: usize, mask: u64) -> Self {
        debug_assert!(n <= 64);
        let mut set = Self::empty(n);
        set.words[0] = mask & if n == 64 { u64::MAX } else { (1 << n) - 1 };
        set.len = set.words[0].count_ones() as usize;
        set
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        debug_assert!(v < self.n);
        self.words[v / 64] & (1 << (v % 64)) != 0
    }

    pub fn complement(&self) -> VertexSet {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        if self.n % 64 != 0 {
            if let Some(last) = words.last_mut() {
                *last &= (1u64 << (self.n % 64)) - 1;
            }
        }
        VertexSet {
            n: self.n,
            words,
            len: self.n - self.len,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.contains(v))
    }
}

/// An assignment of every vertex to one of `k` labeled parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    k: usize,
    labels: Vec<usize>,
}

impl Partition {
    /// A partition into exactly `k` nonempty parts.
    pub fn new(k: usize, labels: Vec<usize>) -> Result<Self> {
        let p = Self::new_allow_empty(k, labels)?;
        if let Some(j) = p.part_sizes().iter().position(|&s| s == 0) {
            return Err(Error::Validation(format!("part {j} is empty")));
        }
        Ok(p)
    }

    /// A partition whose parts may be empty, as produced by randomized
    /// rounding before discard filtering.
    pub fn new_allow_empty(k: usize, labels: Vec<usize>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter("part count must be at least 2".to_string()));
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= k) {
            return Err(Error::Validation(format!("label {bad} outside 0..{k}")));
        }
        Ok(Self { k, labels })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.k];
        for &l in &self.labels {
            sizes[l] += 1;
        }
        sizes
    }

    pub fn has_empty_part(&self) -> bool {
        self.part_sizes().contains(&0)
    }

    pub fn part(&self, j: usize) -> VertexSet {
        assert!(j < self.k);
        let members = self
            .labels
            .iter()
            .enumerate()
            .filter(|&(_, &l)| l == j)
            .map(|(v, _)| v);
        VertexSet::from_members(self.labels.len(), members).expect("labels are in range")
    }

    /// Per-part volumes in one pass.
    pub fn part_volumes(&self, g: &Graph) -> Vec<u64> {
        assert_eq!(self.labels.len(), g.n(), "partition bound to a different graph");
        let mut vols = vec![0u64; self.k];
        for (v, &l) in self.labels.iter().enumerate() {
            vols[l] += g.degree(v) as u64;
        }
        vols
    }

    /// `counts[i][j]` = ordered incidence count between parts i and j:
    /// plain edge count for `i != j`, twice the internal edges for `i == j`.
    pub fn pairwise_edge_counts(&self, g: &Graph) -> Vec<Vec<u64>> {
        assert_eq!(self.labels.len(), g.n(), "partition bound to a different graph");
        let mut counts = vec![vec![0u64; self.k]; self.k];
        for &(u, v) in g.edges() {
            let (a, b) = (self.labels[u], self.labels[v]);
            counts[a][b] += 1;
            counts[b][a] += 1;
        }
        counts
    }
}

struct DisjointSets {
    parent: Vec<usize>,
    count: usize,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            count: n,
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, u: usize, v: usize) {
        let (ru, rv) = (self.find(u), self.find(v));
        if ru != rv {
            self.parent[ru] = rv;
            self.count -= 1;
        }
    }

    fn set_count(&self) -> usize {
        self.count
    }
}
