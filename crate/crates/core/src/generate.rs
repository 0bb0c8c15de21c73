//! Deterministic graph generators.
//!
//! Random families (`gnp`, `planted_partition`) take an explicit seed and
//! draw from [`CounterRng`], one counter per vertex pair, so the generated
//! graph is a pure function of `(params, seed)` on every platform.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Graph, Partition};
use crate::rng::CounterRng;

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, edges).expect("complete graph edges are valid")
}

pub fn path(n: usize) -> Graph {
    let edges = (1..n).map(|v| (v - 1, v));
    Graph::new(n, edges).expect("path edges are valid")
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "cycle needs at least 3 vertices, got {n}"
        )));
    }
    let edges = (0..n).map(|v| (v, (v + 1) % n));
    Graph::new(n, edges)
}

/// `rows x cols` lattice with 4-neighbor adjacency.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::new();
    let idx = |r: usize, c: usize| r * cols + c;
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((idx(r, c), idx(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((idx(r, c), idx(r + 1, c)));
            }
        }
    }
    Graph::new(rows * cols, edges).expect("grid edges are valid")
}

/// Disjoint union with vertex labels shifted component by component.
pub fn disjoint_union(parts: &[Graph]) -> Graph {
    let mut edges = Vec::new();
    let mut offset = 0;
    for g in parts {
        edges.extend(g.edges().iter().map(|&(u, v)| (u + offset, v + offset)));
        offset += g.n();
    }
    Graph::new(offset, edges).expect("shifted edges are valid")
}

/// Erdős–Rényi G(n, p): each of the C(n,2) pairs is an edge independently
/// with probability `p`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "edge probability must lie in [0, 1], got {p}"
        )));
    }
    let rng = CounterRng::new(seed);
    let mut edges = Vec::new();
    let mut ctr = 0u64;
    for u in 0..n {
        for v in u + 1..n {
            if rng.f64_at(ctr) < p {
                edges.push((u, v));
            }
            ctr += 1;
        }
    }
    Graph::new(n, edges)
}

/// Planted-partition model: `k` near-equal blocks, intra-block edge
/// probability `p_in`, inter-block probability `p_out < p_in`.
pub fn planted_partition(n: usize, k: usize, p_in: f64, p_out: f64, seed: u64) -> Result<Graph> {
    for (name, p) in [("p_in", p_in), ("p_out", p_out)] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!(
                "{name} must lie in [0, 1], got {p}"
            )));
        }
    }
    if p_in <= p_out {
        return Err(Error::InvalidParameter(format!(
            "planted partition needs p_in > p_out, got p_in={p_in}, p_out={p_out}"
        )));
    }
    if k < 2 || k > n {
        return Err(Error::InvalidParameter(format!(
            "block count must satisfy 2 <= k <= n, got k={k}, n={n}"
        )));
    }
    let blocks = planted_blocks(n, k)?;
    let labels = blocks.labels();
    let rng = CounterRng::new(seed);
    let mut edges = Vec::new();
    let mut ctr = 0u64;
    for u in 0..n {
        for v in u + 1..n {
            let p = if labels[u] == labels[v] { p_in } else { p_out };
            if rng.f64_at(ctr) < p {
                edges.push((u, v));
            }
            ctr += 1;
        }
    }
    Graph::new(n, edges)
}

/// The ground-truth block assignment used by [`planted_partition`]:
/// the first `n mod k` blocks have ⌈n/k⌉ vertices, the rest ⌊n/k⌋,
/// assigned contiguously.
pub fn planted_blocks(n: usize, k: usize) -> Result<Partition> {
    if k < 2 || k > n {
        return Err(Error::InvalidParameter(format!(
            "block count must satisfy 2 <= k <= n, got k={k}, n={n}"
        )));
    }
    let big = n.div_ceil(k);
    let small = n / k;
    let r = n % k;
    let mut labels = Vec::with_capacity(n);
    for b in 0..k {
        let size = if b < r { big } else { small };
        labels.extend(core::iter::repeat(b).take(size));
    }
    Partition::new(k, labels)
}
