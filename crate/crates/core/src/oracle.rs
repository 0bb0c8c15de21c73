//! Exhaustive exact-rational ground truth for desk-scale graphs.
//!
//! Everything here is deliberately brute force and exact: subsets are
//! enumerated directly, k-partitions are enumerated as restricted-growth
//! strings with exactly k blocks (so label permutations are never visited
//! twice), and every objective value is an arbitrary-precision rational.
//! These optima calibrate and certify the floating-point bound machinery.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{Graph, Partition, VertexSet};

/// Subset enumeration cap: 2^(n-1) candidates.
pub const MAX_SUBSET_VERTICES: usize = 24;
/// Partition enumeration cap: Stirling-number scale.
pub const MAX_PARTITION_VERTICES: usize = 13;
/// Exhaustive-corpus cap: 2^C(n,2) labeled graphs per size.
pub const MAX_CORPUS_VERTICES: usize = 7;

/// An exactly computed optimum together with a witness achieving it.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub optimum: BigRational,
    pub witness: Witness,
    /// Number of candidates examined by the enumeration.
    pub enumerated: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    Subset(VertexSet),
    Partition(Partition),
}

impl OracleResult {
    pub fn optimum_f64(&self) -> f64 {
        rational_to_f64(&self.optimum)
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().expect("desk-scale rationals fit in f64")
}

fn rational(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact classical Cheeger constant by enumerating the 2^(n-1) - 1 proper
/// subsets containing vertex 0 (complement symmetry).
///
/// Disconnected graphs short-circuit to 0 with one component as witness.
pub fn exact_classical_cheeger(g: &Graph) -> Result<OracleResult> {
    let n = g.n();
    if n < 2 {
        return Err(Error::Domain(
            "the classical Cheeger constant needs at least 2 vertices".to_string(),
        ));
    }
    if n > MAX_SUBSET_VERTICES {
        return Err(Error::Capacity(format!(
            "subset enumeration is capped at n = {MAX_SUBSET_VERTICES}, got {n}"
        )));
    }
    if !g.is_connected() {
        let labels = g.component_labels();
        let members = (0..n).filter(|&v| labels[v] == 0);
        return Ok(OracleResult {
            optimum: BigRational::zero(),
            witness: Witness::Subset(VertexSet::from_members(n, members)?),
            enumerated: 0,
        });
    }

    let total_vol = g.volume();
    // best = (boundary, min_vol) compared as fractions by cross
    // multiplication; both factors stay far below 2^32 at this cap.
    let mut best: Option<(u64, u64, u64)> = None;
    let full = (1u64 << (n - 1)) - 1;
    for mask in 0..full {
        let members = core::iter::once(0).chain((1..n).filter(|&v| mask >> (v - 1) & 1 == 1));
        let s = VertexSet::from_members(n, members)?;
        let boundary = g.boundary_edges(&s);
        let vol_s = g.volume_of(&s);
        let min_vol = vol_s.min(total_vol - vol_s);
        let better = match best {
            None => true,
            Some((be, bm, _)) => (boundary as u128) * (bm as u128) < (be as u128) * (min_vol as u128),
        };
        if better {
            best = Some((boundary, min_vol, mask));
        }
    }
    let (boundary, min_vol, mask) = best.expect("n >= 2 yields at least one candidate");
    let members = core::iter::once(0).chain((1..n).filter(|&v| mask >> (v - 1) & 1 == 1));
    Ok(OracleResult {
        optimum: rational(boundary, min_vol),
        witness: Witness::Subset(VertexSet::from_members(n, members)?),
        enumerated: full,
    })
}

fn check_partition_caps(g: &Graph, k: usize) -> Result<()> {
    let n = g.n();
    if k < 2 || k > n {
        return Err(Error::InvalidParameter(format!(
            "part count must satisfy 2 <= k <= n = {n}, got {k}"
        )));
    }
    if n > MAX_PARTITION_VERTICES {
        return Err(Error::Capacity(format!(
            "partition enumeration is capped at n = {MAX_PARTITION_VERTICES}, got {n}"
        )));
    }
    Ok(())
}

/// Exact minimum of the average-case objective
/// `(1/k) Σ_{{i,j}} e(S_i,S_j)/min{vol S_i, vol S_j}` over all partitions
/// into exactly k nonempty parts.
pub fn exact_h_k(g: &Graph, k: usize) -> Result<OracleResult> {
    check_partition_caps(g, k)?;
    minimize_over_partitions(g, k, h_avg_exact)
}

/// Exact minimum of the worst-case objective `max_i h(S_i)` over the same
/// partition space.
pub fn exact_h_k_worst(g: &Graph, k: usize) -> Result<OracleResult> {
    check_partition_caps(g, k)?;
    minimize_over_partitions(g, k, h_worst_exact)
}

fn minimize_over_partitions(
    g: &Graph,
    k: usize,
    objective: fn(&Graph, &[usize], usize) -> Result<BigRational>,
) -> Result<OracleResult> {
    let mut best: Option<(BigRational, Vec<usize>)> = None;
    let mut enumerated = 0u64;
    let mut failure: Option<Error> = None;
    for_each_partition(g.n(), k, &mut |labels| {
        if failure.is_some() {
            return;
        }
        enumerated += 1;
        match objective(g, labels, k) {
            Ok(value) => {
                let better = best.as_ref().is_none_or(|(b, _)| value < *b);
                if better {
                    best = Some((value, labels.to_vec()));
                }
            }
            Err(e) => failure = Some(e),
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let (optimum, labels) = best.expect("k <= n yields at least one partition");
    Ok(OracleResult {
        optimum,
        witness: Witness::Partition(Partition::new(k, labels)?),
        enumerated,
    })
}

fn part_stats(g: &Graph, labels: &[usize], k: usize) -> (Vec<u64>, Vec<u64>) {
    let mut vols = vec![0u64; k];
    for (v, &l) in labels.iter().enumerate() {
        vols[l] += g.degree(v) as u64;
    }
    // Flattened upper-triangle pair counts plus internal counts on the
    // diagonal slots (i == j stores plain internal edges).
    let mut counts = vec![0u64; k * k];
    for &(u, v) in g.edges() {
        let (a, b) = (labels[u].min(labels[v]), labels[u].max(labels[v]));
        counts[a * k + b] += 1;
    }
    (vols, counts)
}

fn pair_ratio(edges: u64, min_vol: u64) -> Result<BigRational> {
    if min_vol == 0 {
        if edges == 0 {
            Ok(BigRational::zero())
        } else {
            Err(Error::Domain(format!(
                "{edges} edges meet a zero-volume side"
            )))
        }
    } else {
        Ok(rational(edges, min_vol))
    }
}

fn h_avg_exact(g: &Graph, labels: &[usize], k: usize) -> Result<BigRational> {
    let (vols, counts) = part_stats(g, labels, k);
    let mut sum = BigRational::zero();
    for i in 0..k {
        for j in i + 1..k {
            let e = counts[i * k + j];
            if e == 0 {
                continue;
            }
            sum += pair_ratio(e, vols[i].min(vols[j]))?;
        }
    }
    Ok(sum / BigInt::from(k as u64))
}

fn h_worst_exact(g: &Graph, labels: &[usize], k: usize) -> Result<BigRational> {
    let (vols, counts) = part_stats(g, labels, k);
    let total = g.volume();
    let mut worst = BigRational::zero();
    for i in 0..k {
        let boundary: u64 = (0..k)
            .filter(|&j| j != i)
            .map(|j| counts[i.min(j) * k + i.max(j)])
            .sum();
        let r = pair_ratio(boundary, vols[i].min(total - vols[i]))?;
        if r > worst {
            worst = r;
        }
    }
    Ok(worst)
}

/// Visits every partition of `{0..n}` into exactly `k` nonempty blocks, in
/// restricted-growth-string order: `labels[0] = 0` and each label is at most
/// one above the running maximum, which makes block labelings canonical.
fn for_each_partition(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    debug_assert!(2 <= k && k <= n);
    let mut labels = vec![0usize; n];
    descend(&mut labels, 1, 0, k, f);
}

fn descend(labels: &mut Vec<usize>, i: usize, max: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    let n = labels.len();
    if i == n {
        if max == k - 1 {
            f(labels);
        }
        return;
    }
    // Prune branches that can no longer open enough new blocks.
    if (k - 1).saturating_sub(max) > n - i {
        return;
    }
    let hi = (max + 1).min(k - 1);
    for label in 0..=hi {
        labels[i] = label;
        descend(labels, i + 1, max.max(label), k, f);
    }
    labels[i] = 0;
}

/// The exact average-case k-fold constant of the complete graph K_n:
/// with `r = n mod k`,
///
/// ```text
/// (1/(k(n-1))) [ C(r,2) ⌈n/k⌉ + C(k-r,2) ⌊n/k⌋ + (C(k,2) - C(r,2) - C(k-r,2)) ⌈n/k⌉ ]
/// ```
///
/// which is the equipartition's value (r parts of size ⌈n/k⌉, the rest
/// ⌊n/k⌋). Evaluable without enumeration at any size.
pub fn complete_graph_h_k(n: usize, k: usize) -> Result<BigRational> {
    if k < 2 || k > n {
        return Err(Error::InvalidParameter(format!(
            "part count must satisfy 2 <= k <= n = {n}, got {k}"
        )));
    }
    let choose2 = |a: u64| a * a.saturating_sub(1) / 2;
    let (n64, k64) = (n as u64, k as u64);
    let r = n64 % k64;
    let big = n64.div_ceil(k64);
    let small = n64 / k64;
    let numerator =
        choose2(r) * big + choose2(k64 - r) * small + (choose2(k64) - choose2(r) - choose2(k64 - r)) * big;
    Ok(rational(numerator, k64 * (n64 - 1)))
}

/// Iterator over every connected labeled graph on exactly `n` vertices,
/// ordered by edge bitmask. Counts: 1, 1, 4, 38, 728, 26704, ... for
/// n = 1, 2, 3, ...
pub fn connected_graphs(n: usize) -> Result<ConnectedGraphs> {
    if n > MAX_CORPUS_VERTICES {
        return Err(Error::Capacity(format!(
            "exhaustive corpus is capped at n = {MAX_CORPUS_VERTICES}, got {n}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let end = 1u64 << pairs.len();
    Ok(ConnectedGraphs {
        n,
        pairs,
        mask: 0,
        end,
    })
}

/// Every connected labeled graph on 1 up to `n_max` vertices, smallest sizes
/// first, each size in bitmask order.
pub fn corpus_up_to(n_max: usize) -> Result<impl Iterator<Item = Graph>> {
    if n_max > MAX_CORPUS_VERTICES {
        return Err(Error::Capacity(format!(
            "exhaustive corpus is capped at n = {MAX_CORPUS_VERTICES}, got {n_max}"
        )));
    }
    Ok((1..=n_max).flat_map(|n| connected_graphs(n).expect("n_max already validated")))
}

pub struct ConnectedGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    mask: u64,
    end: u64,
}

impl Iterator for ConnectedGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.n == 0 {
            return None;
        }
        while self.mask < self.end {
            let mask = self.mask;
            self.mask += 1;
            if self.mask_is_connected(mask) {
                let edges = self
                    .pairs
                    .iter()
                    .enumerate()
                    .filter(|&(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &e)| e);
                return Some(Graph::new(self.n, edges).expect("pairs are valid edges"));
            }
        }
        None
    }
}

impl ConnectedGraphs {
    fn mask_is_connected(&self, mask: u64) -> bool {
        let n = self.n;
        let mut adj = [0u32; MAX_CORPUS_VERTICES];
        for (b, &(u, v)) in self.pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        let mut reached: u32 = 1;
        let mut frontier: u32 = 1;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[v];
            }
            frontier = next & !reached;
            reached |= next;
        }
        reached == (1u32 << n) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cheeger::h_k_partition;
    use crate::generate;

    fn rat(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn classical_on_small_graphs() {
        let r = exact_classical_cheeger(&generate::complete(4)).unwrap();
        assert_eq!(r.optimum, rat(2, 3));
        assert_eq!(r.enumerated, 7);
        match &r.witness {
            Witness::Subset(s) => {
                assert!(s.contains(0));
                let q = crate::cheeger::cheeger_ratio(&generate::complete(4), s).unwrap();
                assert!((q - 2.0 / 3.0).abs() < 1e-15);
            }
            _ => panic!("expected subset witness"),
        }

        let c4 = generate::cycle(4).unwrap();
        assert_eq!(exact_classical_cheeger(&c4).unwrap().optimum, rat(1, 2));

        // Path on 3 vertices: every proper cut evaluates to 1.
        assert_eq!(exact_classical_cheeger(&generate::path(3)).unwrap().optimum, rat(1, 1));
    }

    #[test]
    fn classical_on_disconnected_graph() {
        let g = generate::disjoint_union(&[generate::complete(2), generate::complete(2)]);
        let r = exact_classical_cheeger(&g).unwrap();
        assert!(r.optimum.is_zero());
        match r.witness {
            Witness::Subset(s) => {
                assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 1]);
            }
            _ => panic!("expected subset witness"),
        }
    }

    #[test]
    fn classical_capacity_and_domain_errors() {
        assert!(matches!(
            exact_classical_cheeger(&generate::path(25)),
            Err(Error::Capacity(_))
        ));
        assert!(matches!(
            exact_classical_cheeger(&Graph::new(1, []).unwrap()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn h_k_on_k4_and_p3() {
        let r = exact_h_k(&generate::complete(4), 2).unwrap();
        assert_eq!(r.optimum, rat(1, 3));
        assert_eq!(r.enumerated, 7); // S(4,2)

        let r = exact_h_k(&generate::path(3), 2).unwrap();
        assert_eq!(r.optimum, rat(1, 2));
        assert_eq!(r.enumerated, 3); // S(3,2)
    }

    #[test]
    fn h_k_witness_is_consistent_with_float_path() {
        let g = generate::gnp(8, 0.5, 2).unwrap();
        for k in [2usize, 3] {
            let r = exact_h_k(&g, k).unwrap();
            let p = match &r.witness {
                Witness::Partition(p) => p,
                _ => panic!("expected partition witness"),
            };
            let q = h_k_partition(&g, p).unwrap();
            let exact = r.optimum_f64();
            let rel = if exact == 0.0 {
                q.h_avg.abs()
            } else {
                ((q.h_avg - exact) / exact).abs()
            };
            assert!(rel <= 1e-12, "k={k}: float {} vs exact {exact}", q.h_avg);
        }
    }

    #[test]
    fn h_k_matches_complete_graph_formula() {
        let r = exact_h_k(&generate::complete(9), 3).unwrap();
        assert_eq!(r.optimum, complete_graph_h_k(9, 3).unwrap());
        assert_eq!(r.optimum, rat(3, 8));
    }

    #[test]
    fn h_k_worst_examples() {
        let r = exact_h_k_worst(&generate::complete(4), 2).unwrap();
        assert_eq!(r.optimum, rat(2, 3));

        let two_k2 = generate::disjoint_union(&[generate::complete(2), generate::complete(2)]);
        assert!(exact_h_k_worst(&two_k2, 2).unwrap().optimum.is_zero());

        let r = exact_h_k_worst(&generate::cycle(6).unwrap(), 2).unwrap();
        assert_eq!(r.optimum, rat(1, 3));
        assert_eq!(r.enumerated, 31); // S(6,2)
    }

    #[test]
    fn partition_caps_and_parameter_errors() {
        assert!(matches!(
            exact_h_k(&generate::path(20), 3),
            Err(Error::Capacity(_))
        ));
        assert!(matches!(
            exact_h_k(&generate::path(3), 4),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            exact_h_k(&generate::path(3), 1),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn corpus_counts() {
        assert_eq!(connected_graphs(1).unwrap().count(), 1);
        assert_eq!(connected_graphs(2).unwrap().count(), 1);
        assert_eq!(connected_graphs(3).unwrap().count(), 4);
        assert_eq!(connected_graphs(4).unwrap().count(), 38);
        assert!(matches!(connected_graphs(8), Err(Error::Capacity(_))));
        assert_eq!(corpus_up_to(4).unwrap().count(), 1 + 1 + 4 + 38);
    }

    #[test]
    fn corpus_graphs_are_connected_and_distinct() {
        let graphs: Vec<Graph> = connected_graphs(4).unwrap().collect();
        for g in &graphs {
            assert!(g.is_connected());
            assert_eq!(g.n(), 4);
        }
        for i in 0..graphs.len() {
            for j in i + 1..graphs.len() {
                assert_ne!(graphs[i], graphs[j]);
            }
        }
    }

    #[test]
    fn complete_formula_spot_values() {
        assert_eq!(complete_graph_h_k(4, 2).unwrap(), rat(1, 3));
        assert_eq!(complete_graph_h_k(5, 2).unwrap(), rat(3, 8));
        // n = 200: within 3 percent of 1/2 - 1/(2k).
        for k in 2..=4usize {
            let v = rational_to_f64(&complete_graph_h_k(200, k).unwrap());
            let limit = 0.5 - 0.5 / k as f64;
            assert!((v - limit).abs() <= 0.03 * limit, "k={k}: {v} vs {limit}");
        }
    }
}
