//! Cheeger ratios, k-fold partition quality, and the linear eigenvalue
//! bounds.
//!
//! Two aggregate conventions are computed side by side because they genuinely
//! differ:
//!
//! - `lambda_lower = (1/k) Σ_{i=0..k-1} (1 - λ_i)` includes the trivial
//!   eigenvalue. The lower bound `1/2 - lambda_lower/2` is the one that is
//!   actually valid: it equals `(1/(2k)) Σ_{i=1..k-1} λ_i` and is certified
//!   against the exhaustive oracle.
//! - `lambda_upper = (1/k) Σ_{i=1..k-1} (1 - λ_i)` skips the trivial
//!   eigenvalue and is the aggregate the upper bounds use. Plugging it into
//!   the lower bound instead produces a counterexample already on K_4 with
//!   k = 2 (claimed 7/12 versus the true 1/3); `kcheeger verify` can
//!   reproduce that discrepancy on demand.
//!
//! Similarly both ∞-norm aggregates are reported: `alpha_max`, the largest
//! harmonic-eigenvector sup norm (used when `λ_{k-1} <= 1`), and
//! `alpha_sum`, the sum of sup norms (valid unconditionally).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;

use crate::error::{Error, Result};
use crate::fmath;
use crate::graph::{Graph, Partition, VertexSet};
use crate::spectral::Spectrum;

/// Slack accepted when testing the `λ_{k-1} <= 1` hypothesis.
pub const HYPOTHESIS_TOL: f64 = 1e-9;

/// `h(S) = e(S, S̄) / min{vol S, vol S̄}`.
///
/// A zero-volume side forces a zero edge count; that ratio is defined as 0.
/// Empty and full sets, and cuts where both sides have zero volume, are
/// domain errors.
pub fn cheeger_ratio(g: &Graph, s: &VertexSet) -> Result<f64> {
    if s.is_empty() || s.len() == g.n() {
        return Err(Error::Domain(
            "Cheeger ratio needs a nonempty proper subset".to_string(),
        ));
    }
    let complement = s.complement();
    let vol_s = g.volume_of(s);
    let vol_c = g.volume_of(&complement);
    if vol_s == 0 && vol_c == 0 {
        return Err(Error::Domain(
            "both sides of the cut have zero volume".to_string(),
        ));
    }
    let boundary = g.edge_count_between(s, &complement);
    ratio(boundary, vol_s.min(vol_c))
}

fn ratio(edges: u64, min_vol: u64) -> Result<f64> {
    if min_vol == 0 {
        if edges == 0 {
            Ok(0.0)
        } else {
            Err(Error::Domain(format!(
                "{edges} edges meet a zero-volume side"
            )))
        }
    } else {
        Ok(edges as f64 / min_vol as f64)
    }
}

/// Quality of one concrete k-partition: the average-case value
/// `h_avg = (1/k) Σ_{{i,j}} e(S_i,S_j)/min{vol S_i, vol S_j}` over unordered
/// part pairs, the worst single-part ratio, and the per-pair breakdown.
#[derive(Debug, Clone, PartialEq)]
pub struct PartitionQuality {
    pub h_avg: f64,
    pub h_worst: f64,
    /// Keyed by unordered part pair (i, j) with i < j.
    pub per_pair_ratios: BTreeMap<(usize, usize), f64>,
}

/// Evaluates a partition. Zero-volume parts (all-isolated-vertex parts)
/// contribute ratio 0 to every pair; a pair with zero minimum volume but a
/// positive edge count cannot occur and is guarded as a domain error.
pub fn h_k_partition(g: &Graph, p: &Partition) -> Result<PartitionQuality> {
    let k = p.k();
    let vols = p.part_volumes(g);
    let counts = p.pairwise_edge_counts(g);
    let total_vol = g.volume();

    let mut per_pair_ratios = BTreeMap::new();
    let mut sum = 0.0;
    for i in 0..k {
        for j in i + 1..k {
            let r = ratio(counts[i][j], vols[i].min(vols[j]))?;
            per_pair_ratios.insert((i, j), r);
            sum += r;
        }
    }
    let h_avg = sum / k as f64;

    let mut h_worst = 0.0f64;
    for i in 0..k {
        let boundary: u64 = (0..k).filter(|&j| j != i).map(|j| counts[i][j]).sum();
        let r = ratio(boundary, vols[i].min(total_vol - vols[i]))?;
        h_worst = h_worst.max(r);
    }

    Ok(PartitionQuality {
        h_avg,
        h_worst,
        per_pair_ratios,
    })
}

/// Eigenvalue aggregates and the linear lower/upper bound expressions for a
/// given part count `k`.
///
/// Upper bounds are raw finite-size expressions; the guarantees they encode
/// are asymptotic only, hence the permanent `asymptotic_only` flag.
#[derive(Debug, Clone, PartialEq)]
pub struct CheegerBoundsReport {
    pub k: usize,
    /// `(1/k) Σ_{i=0..k-1} (1 - λ_i)` — includes the trivial eigenvalue.
    pub lambda_lower: f64,
    /// `(1/k) Σ_{i=1..k-1} (1 - λ_i)` — excludes it.
    pub lambda_upper: f64,
    /// `max_{1<=i<=k-1} ‖x_i‖_∞`.
    pub alpha_max: f64,
    /// `Σ_{1<=i<=k-1} ‖x_i‖_∞`.
    pub alpha_sum: f64,
    /// `1/2 - lambda_lower/2`; certified against the oracle.
    pub lower_bound: f64,
    /// `1/2 - 1/(4k) - (k-1) lambda_upper / (4 vol(G) alpha_max²)`;
    /// meaningful when `λ_{k-1} <= 1`.
    pub upper_bound_main: f64,
    /// Same expression with `alpha_sum`; valid without the eigenvalue
    /// hypothesis.
    pub upper_bound_nonpos: f64,
    /// Whether `λ_{k-1} <= 1` holds (within [`HYPOTHESIS_TOL`]).
    pub thm_main_hypothesis: bool,
    /// The graph has more than one connected component, so the low
    /// eigenvalues span several components.
    pub multi_component: bool,
    /// Upper bounds carry only an asymptotic guarantee; always true.
    pub asymptotic_only: bool,
}

/// Builds the bounds report from the first `k` eigenpairs of `spec`.
pub fn bounds_report(spec: &Spectrum, g: &Graph, k: usize) -> Result<CheegerBoundsReport> {
    if k < 2 || k > g.n() {
        return Err(Error::InvalidParameter(format!(
            "part count must satisfy 2 <= k <= n = {}, got {k}",
            g.n()
        )));
    }
    if spec.count() < k {
        return Err(Error::InvalidParameter(format!(
            "spectrum holds {} eigenpairs, need {k}",
            spec.count()
        )));
    }
    let eigenvalues = &spec.eigenvalues()[..k];
    let lambda_lower = eigenvalues.iter().map(|l| 1.0 - l).sum::<f64>() / k as f64;
    let lambda_upper = eigenvalues[1..].iter().map(|l| 1.0 - l).sum::<f64>() / k as f64;

    let mut alpha_max = 0.0f64;
    let mut alpha_sum = 0.0f64;
    for i in 1..k {
        let norm = spec.harmonic_inf_norm(i);
        alpha_max = alpha_max.max(norm);
        alpha_sum += norm;
    }

    let vol = g.volume() as f64;
    let upper = |alpha: f64| {
        0.5 - 1.0 / (4.0 * k as f64) - (k as f64 - 1.0) * lambda_upper / (4.0 * vol * alpha * alpha)
    };

    Ok(CheegerBoundsReport {
        k,
        lambda_lower,
        lambda_upper,
        alpha_max,
        alpha_sum,
        lower_bound: 0.5 - lambda_lower / 2.0,
        upper_bound_main: upper(alpha_max),
        upper_bound_nonpos: upper(alpha_sum),
        thm_main_hypothesis: eigenvalues[k - 1] <= 1.0 + HYPOTHESIS_TOL,
        multi_component: g.component_count() > 1,
        asymptotic_only: true,
    })
}

/// Outcome of checking `λ_1/2 <= h_G <= sqrt(2 λ_1)` for an exactly known
/// classical Cheeger constant.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalCheegerCheck {
    pub lambda_1: f64,
    pub h: f64,
    pub lower: f64,
    pub upper: f64,
    pub pass: bool,
}

/// Verifies the two-sided classical inequality with 1e-9 slack.
pub fn classical_cheeger_check(spec: &Spectrum, h: f64) -> ClassicalCheegerCheck {
    let lambda_1 = spec.eigenvalues()[1];
    let lower = lambda_1 / 2.0;
    let upper = fmath::sqrt(2.0 * lambda_1.max(0.0));
    ClassicalCheegerCheck {
        lambda_1,
        h,
        lower,
        upper,
        pass: lower - 1e-9 <= h && h <= upper + 1e-9,
    }
}
