//! Randomized spectral rounding.
//!
//! Each vertex `v` is assigned independently to one of `k` parts: part `j`
//! (for `j < k-1`) with probability
//!
//! ```text
//! p_v(j) = (1 - 2δ)/(2(k-1)) + x_{j+1}(v) / (2(k-1) D_{j+1})
//! ```
//!
//! and the residual part `k-1` otherwise. `x_1 .. x_{k-1}` are the nontrivial
//! harmonic eigenvectors and `D_i` is either `‖x_i‖_∞` (the `Main` variant)
//! or the summed norm `α = Σ_i ‖x_i‖_∞` (the `Nonpos` variant, which stays
//! meaningful when eigenvalues exceed 1).
//!
//! The assignment rule can push an entry slightly negative (down to
//! `-δ/(k-1)`); such entries are clamped to 0 and the lost mass flows into
//! the residual part. Clamping is reported via `clamped_count`, and the
//! closed-form expectation identities are only claimed for clamp-free
//! tables.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use crate::cheeger::{h_k_partition, PartitionQuality};
use crate::error::{Error, Result};
use crate::fmath;
use crate::graph::{Graph, Partition};
use crate::rng::CounterRng;
use crate::spectral::Spectrum;

/// Entries at least this negative count as clamped; tinier negatives are
/// floating-point noise from `x(v) = -‖x‖_∞` at `δ = 0` and are snapped to
/// zero silently.
const CLAMP_SNAP: f64 = 1e-12;

/// Which ∞-norm scale the assignment rule divides by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Per-eigenvector norm `‖x_j‖_∞`; intended for `λ_{k-1} <= 1`.
    Main,
    /// Summed norm `α = Σ_i ‖x_i‖_∞`; valid without that hypothesis.
    Nonpos,
}

/// The default variant for a spectrum: `Main` when `λ_{k-1} <= 1` (within
/// 1e-9), else `Nonpos`, mirroring the two theorems' hypotheses.
pub fn select_variant(spec: &Spectrum, k: usize) -> Variant {
    if spec.eigenvalues()[k - 1] <= 1.0 + 1e-9 {
        Variant::Main
    } else {
        Variant::Nonpos
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundingConfig {
    pub k: usize,
    pub delta: f64,
    pub variant: Variant,
    pub trials: u64,
    pub seed: u64,
}

impl RoundingConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::InvalidParameter(format!(
                "part count must be at least 2, got {}",
                self.k
            )));
        }
        if !(0.0..0.5).contains(&self.delta) {
            return Err(Error::InvalidParameter(format!(
                "delta must lie in [0, 1/2), got {}",
                self.delta
            )));
        }
        if self.trials == 0 {
            return Err(Error::InvalidParameter(
                "trial count must be positive".to_string(),
            ));
        }
        Ok(())
    }

    /// Default schedule `δ = n^{-1/3}`, capped at 0.45 so tiny graphs stay
    /// inside the valid range `δ < 1/2`.
    pub fn default_delta(n: usize) -> f64 {
        if n == 0 {
            return 0.45;
        }
        (1.0 / fmath::cbrt(n as f64)).min(0.45)
    }
}

/// Per-vertex assignment probabilities for one rounding configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityTable {
    n: usize,
    k: usize,
    /// Row-major `n x k`; each row sums to 1.
    probs: Vec<f64>,
    clamped_count: usize,
}

impl ProbabilityTable {
    /// A table from explicit rows; rows must be length-`k` probability
    /// vectors. Useful for driving the samplers directly in experiments.
    pub fn from_rows(k: usize, rows: Vec<Vec<f64>>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(
                "part count must be at least 2".to_string(),
            ));
        }
        let n = rows.len();
        let mut probs = Vec::with_capacity(n * k);
        for (v, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::Validation(format!(
                    "row {v} has {} entries, expected {k}",
                    row.len()
                )));
            }
            let sum: f64 = row.iter().sum();
            if fmath::abs(sum - 1.0) > 1e-12 {
                return Err(Error::Validation(format!(
                    "row {v} sums to {sum}, expected 1"
                )));
            }
            if row.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
                return Err(Error::Validation(format!(
                    "row {v} has an entry outside [0, 1]"
                )));
            }
            probs.extend_from_slice(row);
        }
        Ok(Self {
            n,
            k,
            probs,
            clamped_count: 0,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[f64] {
        &self.probs[v * self.k..(v + 1) * self.k]
    }

    /// Number of `(vertex, part)` entries the rule made negative.
    pub fn clamped_count(&self) -> usize {
        self.clamped_count
    }
}

/// The per-part denominators `2(k-1) D_{j+1}` of the assignment rule.
fn rule_scales(spec: &Spectrum, k: usize, variant: Variant) -> Result<Vec<f64>> {
    let norms: Vec<f64> = (1..k).map(|i| spec.harmonic_inf_norm(i)).collect();
    if let Some(i) = norms.iter().position(|&x| x == 0.0) {
        return Err(Error::Validation(format!(
            "harmonic eigenvector {} has zero sup norm; the assignment rule is degenerate",
            i + 1
        )));
    }
    let alpha_sum: f64 = norms.iter().sum();
    Ok(norms
        .iter()
        .map(|&d| {
            let scale = match variant {
                Variant::Main => d,
                Variant::Nonpos => alpha_sum,
            };
            2.0 * (k as f64 - 1.0) * scale
        })
        .collect())
}

/// Builds the assignment-probability table for `cfg` from the first `k`
/// eigenpairs of `spec`.
pub fn probability_table(spec: &Spectrum, g: &Graph, cfg: &RoundingConfig) -> Result<ProbabilityTable> {
    cfg.validate()?;
    let (n, k) = (g.n(), cfg.k);
    if spec.n() != n {
        return Err(Error::InvalidParameter(
            "spectrum was computed for a different graph".to_string(),
        ));
    }
    if spec.count() < k {
        return Err(Error::InvalidParameter(format!(
            "spectrum holds {} eigenpairs, need {k}",
            spec.count()
        )));
    }
    let scales = rule_scales(spec, k, cfg.variant)?;
    let base = (1.0 - 2.0 * cfg.delta) / (2.0 * (k as f64 - 1.0));

    let mut probs = vec![0.0; n * k];
    let mut clamped_count = 0;
    for v in 0..n {
        let row = &mut probs[v * k..(v + 1) * k];
        let mut sum = 0.0;
        for j in 0..k - 1 {
            let raw = base + spec.harmonic(j + 1)[v] / scales[j];
            let p = if raw < 0.0 {
                if raw < -CLAMP_SNAP {
                    clamped_count += 1;
                }
                0.0
            } else {
                raw
            };
            row[j] = p;
            sum += p;
        }
        debug_assert!(sum <= 1.0 + 1e-9, "row mass {sum} exceeds 1");
        row[k - 1] = (1.0 - sum).max(0.0);
    }
    Ok(ProbabilityTable {
        n,
        k,
        probs,
        clamped_count,
    })
}

/// Samples one partition: vertex `v` consumes the v-th counter of the seeded
/// stream, so the result is a pure function of `(table, seed)`.
pub fn sample_partition(table: &ProbabilityTable, seed: u64) -> Partition {
    let rng = CounterRng::new(seed);
    let k = table.k;
    let labels = (0..table.n)
        .map(|v| {
            let u = rng.f64_at(v as u64);
            let row = table.row(v);
            let mut cum = 0.0;
            for (j, &p) in row[..k - 1].iter().enumerate() {
                cum += p;
                if u < cum {
                    return j;
                }
            }
            k - 1
        })
        .collect();
    Partition::new_allow_empty(k, labels).expect("sampled labels are in range")
}

/// The common expected volume `μ = (1 - 2δ) vol(G) / (2(k-1))` of the first
/// `k-1` parts (exact when no entry was clamped).
pub fn mu_value(delta: f64, k: usize, volume: u64) -> f64 {
    (1.0 - 2.0 * delta) * volume as f64 / (2.0 * (k as f64 - 1.0))
}

/// Exact per-part expected volumes `Σ_v p_v(j) d_v`.
pub fn expected_volumes(table: &ProbabilityTable, g: &Graph) -> Vec<f64> {
    assert_eq!(table.n, g.n(), "table built for a different graph");
    let mut vols = vec![0.0; table.k];
    for v in 0..table.n {
        let d = g.degree(v) as f64;
        for (j, &p) in table.row(v).iter().enumerate() {
            vols[j] += p * d;
        }
    }
    vols
}

/// Exact per-part expected internal (ordered-incidence) edge counts
/// `m_j^T A m_j` where `m_j(v) = p_v(j)`.
///
/// The adjacency matrix has zero diagonal and the vertex assignments are
/// independent, so this expectation is exact whether or not entries were
/// clamped.
pub fn expected_internal_edges(table: &ProbabilityTable, g: &Graph) -> Vec<f64> {
    assert_eq!(table.n, g.n(), "table built for a different graph");
    let mut internal = vec![0.0; table.k];
    for &(u, v) in g.edges() {
        let (ru, rv) = (table.row(u), table.row(v));
        for j in 0..table.k {
            internal[j] += 2.0 * ru[j] * rv[j];
        }
    }
    internal
}

/// Closed-form expected internal edges for parts `j < k-1`:
///
/// ```text
/// ((1-2δ)/(2(k-1)))² vol(G) + (1 - λ_{j+1}) / (2(k-1) D_{j+1})²
/// ```
///
/// This matches [`expected_internal_edges`] to within rounding whenever the
/// table is clamp-free. The second denominator is the assignment rule's own
/// scale; for `k = 2` it reduces to the familiar `4 ‖x_1‖_∞²`.
pub fn closed_form_expected_internal(
    spec: &Spectrum,
    g: &Graph,
    cfg: &RoundingConfig,
) -> Result<Vec<f64>> {
    cfg.validate()?;
    if spec.count() < cfg.k {
        return Err(Error::InvalidParameter(format!(
            "spectrum holds {} eigenpairs, need {}",
            spec.count(),
            cfg.k
        )));
    }
    let scales = rule_scales(spec, cfg.k, cfg.variant)?;
    let base = (1.0 - 2.0 * cfg.delta) / (2.0 * (cfg.k as f64 - 1.0));
    let vol = g.volume() as f64;
    Ok((0..cfg.k - 1)
        .map(|j| {
            let lambda = spec.eigenvalues()[j + 1];
            base * base * vol + (1.0 - lambda) / (scales[j] * scales[j])
        })
        .collect())
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloStat {
    pub mean: f64,
    pub std_error: f64,
}

fn stats_from_sums(sum: f64, sum_sq: f64, trials: u64) -> MonteCarloStat {
    let t = trials as f64;
    let mean = sum / t;
    let var = (sum_sq / t - mean * mean).max(0.0);
    MonteCarloStat {
        mean,
        std_error: fmath::sqrt(var / t),
    }
}

/// Monte Carlo estimates of per-part volumes and internal edge counts over
/// `trials` sampled partitions. Trial `t` uses seed `out(seed, t)`.
pub fn monte_carlo_expectations(
    table: &ProbabilityTable,
    g: &Graph,
    trials: u64,
    seed: u64,
) -> (Vec<MonteCarloStat>, Vec<MonteCarloStat>) {
    assert_eq!(table.n, g.n(), "table built for a different graph");
    let k = table.k;
    let root = CounterRng::new(seed);
    let mut vol_sum = vec![0.0; k];
    let mut vol_sq = vec![0.0; k];
    let mut int_sum = vec![0.0; k];
    let mut int_sq = vec![0.0; k];
    for t in 0..trials {
        let p = sample_partition(table, root.u64_at(t));
        let labels = p.labels();
        let mut vols = vec![0u64; k];
        for (v, &l) in labels.iter().enumerate() {
            vols[l] += g.degree(v) as u64;
        }
        let mut internal = vec![0u64; k];
        for &(u, v) in g.edges() {
            if labels[u] == labels[v] {
                internal[labels[u]] += 2;
            }
        }
        for j in 0..k {
            vol_sum[j] += vols[j] as f64;
            vol_sq[j] += (vols[j] * vols[j]) as f64;
            int_sum[j] += internal[j] as f64;
            int_sq[j] += (internal[j] * internal[j]) as f64;
        }
    }
    let vol_stats = (0..k)
        .map(|j| stats_from_sums(vol_sum[j], vol_sq[j], trials))
        .collect();
    let int_stats = (0..k)
        .map(|j| stats_from_sums(int_sum[j], int_sq[j], trials))
        .collect();
    (vol_stats, int_stats)
}

/// Exact and sampled expectations for one configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectationReport {
    pub mu: f64,
    pub clamped_count: usize,
    pub expected_volumes: Vec<f64>,
    pub exact_expected_internal: Vec<f64>,
    /// One entry per part `j < k-1`; exact only when `clamped_count == 0`.
    pub closed_form_expected_internal: Vec<f64>,
    pub closed_form_valid: bool,
    pub monte_carlo_trials: u64,
    pub monte_carlo_vol: Vec<MonteCarloStat>,
    pub monte_carlo_internal: Vec<MonteCarloStat>,
}

/// Assembles the full expectation report; `mc_trials = 0` skips sampling.
pub fn expectation_report(
    spec: &Spectrum,
    g: &Graph,
    cfg: &RoundingConfig,
    mc_trials: u64,
) -> Result<ExpectationReport> {
    let table = probability_table(spec, g, cfg)?;
    let (monte_carlo_vol, monte_carlo_internal) = if mc_trials > 0 {
        monte_carlo_expectations(&table, g, mc_trials, cfg.seed)
    } else {
        (Vec::new(), Vec::new())
    };
    Ok(ExpectationReport {
        mu: mu_value(cfg.delta, cfg.k, g.volume()),
        clamped_count: table.clamped_count(),
        expected_volumes: expected_volumes(&table, g),
        exact_expected_internal: expected_internal_edges(&table, g),
        closed_form_expected_internal: closed_form_expected_internal(spec, g, cfg)?,
        closed_form_valid: table.clamped_count() == 0,
        monte_carlo_trials: mc_trials,
        monte_carlo_vol,
        monte_carlo_internal,
    })
}

/// Per-part outcome of the volume concentration experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct PartConcentration {
    pub part: usize,
    pub expected_volume: f64,
    pub violations: u64,
    pub frequency: f64,
    pub std_error: f64,
    pub pass: bool,
}

/// Empirical volume deviations versus the Chernoff ceiling.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationReport {
    pub epsilon: f64,
    pub trials: u64,
    pub mu: f64,
    pub max_degree: usize,
    /// `2 exp(-ε² μ / (3Δ))`; can exceed 1, in which case the check is
    /// vacuous.
    pub ceiling: f64,
    pub per_part: Vec<PartConcentration>,
    pub pass: bool,
}

/// Runs `trials` samples and compares, for every part `j < k-1` with
/// positive expected volume, the frequency of
/// `|vol(S_j) - E[vol(S_j)]| > ε E[vol(S_j)]` against the Chernoff ceiling
/// plus three binomial standard errors.
pub fn concentration_diagnostic(
    table: &ProbabilityTable,
    g: &Graph,
    delta: f64,
    epsilon: f64,
    trials: u64,
    seed: u64,
) -> Result<ConcentrationReport> {
    if epsilon <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter(
            "trial count must be positive".to_string(),
        ));
    }
    assert_eq!(table.n, g.n(), "table built for a different graph");
    let k = table.k;
    let mu = mu_value(delta, k, g.volume());
    let max_degree = g.max_degree();
    let ceiling = if mu <= 0.0 || max_degree == 0 {
        2.0
    } else {
        2.0 * fmath::exp(-epsilon * epsilon * mu / (3.0 * max_degree as f64))
    };

    let expected = expected_volumes(table, g);
    let mut violations = vec![0u64; k];
    let root = CounterRng::new(seed);
    for t in 0..trials {
        let p = sample_partition(table, root.u64_at(t));
        let mut vols = vec![0u64; k];
        for (v, &l) in p.labels().iter().enumerate() {
            vols[l] += g.degree(v) as u64;
        }
        for j in 0..k - 1 {
            if expected[j] > 0.0
                && fmath::abs(vols[j] as f64 - expected[j]) > epsilon * expected[j]
            {
                violations[j] += 1;
            }
        }
    }

    let per_part: Vec<PartConcentration> = (0..k - 1)
        .filter(|&j| expected[j] > 0.0)
        .map(|j| {
            let frequency = violations[j] as f64 / trials as f64;
            let std_error = fmath::sqrt(frequency * (1.0 - frequency) / trials as f64);
            PartConcentration {
                part: j,
                expected_volume: expected[j],
                violations: violations[j],
                frequency,
                std_error,
                pass: frequency <= ceiling + 3.0 * std_error,
            }
        })
        .collect();
    let pass = per_part.iter().all(|p| p.pass);
    Ok(ConcentrationReport {
        epsilon,
        trials,
        mu,
        max_degree,
        ceiling,
        per_part,
        pass,
    })
}

/// Result of a best-of-many-samples search.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub partition: Partition,
    pub quality: PartitionQuality,
    /// Trial index (hence seed index) that produced the winner.
    pub best_trial: u64,
    pub trials: u64,
    pub discarded: u64,
    pub clamped_count: usize,
}

/// Samples `cfg.trials` partitions and returns the one minimizing `h_avg`,
/// ties going to the lowest trial index. Samples with an empty part — or,
/// on graphs with edges, a zero-volume part — are discarded. Fails if every
/// sample is discarded.
pub fn best_partition_search(
    spec: &Spectrum,
    g: &Graph,
    cfg: &RoundingConfig,
) -> Result<SearchOutcome> {
    let table = probability_table(spec, g, cfg)?;
    let root = CounterRng::new(cfg.seed);
    let mut best: Option<(u64, Partition, PartitionQuality)> = None;
    let mut discarded = 0u64;
    for t in 0..cfg.trials {
        let p = sample_partition(&table, root.u64_at(t));
        let keep = !p.has_empty_part()
            && (g.volume() == 0 || p.part_volumes(g).iter().all(|&v| v > 0));
        if !keep {
            discarded += 1;
            continue;
        }
        let quality = h_k_partition(g, &p)?;
        let better = match &best {
            None => true,
            Some((_, _, q)) => quality.h_avg < q.h_avg,
        };
        if better {
            best = Some((t, p, quality));
        }
    }
    match best {
        Some((best_trial, partition, quality)) => Ok(SearchOutcome {
            partition,
            quality,
            best_trial,
            trials: cfg.trials,
            discarded,
            clamped_count: table.clamped_count(),
        }),
        None => Err(Error::SearchFailed {
            trials: cfg.trials,
            discarded,
        }),
    }
}
