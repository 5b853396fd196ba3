use super::{
    check_qubits, grk::GrkSchedule, layout, optimal_iterations, optimal_iterations_real,
    GroverError, Result,
};
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Algorithm {
    /// Standard Grover search.
    Gs,
    /// Grover–Radhakrishnan partial (block) search.
    Grk,
    /// Depth-first layered search, MSB to LSB.
    Dfgs,
    /// Bi-directional layered search.
    Bdgs,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Gs,
        Algorithm::Grk,
        Algorithm::Dfgs,
        Algorithm::Bdgs,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::Gs => "GS",
            Algorithm::Grk => "GRK",
            Algorithm::Dfgs => "DFGS",
            Algorithm::Bdgs => "BDGS",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = GroverError;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| GroverError::UnknownAlgorithm(s.to_string()))
    }
}

/// Closed-form cost of one search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictedCost {
    pub algorithm: Algorithm,
    pub num_qubits: u32,
    pub branching: u64,
    /// Iteration count before rounding (GS, DFGS) or the analytic query
    /// count (GRK, BDGS).
    pub iterations: f64,
    /// Oracle-call figure to compare counters against: the exact expected
    /// count for GS and DFGS, the analytic bound for GRK (plus cleanup) and
    /// BDGS.
    pub oracle_calls: f64,
    /// Wall-clock rounds, counting concurrent segment searches once.
    pub layers: u64,
}

fn check_branching(b: u64) -> Result<()> {
    if b < 2 || !b.is_power_of_two() {
        return Err(GroverError::BadBranching(b));
    }
    Ok(())
}

/// GRK query count `π/4 · √N · √((b − 1)/b)`.
pub fn grk_query_count(n: u64, b: u64) -> Result<f64> {
    if b < 2 {
        return Err(GroverError::BadBranching(b));
    }
    if !n.is_multiple_of(b) {
        return Err(GroverError::BranchingTooLarge { n, b });
    }
    let (n, b) = (n as f64, b as f64);
    Ok(FRAC_PI_4 * n.sqrt() * ((b - 1.0) / b).sqrt())
}

/// Iterations spent at level `λ` of one search pass over `N/2` states:
/// `π/4 · (√((N/2)/b^λ) − √((N/2)/b^(λ+1)))`.
pub fn bdgs_level_iterations(n: u64, b: u64, level: u32) -> Result<f64> {
    check_branching(b)?;
    if n < 2 || !n.is_power_of_two() {
        return Err(GroverError::NotPowerOfTwo(n));
    }
    let deep = (b as u128)
        .checked_pow(level + 1)
        .is_none_or(|p| p > (n / 2) as u128);
    if deep {
        return Err(GroverError::LevelTooDeep { n, b, level });
    }
    let half = n as f64 / 2.0;
    let b = b as f64;
    Ok(FRAC_PI_4
        * ((half / b.powi(level as i32)).sqrt() - (half / b.powi(level as i32 + 1)).sqrt()))
}

fn check_sizes(n: u64, b: u64, r: u32, k: u32) -> Result<()> {
    if k == 0 || r == 0 || r >= 64 || k >= 64 || n != 1u64 << r || b != 1u64 << k {
        return Err(GroverError::InconsistentSizes { n, r, b, k });
    }
    Ok(())
}

/// Number of levels per pass, `r / 2k`, as a real.
fn pass_depth(r: u32, k: u32) -> f64 {
    r as f64 / (2.0 * k as f64)
}

/// BDGS oracle-call bound `π/(4√2) · √N · (1 − √(1/b^(r/2k)))`.
pub fn bdgs_total_queries(n: u64, b: u64, r: u32, k: u32) -> Result<f64> {
    check_sizes(n, b, r, k)?;
    let depth = pass_depth(r, k);
    Ok(FRAC_PI_4 / 2f64.sqrt() * (n as f64).sqrt() * (1.0 - (1.0 / (b as f64).powf(depth)).sqrt()))
}

/// Sum of [`bdgs_level_iterations`] over the whole levels of one pass,
/// `λ = 0 .. ⌊r/2k⌋ − 1`.
pub fn bdgs_level_sum(n: u64, b: u64, r: u32, k: u32) -> Result<f64> {
    check_sizes(n, b, r, k)?;
    let whole = r / (2 * k);
    (0..whole)
        .map(|level| bdgs_level_iterations(n, b, level))
        .sum()
}

/// The fractional last level when `2k` does not divide `r`:
/// `π/4 · (√((N/2)/b^⌊r/2k⌋) − √((N/2)/b^(r/2k)))`. Zero otherwise.
pub fn bdgs_residual_term(n: u64, b: u64, r: u32, k: u32) -> Result<f64> {
    check_sizes(n, b, r, k)?;
    let half = n as f64 / 2.0;
    let b = b as f64;
    let whole = (r / (2 * k)) as f64;
    Ok(FRAC_PI_4 * ((half / b.powf(whole)).sqrt() - (half / b.powf(pass_depth(r, k))).sqrt()))
}

/// Two passes of whole levels plus a standard search over the final
/// `(N/2)/b^(r/2k)` states. Kept to document that this composition sums to
/// `π/4·√(N/2)·(2 − b^(−r/4k))`, not to [`bdgs_total_queries`].
pub fn bdgs_literal_composition(n: u64, b: u64, r: u32, k: u32) -> Result<f64> {
    let levels = bdgs_level_sum(n, b, r, k)?;
    let tail = FRAC_PI_4 * (n as f64 / 2.0 / (b as f64).powf(pass_depth(r, k))).sqrt();
    Ok(2.0 * levels + tail)
}

/// Wall-clock layers: GS runs its iterations back to back, DFGS resolves
/// `⌈r/k⌉` segments in sequence, BDGS runs two passes of `⌈r/2k⌉`
/// concurrently, GRK runs its planned schedule.
pub fn predicted_layers(algorithm: Algorithm, r: u32, k: u32) -> Result<u64> {
    check_qubits(r)?;
    if k == 0 {
        return Err(GroverError::BadBranching(1));
    }
    Ok(match algorithm {
        Algorithm::Gs => optimal_iterations(1u64 << r)?,
        Algorithm::Dfgs => r.div_ceil(k) as u64,
        Algorithm::Bdgs => r.div_ceil(2 * k) as u64,
        Algorithm::Grk => GrkSchedule::plan(r, 1u64 << k)?.total(),
    })
}

/// Oracle calls the layered drivers make when every segment succeeds on
/// its first attempt: `Σ optimal_iterations(2^width)` over the segments.
pub fn layered_segment_queries(algorithm: Algorithm, r: u32, k: u32) -> Result<u64> {
    let segments = match algorithm {
        Algorithm::Dfgs => layout::depth_first_segments(r, k),
        Algorithm::Bdgs => {
            let mut s = layout::forward_segments(r, k);
            s.extend(layout::backward_segments(r, k));
            s
        }
        other => {
            return Err(GroverError::UnknownAlgorithm(format!(
                "{other} is not layered"
            )))
        }
    };
    segments
        .iter()
        .map(|s| optimal_iterations(1u64 << s.width()))
        .sum()
}

/// Closed-form cost for `algorithm` on `r` qubits with branching `b`.
pub fn predict(algorithm: Algorithm, r: u32, b: u64) -> Result<PredictedCost> {
    check_qubits(r)?;
    check_branching(b)?;
    let k = b.trailing_zeros();
    let n = 1u64 << r;
    let (iterations, oracle_calls) = match algorithm {
        Algorithm::Gs => (optimal_iterations_real(n)?, optimal_iterations(n)? as f64),
        Algorithm::Grk => {
            let q = grk_query_count(n, b)?;
            (q, q + 1.0)
        }
        Algorithm::Dfgs => {
            let segs = layout::depth_first_segments(r, k);
            let real = segs
                .iter()
                .map(|s| optimal_iterations_real(1u64 << s.width()))
                .sum::<Result<f64>>()?;
            (real, layered_segment_queries(algorithm, r, k)? as f64)
        }
        Algorithm::Bdgs => {
            let q = bdgs_total_queries(n, b, r, k)?;
            (q, q)
        }
    };
    Ok(PredictedCost {
        algorithm,
        num_qubits: r,
        branching: b,
        iterations,
        oracle_calls,
        layers: predicted_layers(algorithm, r, k)?,
    })
}
