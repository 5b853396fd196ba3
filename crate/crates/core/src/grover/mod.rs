//! Oracles, diffusers and the Grover iterate, plus closed-form cost
//! predictors for the search variants.

mod angles;
mod grk;
pub mod layout;
mod oracle;
mod partition;
mod predict;

pub use angles::{grover_angle, optimal_iterations, optimal_iterations_real, success_probability};
pub use grk::GrkSchedule;
pub use oracle::{OracleSpec, SegmentRange};
pub use partition::BlockPartition;
pub use predict::{
    bdgs_level_iterations, bdgs_level_sum, bdgs_literal_composition, bdgs_residual_term,
    bdgs_total_queries, grk_query_count, layered_segment_queries, predict, predicted_layers,
    Algorithm, PredictedCost,
};

use crate::qsim::{QsimError, StateVector};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroverError {
    #[error("qubit count {0} outside 1..={max}", max = MAX_MODEL_QUBITS)]
    QubitCount(u32),
    #[error("search dimension {0} is below 2")]
    DimensionTooSmall(u64),
    #[error("branching factor {0} must be a power of two and at least 2")]
    BadBranching(u64),
    #[error("branching factor {b} does not leave blocks of at least one state in N = {n}")]
    BranchingTooLarge { n: u64, b: u64 },
    #[error("N = {0} is not a power of two")]
    NotPowerOfTwo(u64),
    #[error("level {level} too deep: b^(level+1) exceeds N/2 for N = {n}, b = {b}")]
    LevelTooDeep { n: u64, b: u64, level: u32 },
    #[error("inconsistent sizes: N = {n}, r = {r}, b = {b}, k = {k}")]
    InconsistentSizes { n: u64, r: u32, b: u64, k: u32 },
    #[error("target {target} out of range for {r} qubits")]
    TargetOutOfRange { target: usize, r: u32 },
    #[error("segment [{lo}, {hi}] invalid for {r} qubits")]
    BadSegment { lo: u32, hi: u32, r: u32 },
    #[error("active segment overlaps determined bits (mask {0:#b})")]
    SegmentOverlap(usize),
    #[error("state has {state} qubits but the oracle expects {expected}")]
    DimensionMismatch { state: u32, expected: u32 },
    #[error("unknown algorithm {0:?}")]
    UnknownAlgorithm(String),
    #[error(transparent)]
    Qsim(#[from] QsimError),
}

pub type Result<T> = std::result::Result<T, GroverError>;

/// Largest register the closed-form models accept (`N` must fit in a `u64`).
pub const MAX_MODEL_QUBITS: u32 = 62;

pub(crate) fn check_qubits(r: u32) -> Result<()> {
    if r == 0 || r > MAX_MODEL_QUBITS {
        return Err(GroverError::QubitCount(r));
    }
    Ok(())
}

/// One Grover iterate `I_G = −I_s · I_x`, with the diffusion restricted to
/// the blocks selected by `diffusion_mask` (empty mask: global diffuser).
///
/// The inversion kernel computes `2μ − a`, which is `−I_s` on each block, so
/// the oracle followed by the inversion is already `−I_s · I_x` including
/// its sign.
pub fn grover_iteration(
    state: &mut StateVector,
    oracle: &mut OracleSpec,
    diffusion_mask: usize,
) -> Result<()> {
    oracle.apply(state)?;
    state.invert_about_mean(diffusion_mask)?;
    Ok(())
}
