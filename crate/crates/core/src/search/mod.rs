//! End-to-end search drivers returning fully accounted outcomes.

mod config;
mod found;
mod layered;
mod outcome;
mod partial;
mod segment;
mod standard;

pub use config::SearchConfig;
pub use found::{FoundBits, SegmentRecord};
pub use layered::{run_bdgs, run_bdgs_with, run_dfgs, run_dfgs_with, LayeredOptions, PassSchedule};
pub use outcome::SearchOutcome;
pub use partial::{run_grk_partial, GrkOutcome};
pub use segment::{
    segment_partial_search, RegisterMode, SegmentContext, EXACT_THRESHOLD,
    FULL_REGISTER_MAX_QUBITS, MAX_SEGMENT_ATTEMPTS,
};
pub use standard::run_standard_grover;

use crate::grover::{Algorithm, GroverError, SegmentRange};
use crate::qsim::QsimError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SearchError {
    #[error("branching factor {0} must be a power of two and at least 2")]
    BadBranching(u64),
    #[error("shot count must be at least 1")]
    ZeroShots,
    #[error("unsupported qubit count {0}")]
    QubitCount(u32),
    #[error("target {target} out of range for {r} qubits")]
    TargetOutOfRange { target: usize, r: u32 },
    #[error("driver for {expected} called with a {got} configuration")]
    WrongAlgorithm { expected: Algorithm, got: Algorithm },
    #[error("segment {segment:?} overlaps found bits {found_mask:#b}")]
    SegmentOverlap {
        segment: SegmentRange,
        found_mask: usize,
    },
    #[error("forward and backward passes overlap on bits {0:#b}")]
    PassOverlap(usize),
    #[error("full-register mode limited to {max} qubits, got {0}", max = FULL_REGISTER_MAX_QUBITS)]
    FullRegisterTooLarge(u32),
    #[error("segment {segment:?} unresolved after {attempts} attempts")]
    SegmentUnresolved {
        segment: SegmentRange,
        attempts: u32,
    },
    #[error(transparent)]
    Grover(#[from] GroverError),
    #[error(transparent)]
    Qsim(#[from] QsimError),
}

pub type Result<T> = std::result::Result<T, SearchError>;

/// Runs the driver named by `config.algorithm` with default options.
pub fn run_search(config: &SearchConfig) -> Result<SearchOutcome> {
    match config.algorithm {
        Algorithm::Gs => run_standard_grover(config),
        Algorithm::Grk => run_grk_partial(config).map(|g| g.outcome),
        Algorithm::Dfgs => run_dfgs(config),
        Algorithm::Bdgs => run_bdgs(config),
    }
}

/// Whether the run found what it was asked for: the target index, or for
/// GRK the target's block.
pub fn verify_outcome(outcome: &SearchOutcome, config: &SearchConfig) -> bool {
    match (config.algorithm, outcome.block) {
        (Algorithm::Grk, Some(block)) => {
            block == config.target >> (config.num_qubits - config.segment_bits)
        }
        _ => outcome.measured_index == config.target,
    }
}
