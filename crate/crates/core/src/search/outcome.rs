use super::{FoundBits, SearchConfig};
use crate::grover::Algorithm;
use crate::qsim::ShotHistogram;
use serde::{Deserialize, Serialize};
use std::time::Duration;

/// Result of one search run, as serialised for the benchmark harness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub algorithm: Algorithm,
    pub num_qubits: u32,
    pub target: usize,
    /// Most frequent index over the shots.
    pub measured_index: usize,
    /// Shots counted as successes: hits on the target, or on the target's
    /// block for GRK.
    pub hits: u64,
    pub shots: u64,
    /// `hits / shots`.
    pub success_fraction: f64,
    /// Pre-measurement success probability: `|⟨x|ψ⟩|²` for GS, the block
    /// mass for GRK, the product of per-segment probabilities for the
    /// layered searches.
    pub final_probability: f64,
    pub layers: u64,
    pub oracle_calls: u64,
    /// Seconds from state preparation through the final measurement.
    pub wall_time: f64,
    pub trial_seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub block: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub found: Option<FoundBits>,
}

impl SearchOutcome {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_histogram(
        config: &SearchConfig,
        histogram: &ShotHistogram,
        hits: u64,
        final_probability: f64,
        layers: u64,
        oracle_calls: u64,
        elapsed: Duration,
    ) -> Self {
        Self {
            algorithm: config.algorithm,
            num_qubits: config.num_qubits,
            target: config.target,
            measured_index: histogram.mode(),
            hits,
            shots: histogram.total_shots(),
            success_fraction: hits as f64 / histogram.total_shots() as f64,
            final_probability,
            layers,
            oracle_calls,
            wall_time: elapsed.as_secs_f64(),
            trial_seed: config.seed,
            block: None,
            found: None,
        }
    }

    /// Copy with `wall_time` zeroed, for comparing runs.
    pub fn without_timing(&self) -> Self {
        Self {
            wall_time: 0.0,
            ..self.clone()
        }
    }
}
