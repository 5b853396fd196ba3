use super::{Result, SearchConfig, SearchOutcome};
use crate::grover::{grover_iteration, optimal_iterations, Algorithm, OracleSpec};
use crate::qsim::StateVector;
use crate::seed;
use std::time::Instant;

/// Standard Grover search: `optimal_iterations(2^r)` global iterates on the
/// uniform state, then `shots` measurements.
pub fn run_standard_grover(config: &SearchConfig) -> Result<SearchOutcome> {
    config.expect(Algorithm::Gs)?;
    let start = Instant::now();
    let r = config.num_qubits;
    let iterations = optimal_iterations(1u64 << r)?;

    let mut state = StateVector::uniform(r)?;
    let mut oracle = OracleSpec::full(r, config.target)?;
    for _ in 0..iterations {
        grover_iteration(&mut state, &mut oracle, 0)?;
    }
    let histogram = state.sample(
        config.shots,
        seed::derive(&[config.seed, seed::MEASUREMENT]),
    )?;
    let elapsed = start.elapsed();

    Ok(SearchOutcome::from_histogram(
        config,
        &histogram,
        histogram.count(config.target),
        state.probability(config.target),
        iterations,
        oracle.query_count(),
        elapsed,
    ))
}
