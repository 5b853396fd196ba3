use super::{Result, SearchConfig, SearchOutcome};
use crate::grover::{grover_iteration, Algorithm, BlockPartition, GrkSchedule, OracleSpec};
use crate::qsim::StateVector;
use crate::seed;
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// GRK result: the measured block and the run accounting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrkOutcome {
    /// Block holding the most shots.
    pub block: usize,
    pub schedule: GrkSchedule,
    pub outcome: SearchOutcome,
}

/// GRK partial search for the block (leading `k` bits) holding the target:
/// global iterates, block-local iterates, then one global cleanup iterate.
pub fn run_grk_partial(config: &SearchConfig) -> Result<GrkOutcome> {
    config.expect(Algorithm::Grk)?;
    let r = config.num_qubits;
    let part = BlockPartition::new(r, config.branching)?;
    let schedule = GrkSchedule::plan(r, config.branching)?;

    let start = Instant::now();
    let mut state = StateVector::uniform(r)?;
    let mut oracle = OracleSpec::full(r, config.target)?;
    for _ in 0..schedule.global {
        grover_iteration(&mut state, &mut oracle, 0)?;
    }
    for _ in 0..schedule.local {
        grover_iteration(&mut state, &mut oracle, part.block_mask())?;
    }
    grover_iteration(&mut state, &mut oracle, 0)?;

    let histogram = state.sample(
        config.shots,
        seed::derive(&[config.seed, seed::MEASUREMENT]),
    )?;
    let elapsed = start.elapsed();

    let target_block = part.block_of(config.target);
    let mut per_block = vec![0u64; config.branching as usize];
    for (&i, &c) in histogram.counts() {
        per_block[part.block_of(i)] += c;
    }
    let block = per_block
        .iter()
        .enumerate()
        .fold(
            (0, 0),
            |best, (b, &c)| if c > best.1 { (b, c) } else { best },
        )
        .0;
    let block_probability: f64 = state
        .probabilities()
        .iter()
        .enumerate()
        .filter(|(i, _)| part.block_of(*i) == target_block)
        .map(|(_, p)| p)
        .sum();

    let mut outcome = SearchOutcome::from_histogram(
        config,
        &histogram,
        per_block[target_block],
        block_probability,
        schedule.total(),
        oracle.query_count(),
        elapsed,
    );
    outcome.block = Some(block);
    Ok(GrkOutcome {
        block,
        schedule,
        outcome,
    })
}
