use super::segment::{segment_partial_search, RegisterMode, SegmentContext};
use super::{FoundBits, Result, SearchConfig, SearchError, SearchOutcome};
use crate::grover::layout::{backward_segments, depth_first_segments, forward_segments};
use crate::grover::{Algorithm, SegmentRange};
use crate::qsim::{ShotHistogram, StateVector};
use crate::seed;
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// Execution order of the two BDGS passes. Every order yields the same
/// result; only the wall-clock behaviour differs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PassSchedule {
    #[default]
    ForwardFirst,
    BackwardFirst,
    /// One forward segment, then one backward segment, and so on.
    Interleaved,
    /// Both passes on separate threads, joined before the merge.
    Concurrent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct LayeredOptions {
    pub mode: RegisterMode,
    pub schedule: PassSchedule,
}

/// One pass: its segments, its own found bits and query counter.
struct Pass {
    segments: Vec<SegmentRange>,
    next: usize,
    ctx: SegmentContext,
    found: FoundBits,
}

impl Pass {
    fn new(config: &SearchConfig, mode: RegisterMode, segments: Vec<SegmentRange>) -> Result<Self> {
        Ok(Self {
            segments,
            next: 0,
            ctx: SegmentContext::new(config.num_qubits, config.target, mode, config.seed)?,
            found: FoundBits::new(config.num_qubits),
        })
    }

    fn done(&self) -> bool {
        self.next == self.segments.len()
    }

    fn step(&mut self) -> Result<()> {
        let seg = self.segments[self.next];
        let found = std::mem::replace(&mut self.found, FoundBits::new(0));
        self.found = segment_partial_search(&mut self.ctx, seg, found)?;
        self.next += 1;
        Ok(())
    }

    fn run(mut self, other_mask: usize) -> Result<Self> {
        while !self.done() {
            self.step()?;
            check_disjoint(&self.found, other_mask)?;
        }
        Ok(self)
    }
}

fn check_disjoint(found: &FoundBits, other_mask: usize) -> Result<()> {
    match found.mask() & other_mask {
        0 => Ok(()),
        overlap => Err(SearchError::PassOverlap(overlap)),
    }
}

/// Mask of every bit a pass will ever touch.
fn coverage(num_qubits: u32, segments: &[SegmentRange]) -> usize {
    segments.iter().fold(0, |m, s| m | s.mask(num_qubits))
}

/// Depth-first layered search: `k`-bit segments resolved one after another
/// from the MSB, each conditioned on everything found before it.
pub fn run_dfgs(config: &SearchConfig) -> Result<SearchOutcome> {
    run_dfgs_with(config, &LayeredOptions::default())
}

pub fn run_dfgs_with(config: &SearchConfig, options: &LayeredOptions) -> Result<SearchOutcome> {
    config.expect(Algorithm::Dfgs)?;
    let start = Instant::now();
    let segments = depth_first_segments(config.num_qubits, config.segment_bits);
    let layers = segments.len() as u64;
    let pass = Pass::new(config, options.mode, segments)?.run(0)?;
    finish(
        config,
        options.mode,
        pass.found,
        layers,
        pass.ctx.oracle_calls(),
        start,
    )
}

/// Bi-directional layered search: a forward pass over the upper half of the
/// index bits and a backward pass over the lower half, merged at the end.
/// Layers are counted as the longer of the two passes.
pub fn run_bdgs(config: &SearchConfig) -> Result<SearchOutcome> {
    run_bdgs_with(config, &LayeredOptions::default())
}

pub fn run_bdgs_with(config: &SearchConfig, options: &LayeredOptions) -> Result<SearchOutcome> {
    config.expect(Algorithm::Bdgs)?;
    let r = config.num_qubits;
    let k = config.segment_bits;
    let start = Instant::now();

    let mut fwd = Pass::new(config, options.mode, forward_segments(r, k))?;
    let mut bwd = Pass::new(config, options.mode, backward_segments(r, k))?;
    let fwd_cover = coverage(r, &fwd.segments);
    let bwd_cover = coverage(r, &bwd.segments);
    if fwd_cover & bwd_cover != 0 {
        return Err(SearchError::PassOverlap(fwd_cover & bwd_cover));
    }
    let layers = fwd.segments.len().max(bwd.segments.len()) as u64;

    match options.schedule {
        PassSchedule::ForwardFirst => {
            fwd = fwd.run(bwd.found.mask())?;
            bwd = bwd.run(fwd.found.mask())?;
        }
        PassSchedule::BackwardFirst => {
            bwd = bwd.run(fwd.found.mask())?;
            fwd = fwd.run(bwd.found.mask())?;
        }
        PassSchedule::Interleaved => {
            while !(fwd.done() && bwd.done()) {
                if !fwd.done() {
                    fwd.step()?;
                }
                if !bwd.done() {
                    bwd.step()?;
                }
                check_disjoint(&fwd.found, bwd.found.mask())?;
            }
        }
        PassSchedule::Concurrent => {
            // Each pass only checks against the other's planned coverage;
            // the live masks are compared again at the merge.
            let (f, b) = std::thread::scope(|s| {
                let f = s.spawn(move || fwd.run(bwd_cover));
                let b = s.spawn(move || bwd.run(fwd_cover));
                (
                    f.join().expect("forward pass panicked"),
                    b.join().expect("backward pass panicked"),
                )
            });
            fwd = f?;
            bwd = b?;
        }
    }

    let calls = fwd.ctx.oracle_calls() + bwd.ctx.oracle_calls();
    let found = fwd.found.merge_disjoint(bwd.found)?;
    finish(config, options.mode, found, layers, calls, start)
}

fn finish(
    config: &SearchConfig,
    mode: RegisterMode,
    found: FoundBits,
    layers: u64,
    oracle_calls: u64,
    start: Instant,
) -> Result<SearchOutcome> {
    debug_assert!(found.is_complete());
    // Every segment has been measured, so the register has collapsed onto
    // the recorded value.
    let histogram = match mode {
        RegisterMode::Compact => ShotHistogram::point(found.value(), config.shots)?,
        RegisterMode::Full => StateVector::basis(config.num_qubits, found.value())?.sample(
            config.shots,
            seed::derive(&[config.seed, seed::MEASUREMENT]),
        )?,
    };
    let elapsed = start.elapsed();
    let mut outcome = SearchOutcome::from_histogram(
        config,
        &histogram,
        histogram.count(config.target),
        found.joint_probability(),
        layers,
        oracle_calls,
        elapsed,
    );
    outcome.found = Some(found);
    Ok(outcome)
}
