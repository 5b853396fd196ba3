use super::{FoundBits, Result, SearchError, SegmentRecord};
use crate::grover::{grover_iteration, optimal_iterations, OracleSpec, SegmentRange};
use crate::qsim::{full_mask, StateVector};
use crate::seed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Attempts per segment before giving up. Only non-exact (narrow or wide)
/// segments ever retry.
pub const MAX_SEGMENT_ATTEMPTS: u32 = 8;

/// Probability above which the amplified segment value is read off
/// directly instead of sampled.
pub const EXACT_THRESHOLD: f64 = 1.0 - 1e-9;

/// Largest register the full-register mode will allocate.
pub const FULL_REGISTER_MAX_QUBITS: u32 = 12;

/// Working register used for each segment search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegisterMode {
    /// A fresh `2^width` register holding only the segment; the determined
    /// bits live in the oracle's condition.
    #[default]
    Compact,
    /// The whole `2^r` register: determined bits fixed, every other
    /// undetermined bit in superposition, diffusion restricted to the
    /// segment within each block.
    Full,
}

/// Per-pass state shared by successive segment searches: who holds the
/// oracle, how registers are built, and how many queries were spent.
#[derive(Debug, Clone)]
pub struct SegmentContext {
    num_qubits: u32,
    target: usize,
    mode: RegisterMode,
    seed: u64,
    oracle_calls: u64,
}

impl SegmentContext {
    pub fn new(num_qubits: u32, target: usize, mode: RegisterMode, seed: u64) -> Result<Self> {
        if mode == RegisterMode::Full && num_qubits > FULL_REGISTER_MAX_QUBITS {
            return Err(SearchError::FullRegisterTooLarge(num_qubits));
        }
        if target >> num_qubits != 0 {
            return Err(SearchError::TargetOutOfRange {
                target,
                r: num_qubits,
            });
        }
        Ok(Self {
            num_qubits,
            target,
            mode,
            seed,
            oracle_calls: 0,
        })
    }

    pub fn oracle_calls(&self) -> u64 {
        self.oracle_calls
    }

    /// Distribution over segment values after `iterations` amplification
    /// rounds.
    fn amplify(
        &self,
        oracle: &mut OracleSpec,
        segment: SegmentRange,
        found: &FoundBits,
        iterations: u64,
    ) -> Result<Vec<f64>> {
        match self.mode {
            RegisterMode::Compact => {
                let mut reg = StateVector::uniform(segment.width())?;
                for _ in 0..iterations {
                    oracle.apply_to_segment(&mut reg)?;
                    reg.invert_about_mean(0)?;
                }
                Ok(reg.probabilities())
            }
            RegisterMode::Full => {
                let r = self.num_qubits;
                let seg_mask = segment.mask(r);
                let mut state = StateVector::uniform_over(r, &found.predicate())?;
                // Blocks are labelled by every bit outside the segment.
                let blocks = full_mask(r) & !seg_mask;
                for _ in 0..iterations {
                    grover_iteration(&mut state, oracle, blocks)?;
                }
                Ok(state.marginal(seg_mask)?)
            }
        }
    }
}

fn pick(dist: &[f64], excluded: &[bool], rng: &mut ChaCha8Rng) -> (usize, bool) {
    let (best, p_best) = dist.iter().enumerate().filter(|(v, _)| !excluded[*v]).fold(
        (usize::MAX, -1.0),
        |acc, (v, &p)| if p > acc.1 { (v, p) } else { acc },
    );
    if p_best > EXACT_THRESHOLD {
        return (best, true);
    }
    let weights: Vec<f64> = dist
        .iter()
        .zip(excluded)
        .map(|(&p, &x)| if x { 0.0 } else { p })
        .collect();
    let total: f64 = weights.iter().sum();
    if total <= f64::EPSILON {
        let open: Vec<usize> = (0..dist.len()).filter(|&v| !excluded[v]).collect();
        return (open[rng.random_range(0..open.len())], false);
    }
    let mut u = rng.random::<f64>() * total;
    for (v, w) in weights.iter().enumerate() {
        if *w > 0.0 {
            if u < *w {
                return (v, false);
            }
            u -= w;
        }
    }
    (
        weights.iter().rposition(|&w| w > 0.0).unwrap_or(best),
        false,
    )
}

/// Resolves the bits of `segment` by amplitude amplification conditioned on
/// the bits already in `found`, then measures the segment and records it.
///
/// A segment of width `w` runs `optimal_iterations(2^w)` iterates. When the
/// amplified value is exact (width 2: probability 1) it is read off.
/// Otherwise the measured value is checked with one extra oracle query;
/// refuted values are excluded and the search repeats, up to
/// [`MAX_SEGMENT_ATTEMPTS`] times.
pub fn segment_partial_search(
    ctx: &mut SegmentContext,
    segment: SegmentRange,
    mut found: FoundBits,
) -> Result<FoundBits> {
    if segment.is_empty() {
        return Ok(found);
    }
    let r = ctx.num_qubits;
    if found.num_qubits() != r {
        return Err(SearchError::QubitCount(found.num_qubits()));
    }
    if segment.mask(r) & found.mask() != 0 {
        return Err(SearchError::SegmentOverlap {
            segment,
            found_mask: found.mask(),
        });
    }

    let mut oracle = OracleSpec::segment(r, ctx.target, segment, found.predicate())?;
    let width = segment.width();
    let iterations = optimal_iterations(1u64 << width)?;
    let mut excluded = vec![false; 1usize << width];

    for attempt in 0..MAX_SEGMENT_ATTEMPTS {
        if excluded.iter().all(|&x| x) {
            break;
        }
        let dist = ctx.amplify(&mut oracle, segment, &found, iterations)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed::derive(&[
            ctx.seed,
            segment.lo() as u64,
            width as u64,
            attempt as u64,
        ]));
        let (value, exact) = pick(&dist, &excluded, &mut rng);
        let accepted = exact || oracle.query(found.value() | segment.place(r, value));
        if accepted {
            ctx.oracle_calls += oracle.query_count();
            found.record(SegmentRecord {
                segment,
                value,
                probability: dist[value],
                attempts: attempt + 1,
                oracle_calls: oracle.query_count(),
            })?;
            return Ok(found);
        }
        excluded[value] = true;
    }
    ctx.oracle_calls += oracle.query_count();
    Err(SearchError::SegmentUnresolved {
        segment,
        attempts: MAX_SEGMENT_ATTEMPTS,
    })
}
