use super::{QsimError, Result, StateVector, SAMPLING_NORM_TOLERANCE};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Counts of measured basis indices over a batch of shots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShotHistogram {
    counts: BTreeMap<usize, u64>,
    total_shots: u64,
}

impl ShotHistogram {
    /// Every shot landed on `index`.
    pub fn point(index: usize, shots: u64) -> Result<Self> {
        if shots == 0 {
            return Err(QsimError::ZeroShots);
        }
        Ok(Self {
            counts: BTreeMap::from([(index, shots)]),
            total_shots: shots,
        })
    }

    pub fn counts(&self) -> &BTreeMap<usize, u64> {
        &self.counts
    }

    pub fn total_shots(&self) -> u64 {
        self.total_shots
    }

    pub fn count(&self, index: usize) -> u64 {
        self.counts.get(&index).copied().unwrap_or(0)
    }

    /// Shots whose index satisfies `f`.
    pub fn count_where(&self, mut f: impl FnMut(usize) -> bool) -> u64 {
        self.counts
            .iter()
            .filter(|(i, _)| f(**i))
            .map(|(_, c)| c)
            .sum()
    }

    /// Most frequent index; ties resolve to the smallest index.
    pub fn mode(&self) -> usize {
        let mut best = (0usize, 0u64);
        for (&i, &c) in &self.counts {
            if c > best.1 {
                best = (i, c);
            }
        }
        best.0
    }
}

impl StateVector {
    /// Draws `shots` independent projective measurements in the computational
    /// basis. Deterministic for a fixed `seed`.
    pub fn sample(&self, shots: u64, seed: u64) -> Result<ShotHistogram> {
        if shots == 0 {
            return Err(QsimError::ZeroShots);
        }
        let deviation = (self.norm() - 1.0).abs();
        if deviation > SAMPLING_NORM_TOLERANCE {
            return Err(QsimError::NotNormalized { deviation });
        }

        let mut cumulative = Vec::with_capacity(self.dim());
        let mut acc = 0.0;
        for a in self.amplitudes() {
            acc += a.norm_sqr();
            cumulative.push(acc);
        }

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts = BTreeMap::new();
        for _ in 0..shots {
            let u = rng.random::<f64>() * acc;
            // First index whose cumulative mass exceeds u; never picks a
            // zero-probability entry.
            let idx = cumulative.partition_point(|&c| c <= u).min(self.dim() - 1);
            *counts.entry(idx).or_insert(0) += 1;
        }
        Ok(ShotHistogram {
            counts,
            total_shots: shots,
        })
    }
}
