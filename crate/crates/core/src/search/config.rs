use super::{Result, SearchError};
use crate::grover::Algorithm;
use crate::qsim::MAX_QUBITS;
use serde::{Deserialize, Serialize};

/// Inputs for one search run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub algorithm: Algorithm,
    pub num_qubits: u32,
    pub target: usize,
    /// Branching factor `b = 2^k`.
    pub branching: u64,
    /// Segment width `k`.
    pub segment_bits: u32,
    pub shots: u64,
    pub seed: u64,
}

impl SearchConfig {
    /// Defaults: `b = 4` (`k = 2`), 1024 shots, seed 0.
    pub fn new(algorithm: Algorithm, num_qubits: u32, target: usize) -> Result<Self> {
        let config = Self {
            algorithm,
            num_qubits,
            target,
            branching: 4,
            segment_bits: 2,
            shots: 1024,
            seed: 0,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn with_branching(mut self, branching: u64) -> Result<Self> {
        if branching < 2 || !branching.is_power_of_two() {
            return Err(SearchError::BadBranching(branching));
        }
        self.branching = branching;
        self.segment_bits = branching.trailing_zeros();
        Ok(self)
    }

    pub fn with_shots(mut self, shots: u64) -> Result<Self> {
        if shots == 0 {
            return Err(SearchError::ZeroShots);
        }
        self.shots = shots;
        Ok(self)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_qubits == 0 || self.num_qubits > MAX_QUBITS {
            return Err(SearchError::QubitCount(self.num_qubits));
        }
        if self.target >> self.num_qubits != 0 {
            return Err(SearchError::TargetOutOfRange {
                target: self.target,
                r: self.num_qubits,
            });
        }
        if self.segment_bits == 0 || self.branching != 1u64 << self.segment_bits {
            return Err(SearchError::BadBranching(self.branching));
        }
        if self.shots == 0 {
            return Err(SearchError::ZeroShots);
        }
        Ok(())
    }

    pub(crate) fn expect(&self, algorithm: Algorithm) -> Result<()> {
        self.validate()?;
        if self.algorithm != algorithm {
            return Err(SearchError::WrongAlgorithm {
                expected: algorithm,
                got: self.algorithm,
            });
        }
        Ok(())
    }
}
