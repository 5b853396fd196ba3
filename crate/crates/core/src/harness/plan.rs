use super::{HarnessError, Result};
use crate::grover::Algorithm;
use crate::qsim::MAX_QUBITS;
use serde::{Deserialize, Serialize};

/// How each trial picks its target index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetPolicy {
    /// The same index in every cell; must fit the smallest register.
    Fixed(usize),
    /// Drawn from the cell seed.
    #[default]
    RandomPerTrial,
}

/// A grid of `(qubits, algorithm, trial)` cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentPlan {
    pub qubits: Vec<u32>,
    pub algorithms: Vec<Algorithm>,
    pub trials: u32,
    pub shots: u64,
    pub base_seed: u64,
    pub target_policy: TargetPolicy,
    pub branching: u64,
    /// Worker threads; 0 uses one per core.
    pub jobs: usize,
}

impl Default for ExperimentPlan {
    /// Five trials of 1024 shots at 4, 8, 16 and 20 qubits for GS, DFGS
    /// and BDGS.
    fn default() -> Self {
        Self {
            qubits: vec![4, 8, 16, 20],
            algorithms: vec![Algorithm::Gs, Algorithm::Dfgs, Algorithm::Bdgs],
            trials: 5,
            shots: 1024,
            base_seed: 0,
            target_policy: TargetPolicy::RandomPerTrial,
            branching: 4,
            jobs: 0,
        }
    }
}

impl ExperimentPlan {
    pub fn validate(&self) -> Result<()> {
        let invalid = |msg: String| Err(HarnessError::InvalidPlan(msg));
        if self.qubits.is_empty() {
            return invalid("no qubit counts".into());
        }
        if let Some(&r) = self
            .qubits
            .iter()
            .find(|&&r| !(2..=MAX_QUBITS).contains(&r))
        {
            return invalid(format!("qubit count {r} outside 2..={MAX_QUBITS}"));
        }
        if self.algorithms.is_empty() {
            return invalid("no algorithms".into());
        }
        if self.trials == 0 {
            return invalid("trials must be at least 1".into());
        }
        if self.shots == 0 {
            return invalid("shots must be at least 1".into());
        }
        if self.branching < 2 || !self.branching.is_power_of_two() {
            return invalid(format!(
                "block size {} is not a power of two ≥ 2",
                self.branching
            ));
        }
        if let TargetPolicy::Fixed(t) = self.target_policy {
            let smallest = *self.qubits.iter().min().expect("non-empty");
            if t >> smallest != 0 {
                return invalid(format!("target {t} does not fit in {smallest} qubits"));
            }
        }
        Ok(())
    }

    /// Cells in table order: qubits, then algorithm, then trial.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for &num_qubits in &self.qubits {
            for &algorithm in &self.algorithms {
                for trial in 1..=self.trials {
                    out.push(Cell {
                        num_qubits,
                        algorithm,
                        trial,
                    });
                }
            }
        }
        out
    }
}

/// One `(qubits, algorithm, trial)` coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub num_qubits: u32,
    pub algorithm: Algorithm,
    pub trial: u32,
}

impl Cell {
    /// Seed from the base seed and the cell coordinate alone, so it does not
    /// depend on which worker runs the cell or when.
    pub fn seed(&self, base_seed: u64) -> u64 {
        let algo = Algorithm::ALL
            .iter()
            .position(|a| *a == self.algorithm)
            .unwrap_or(0);
        crate::seed::derive(&[
            base_seed,
            self.num_qubits as u64,
            algo as u64,
            self.trial as u64,
        ])
    }

    pub fn target(&self, policy: TargetPolicy, seed: u64) -> usize {
        match policy {
            TargetPolicy::Fixed(t) => t,
            TargetPolicy::RandomPerTrial => {
                (crate::seed::derive(&[seed, crate::seed::TARGET]) as usize)
                    & ((1usize << self.num_qubits) - 1)
            }
        }
    }
}
