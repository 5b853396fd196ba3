use super::{grk_query_count, BlockPartition, Result};
use serde::{Deserialize, Serialize};

/// Iteration plan for GRK partial search: `global` full iterates, then
/// `local` block-local iterates, then one global cleanup iterate.
///
/// The split is chosen on a three-amplitude reduction of the dynamics (the
/// marked state, the rest of its block, everything else), maximising the
/// probability of the marked block within `⌈grk_query_count⌉` queries
/// before cleanup. Ties go to the cheaper plan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrkSchedule {
    pub global: u64,
    pub local: u64,
    /// Predicted probability of measuring an index in the marked block.
    pub block_probability: f64,
}

#[derive(Clone, Copy)]
struct Reduced {
    marked: f64,
    block_rest: f64,
    outside: f64,
}

impl Reduced {
    fn global(self, n: f64, block: f64) -> Self {
        let x = -self.marked;
        let mean = (x + (block - 1.0) * self.block_rest + (n - block) * self.outside) / n;
        Self {
            marked: 2.0 * mean - x,
            block_rest: 2.0 * mean - self.block_rest,
            outside: 2.0 * mean - self.outside,
        }
    }

    fn local(self, block: f64) -> Self {
        let x = -self.marked;
        let mean = (x + (block - 1.0) * self.block_rest) / block;
        Self {
            marked: 2.0 * mean - x,
            block_rest: 2.0 * mean - self.block_rest,
            outside: self.outside,
        }
    }

    fn block_probability(&self, block: f64) -> f64 {
        self.marked.powi(2) + (block - 1.0) * self.block_rest.powi(2)
    }
}

impl GrkSchedule {
    pub fn plan(num_qubits: u32, branching: u64) -> Result<Self> {
        let part = BlockPartition::new(num_qubits, branching)?;
        let n_int = 1u64 << num_qubits;
        let budget = grk_query_count(n_int, branching)?.ceil() as u64;
        let n = n_int as f64;
        let block = part.block_size as f64;

        let start = (1.0 / n).sqrt();
        let mut after_global = Reduced {
            marked: start,
            block_rest: start,
            outside: start,
        };
        let mut best = Self {
            global: 0,
            local: 0,
            block_probability: f64::NEG_INFINITY,
        };
        for global in 0..=budget {
            let mut s = after_global;
            for local in 0..=(budget - global) {
                let p = s.global(n, block).block_probability(block);
                let better = p > best.block_probability + 1e-12
                    || ((p - best.block_probability).abs() <= 1e-12
                        && global + local < best.global + best.local);
                if better {
                    best = Self {
                        global,
                        local,
                        block_probability: p,
                    };
                }
                s = s.local(block);
            }
            after_global = after_global.global(n, block);
        }
        Ok(best)
    }

    /// Oracle calls including the cleanup iterate.
    pub fn total(&self) -> u64 {
        self.global + self.local + 1
    }
}
