use super::{GroverError, Result, SegmentRange};
use serde::{Deserialize, Serialize};

/// Split of `N = 2^r` indices into `b = 2^k` equal blocks of `block_size`
/// states. The block id is the leading `k` bits of an index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockPartition {
    pub num_qubits: u32,
    pub branching: u64,
    pub bits_per_layer: u32,
    pub block_size: u64,
}

impl BlockPartition {
    pub fn new(num_qubits: u32, branching: u64) -> Result<Self> {
        super::check_qubits(num_qubits)?;
        if branching < 2 || !branching.is_power_of_two() {
            return Err(GroverError::BadBranching(branching));
        }
        let k = branching.trailing_zeros();
        if k > num_qubits {
            return Err(GroverError::BranchingTooLarge {
                n: 1 << num_qubits,
                b: branching,
            });
        }
        Ok(Self {
            num_qubits,
            branching,
            bits_per_layer: k,
            block_size: 1u64 << (num_qubits - k),
        })
    }

    /// Index mask selecting the block-id bits.
    pub fn block_mask(&self) -> usize {
        SegmentRange::new(0, self.bits_per_layer - 1).mask(self.num_qubits)
    }

    pub fn block_of(&self, index: usize) -> usize {
        index >> (self.num_qubits - self.bits_per_layer)
    }
}
