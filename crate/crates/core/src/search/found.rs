use super::{Result, SearchError};
use crate::grover::SegmentRange;
use crate::qsim::{full_mask, BasisPredicate};
use serde::{Deserialize, Serialize};

/// One resolved segment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentRecord {
    pub segment: SegmentRange,
    /// Segment bits, MSB-first.
    pub value: usize,
    /// Probability the amplified register assigned to `value` on the
    /// accepted attempt.
    pub probability: f64,
    pub attempts: u32,
    pub oracle_calls: u64,
}

/// Classical record of the index bits settled so far.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoundBits {
    num_qubits: u32,
    mask: usize,
    value: usize,
    history: Vec<SegmentRecord>,
}

impl FoundBits {
    pub fn new(num_qubits: u32) -> Self {
        Self {
            num_qubits,
            mask: 0,
            value: 0,
            history: Vec::new(),
        }
    }

    pub fn num_qubits(&self) -> u32 {
        self.num_qubits
    }

    pub fn mask(&self) -> usize {
        self.mask
    }

    pub fn value(&self) -> usize {
        self.value
    }

    pub fn history(&self) -> &[SegmentRecord] {
        &self.history
    }

    pub fn predicate(&self) -> BasisPredicate {
        BasisPredicate::new(self.mask, self.value).expect("value kept inside mask")
    }

    pub fn is_complete(&self) -> bool {
        self.mask == full_mask(self.num_qubits)
    }

    pub fn record(&mut self, rec: SegmentRecord) -> Result<()> {
        let seg_mask = rec.segment.mask(self.num_qubits);
        if seg_mask & self.mask != 0 {
            return Err(SearchError::SegmentOverlap {
                segment: rec.segment,
                found_mask: self.mask,
            });
        }
        self.mask |= seg_mask;
        self.value |= rec.segment.place(self.num_qubits, rec.value);
        self.history.push(rec);
        Ok(())
    }

    /// Union of two records over disjoint bits; `other`'s history follows
    /// this one's.
    pub fn merge_disjoint(mut self, other: FoundBits) -> Result<Self> {
        if self.num_qubits != other.num_qubits || self.mask & other.mask != 0 {
            return Err(SearchError::PassOverlap(self.mask & other.mask));
        }
        self.mask |= other.mask;
        self.value |= other.value;
        self.history.extend(other.history);
        Ok(self)
    }

    /// Product of the per-segment probabilities.
    pub fn joint_probability(&self) -> f64 {
        self.history.iter().map(|r| r.probability).product()
    }
}
