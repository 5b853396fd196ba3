use super::{GroverError, Result};
use crate::qsim::{full_mask, BasisPredicate, StateVector};
use serde::{Deserialize, Serialize};

/// Contiguous run of bit positions, counted from the most significant bit
/// (position 0 is index bit `r − 1`). May be empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SegmentRange {
    lo: u32,
    len: u32,
}

impl SegmentRange {
    /// Positions `lo..=hi`.
    pub fn new(lo: u32, hi: u32) -> Self {
        assert!(lo <= hi, "segment [{lo}, {hi}] is reversed");
        Self {
            lo,
            len: hi - lo + 1,
        }
    }

    pub fn empty(lo: u32) -> Self {
        Self { lo, len: 0 }
    }

    /// Every position of an `r`-qubit index.
    pub fn full(num_qubits: u32) -> Self {
        Self {
            lo: 0,
            len: num_qubits,
        }
    }

    pub fn lo(&self) -> u32 {
        self.lo
    }

    /// Last position, `None` when empty.
    pub fn hi(&self) -> Option<u32> {
        (self.len > 0).then(|| self.lo + self.len - 1)
    }

    pub fn width(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn check(&self, num_qubits: u32) -> Result<()> {
        if self.lo + self.len > num_qubits {
            return Err(GroverError::BadSegment {
                lo: self.lo,
                hi: self.lo + self.len.saturating_sub(1),
                r: num_qubits,
            });
        }
        Ok(())
    }

    /// Right shift that brings the segment's last position to index bit 0.
    pub fn shift(&self, num_qubits: u32) -> u32 {
        num_qubits - self.lo - self.len
    }

    /// Index mask covering the segment in an `r`-qubit register.
    pub fn mask(&self, num_qubits: u32) -> usize {
        if self.len == 0 {
            return 0;
        }
        ((1usize << self.len) - 1) << self.shift(num_qubits)
    }

    /// The segment's bits of `index`, MSB-first, as a `width`-bit value.
    pub fn extract(&self, num_qubits: u32, index: usize) -> usize {
        (index & self.mask(num_qubits)) >> self.shift(num_qubits)
    }

    /// Inverse of [`Self::extract`].
    pub fn place(&self, num_qubits: u32, value: usize) -> usize {
        (value << self.shift(num_qubits)) & self.mask(num_qubits)
    }
}

/// Phase oracle for a single marked index with query accounting.
///
/// It flips the basis states that agree with `target` on the active segment
/// and carry the already-determined bits. With the full segment and nothing
/// determined this is `I_x = I − 2|x⟩⟨x|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleSpec {
    num_qubits: u32,
    target: usize,
    active: SegmentRange,
    determined: BasisPredicate,
    marked: BasisPredicate,
    queries: u64,
}

impl OracleSpec {
    /// The textbook oracle `I_x`.
    pub fn full(num_qubits: u32, target: usize) -> Result<Self> {
        Self::segment(
            num_qubits,
            target,
            SegmentRange::full(num_qubits),
            BasisPredicate::always(),
        )
    }

    pub fn segment(
        num_qubits: u32,
        target: usize,
        active: SegmentRange,
        determined: BasisPredicate,
    ) -> Result<Self> {
        if num_qubits == 0 || num_qubits > crate::qsim::MAX_QUBITS || target > full_mask(num_qubits)
        {
            return Err(GroverError::TargetOutOfRange {
                target,
                r: num_qubits,
            });
        }
        active.check(num_qubits)?;
        let active_mask = active.mask(num_qubits);
        if determined.mask() & !full_mask(num_qubits) != 0 {
            return Err(crate::qsim::QsimError::MaskTooWide {
                mask: determined.mask(),
                num_qubits,
            }
            .into());
        }
        if determined.mask() & active_mask != 0 {
            return Err(GroverError::SegmentOverlap(determined.mask() & active_mask));
        }
        let on_segment = BasisPredicate::new(active_mask, target & active_mask)?;
        let marked = on_segment
            .and(&determined)
            .expect("disjoint masks never conflict");
        Ok(Self {
            num_qubits,
            target,
            active,
            determined,
            marked,
            queries: 0,
        })
    }

    pub fn num_qubits(&self) -> u32 {
        self.num_qubits
    }

    pub fn active_segment(&self) -> SegmentRange {
        self.active
    }

    pub fn determined(&self) -> BasisPredicate {
        self.determined
    }

    /// Basis states this oracle flips.
    pub fn marked_predicate(&self) -> BasisPredicate {
        self.marked
    }

    pub fn query_count(&self) -> u64 {
        self.queries
    }

    /// One oracle call on the full `r`-qubit register.
    pub fn apply(&mut self, state: &mut StateVector) -> Result<()> {
        if state.num_qubits() != self.num_qubits {
            return Err(GroverError::DimensionMismatch {
                state: state.num_qubits(),
                expected: self.num_qubits,
            });
        }
        state.phase_flip(&self.marked)?;
        self.queries += 1;
        Ok(())
    }

    /// One oracle call on a register holding only the active segment, with
    /// the determined bits fixed to the oracle's recorded values. The local
    /// state `v` is flipped iff `v` equals the target's segment bits and the
    /// recorded bits agree with the target.
    pub fn apply_to_segment(&mut self, register: &mut StateVector) -> Result<()> {
        if register.num_qubits() != self.active.width() {
            return Err(GroverError::DimensionMismatch {
                state: register.num_qubits(),
                expected: self.active.width(),
            });
        }
        if self.determined.matches(self.target) {
            let local = self.active.extract(self.num_qubits, self.target);
            register.phase_flip(&BasisPredicate::exact(register.num_qubits(), local)?)?;
        }
        self.queries += 1;
        Ok(())
    }

    /// Classical evaluation on one basis index; counts as a query.
    pub fn query(&mut self, index: usize) -> bool {
        self.queries += 1;
        self.marked.matches(index)
    }
}
