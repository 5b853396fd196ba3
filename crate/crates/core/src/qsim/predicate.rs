use super::{check_mask, full_mask, QsimError, Result};
use serde::{Deserialize, Serialize};

/// Selects the basis states whose bits under `mask` equal `value`.
///
/// An empty mask matches every state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct BasisPredicate {
    mask: usize,
    value: usize,
}

impl BasisPredicate {
    pub fn new(mask: usize, value: usize) -> Result<Self> {
        if value & !mask != 0 {
            return Err(QsimError::ValueOutsideMask { mask, value });
        }
        Ok(Self { mask, value })
    }

    /// Matches every basis state.
    pub const fn always() -> Self {
        Self { mask: 0, value: 0 }
    }

    /// Matches exactly `index` in an `r`-qubit register.
    pub fn exact(num_qubits: u32, index: usize) -> Result<Self> {
        if index > full_mask(num_qubits) {
            return Err(QsimError::IndexOutOfRange { index, num_qubits });
        }
        Ok(Self {
            mask: full_mask(num_qubits),
            value: index,
        })
    }

    pub fn mask(&self) -> usize {
        self.mask
    }

    pub fn value(&self) -> usize {
        self.value
    }

    #[inline]
    pub fn matches(&self, index: usize) -> bool {
        index & self.mask == self.value
    }

    /// Number of matching states in an `r`-qubit register.
    pub fn match_count(&self, num_qubits: u32) -> Result<usize> {
        check_mask(self.mask, num_qubits)?;
        Ok(1usize << (num_qubits - self.mask.count_ones()))
    }

    /// Conjunction of two predicates, `None` when they contradict.
    pub fn and(&self, other: &Self) -> Option<Self> {
        let shared = self.mask & other.mask;
        if self.value & shared != other.value & shared {
            return None;
        }
        Some(Self {
            mask: self.mask | other.mask,
            value: self.value | other.value,
        })
    }

    /// Calls `f` with every matching index of an `r`-qubit register, ascending.
    pub(crate) fn for_each_match(&self, num_qubits: u32, mut f: impl FnMut(usize)) {
        let free = full_mask(num_qubits) & !self.mask;
        let mut sub = 0usize;
        loop {
            f(self.value | sub);
            if sub == free {
                break;
            }
            sub = sub.wrapping_sub(free) & free;
        }
    }
}
