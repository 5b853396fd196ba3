//! Dense statevector substrate.
//!
//! Basis-state indices are plain integers; a *bit position* `p` (as used by
//! [`crate::grover::SegmentRange`]) counts from the most significant end, so
//! position 0 is index bit `r - 1`. Masks in this module are always raw
//! index masks.

mod dense;
mod predicate;
mod sampling;
mod state;

pub use dense::{dense_operator_matrix, DenseMatrix, DenseOp, DENSE_MAX_QUBITS};
pub use predicate::BasisPredicate;
pub use sampling::ShotHistogram;
pub use state::StateVector;

use thiserror::Error;

/// Largest register the simulator will allocate (2^24 amplitudes, 256 MiB).
pub const MAX_QUBITS: u32 = 24;

/// Norm deviation tolerated by [`StateVector::from_amplitudes`].
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Norm deviation above which sampling refuses the state.
pub const SAMPLING_NORM_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QsimError {
    #[error("qubit count {0} outside supported range 1..={MAX_QUBITS}")]
    QubitCount(u32),
    #[error("amplitude vector length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("basis index {index} out of range for {num_qubits} qubits")]
    IndexOutOfRange { index: usize, num_qubits: u32 },
    #[error("mask {mask:#b} has bits outside a {num_qubits}-qubit index")]
    MaskTooWide { mask: usize, num_qubits: u32 },
    #[error("predicate value {value:#b} sets bits outside its mask {mask:#b}")]
    ValueOutsideMask { mask: usize, value: usize },
    #[error("state norm deviates from 1 by {deviation:e}")]
    NotNormalized { deviation: f64 },
    #[error("shot count must be at least 1")]
    ZeroShots,
    #[error("dense operator oracle limited to {DENSE_MAX_QUBITS} qubits, got {0}")]
    DenseTooLarge(u32),
}

pub type Result<T> = std::result::Result<T, QsimError>;

/// All-ones mask over an `r`-qubit index.
#[inline]
pub fn full_mask(num_qubits: u32) -> usize {
    (1usize << num_qubits) - 1
}

/// Gathers the bits of `x` selected by `mask` into the low bits of the result.
#[inline]
pub fn extract_bits(x: usize, mask: usize) -> usize {
    let mut out = 0;
    let mut m = mask;
    let mut k = 0;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if x & low != 0 {
            out |= 1 << k;
        }
        k += 1;
        m ^= low;
    }
    out
}

/// Inverse of [`extract_bits`]: scatters the low bits of `x` onto `mask`.
#[inline]
pub fn deposit_bits(x: usize, mask: usize) -> usize {
    let mut out = 0;
    let mut m = mask;
    let mut k = 0;
    while m != 0 {
        let low = m & m.wrapping_neg();
        if x & (1 << k) != 0 {
            out |= low;
        }
        k += 1;
        m ^= low;
    }
    out
}

pub(crate) fn check_mask(mask: usize, num_qubits: u32) -> Result<()> {
    if mask & !full_mask(num_qubits) != 0 {
        return Err(QsimError::MaskTooWide { mask, num_qubits });
    }
    Ok(())
}
