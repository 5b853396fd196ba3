//! Brute-force operator matrices for cross-checking the kernels.
//!
//! Matrices are assembled from the projector definitions
//! (`I − 2|x⟩⟨x|`, `I − 2|S_l⟩⟨S_l|`), never by calling the kernels they
//! are compared against.

use super::{check_mask, full_mask, BasisPredicate, QsimError, Result};
use num_complex::Complex64;

pub const DENSE_MAX_QUBITS: u32 = 6;

/// One factor of a composed operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DenseOp {
    /// `I − 2 Σ_{m ∈ pred} |m⟩⟨m|`
    PhaseFlip(BasisPredicate),
    /// `Σ_blocks (2|S_l⟩⟨S_l|) − I`
    InvertAboutMean { block_mask: usize },
    /// `I − 2 Σ_blocks |S_l⟩⟨S_l|`, the textbook diffusion operator.
    Reflect { block_mask: usize },
    /// `−I`
    Negate,
}

/// Row-major square complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    /// `self · rhs`
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        Self { dim: n, data }
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    fn block_projector(num_qubits: u32, block_mask: usize) -> Self {
        let dim = 1usize << num_qubits;
        let block_len = dim >> block_mask.count_ones();
        let w = Complex64::new(1.0 / block_len as f64, 0.0);
        let mut data = vec![Complex64::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                if i & block_mask == j & block_mask {
                    data[i * dim + j] = w;
                }
            }
        }
        Self { dim, data }
    }

    fn of_op(num_qubits: u32, op: &DenseOp) -> Result<Self> {
        let dim = 1usize << num_qubits;
        let one = Complex64::new(1.0, 0.0);
        let mut m = Self::identity(dim);
        match *op {
            DenseOp::PhaseFlip(pred) => {
                check_mask(pred.mask(), num_qubits)?;
                for i in (0..dim).filter(|&i| pred.matches(i)) {
                    m.data[i * dim + i] = -one;
                }
            }
            DenseOp::InvertAboutMean { block_mask } | DenseOp::Reflect { block_mask } => {
                check_mask(block_mask, num_qubits)?;
                let p = Self::block_projector(num_qubits, block_mask);
                let sign = if matches!(op, DenseOp::Reflect { .. }) {
                    1.0
                } else {
                    -1.0
                };
                for (k, x) in m.data.iter_mut().enumerate() {
                    // Reflect: I − 2P.  InvertAboutMean: 2P − I.
                    *x = (*x - p.data[k] * 2.0) * sign;
                }
            }
            DenseOp::Negate => m.data.iter_mut().for_each(|x| *x = -*x),
        }
        Ok(m)
    }
}

/// Explicit `2^r × 2^r` matrix of `ops` applied in sequence (first element
/// acts first), so the result is `ops[n-1] · … · ops[0]`.
pub fn dense_operator_matrix(num_qubits: u32, ops: &[DenseOp]) -> Result<DenseMatrix> {
    if num_qubits > DENSE_MAX_QUBITS {
        return Err(QsimError::DenseTooLarge(num_qubits));
    }
    if num_qubits == 0 {
        return Err(QsimError::QubitCount(0));
    }
    let mut acc = DenseMatrix::identity(1usize << num_qubits);
    for op in ops {
        acc = DenseMatrix::of_op(num_qubits, op)?.mul(&acc);
    }
    debug_assert!(full_mask(num_qubits) + 1 == acc.dim());
    Ok(acc)
}
