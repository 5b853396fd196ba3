use super::{
    check_mask, extract_bits, full_mask, BasisPredicate, QsimError, Result, MAX_QUBITS,
    NORM_TOLERANCE,
};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Registers at least this long are processed with rayon.
const PAR_MIN_LEN: usize = 1 << 15;
/// Summation granularity; partial sums are always combined in chunk order so
/// parallel and sequential runs produce bit-identical means.
const SUM_CHUNK: usize = 1 << 12;

/// Dense amplitude vector over `2^num_qubits` basis states.
///
/// Kernels never renormalize. Every constructor checks the norm and every
/// kernel is unitary, so the norm stays within [`NORM_TOLERANCE`] of one up
/// to rounding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<[f64; 2]>", into = "Vec<[f64; 2]>")]
pub struct StateVector {
    num_qubits: u32,
    amplitudes: Vec<Complex64>,
}

fn check_qubits(num_qubits: u32) -> Result<()> {
    if num_qubits == 0 || num_qubits > MAX_QUBITS {
        return Err(QsimError::QubitCount(num_qubits));
    }
    Ok(())
}

fn chunked_sum(amps: &[Complex64]) -> Complex64 {
    let partial: Vec<Complex64> = if amps.len() >= PAR_MIN_LEN {
        amps.par_chunks(SUM_CHUNK).map(|c| c.iter().sum()).collect()
    } else {
        amps.chunks(SUM_CHUNK).map(|c| c.iter().sum()).collect()
    };
    partial.iter().sum()
}

fn reflect_slice(amps: &mut [Complex64], twice_mean: Complex64) {
    if amps.len() >= PAR_MIN_LEN {
        amps.par_iter_mut().for_each(|a| *a = twice_mean - *a);
    } else {
        amps.iter_mut().for_each(|a| *a = twice_mean - *a);
    }
}

impl StateVector {
    /// Uniform superposition `H^{⊗r}|0⟩`.
    pub fn uniform(num_qubits: u32) -> Result<Self> {
        check_qubits(num_qubits)?;
        let dim = 1usize << num_qubits;
        let amp = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        Ok(Self {
            num_qubits,
            amplitudes: vec![amp; dim],
        })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(num_qubits: u32, index: usize) -> Result<Self> {
        check_qubits(num_qubits)?;
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(QsimError::IndexOutOfRange { index, num_qubits });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Uniform superposition restricted to the states matching `pred`.
    pub fn uniform_over(num_qubits: u32, pred: &BasisPredicate) -> Result<Self> {
        check_qubits(num_qubits)?;
        let count = pred.match_count(num_qubits)?;
        let amp = Complex64::new(1.0 / (count as f64).sqrt(), 0.0);
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1usize << num_qubits];
        pred.for_each_match(num_qubits, |i| amplitudes[i] = amp);
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Wraps an explicit amplitude vector; its norm must be 1 within
    /// [`NORM_TOLERANCE`].
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if !len.is_power_of_two() {
            return Err(QsimError::NotPowerOfTwo(len));
        }
        let num_qubits = len.trailing_zeros();
        check_qubits(num_qubits)?;
        let state = Self {
            num_qubits,
            amplitudes,
        };
        let deviation = (state.norm() - 1.0).abs();
        if deviation > NORM_TOLERANCE {
            return Err(QsimError::NotNormalized { deviation });
        }
        Ok(state)
    }

    pub fn num_qubits(&self) -> u32 {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amplitudes[index].norm_sqr()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Probability distribution of the bits under `mask`, indexed by the
    /// compacted bit value (see [`super::extract_bits`]).
    pub fn marginal(&self, mask: usize) -> Result<Vec<f64>> {
        check_mask(mask, self.num_qubits)?;
        let mut dist = vec![0.0; 1usize << mask.count_ones()];
        for (i, a) in self.amplitudes.iter().enumerate() {
            dist[extract_bits(i, mask)] += a.norm_sqr();
        }
        Ok(dist)
    }

    /// Negates the amplitude of every basis state matching `pred`.
    pub fn phase_flip(&mut self, pred: &BasisPredicate) -> Result<()> {
        check_mask(pred.mask(), self.num_qubits)?;
        let amps = &mut self.amplitudes;
        pred.for_each_match(self.num_qubits, |i| amps[i] = -amps[i]);
        Ok(())
    }

    /// Inversion about the mean, `a ↦ 2μ − a`, computed independently in
    /// every block. A block is the set of indices sharing the same bits under
    /// `block_mask`; an empty mask gives the global diffuser.
    ///
    /// On a block's amplitudes this is `2|S_l⟩⟨S_l| − I`, i.e. the negated
    /// reflection `−(I − 2|S_l⟩⟨S_l|)`.
    pub fn invert_about_mean(&mut self, block_mask: usize) -> Result<()> {
        let full = full_mask(self.num_qubits);
        check_mask(block_mask, self.num_qubits)?;
        let blocks_bits = block_mask.count_ones();
        let block_len = self.dim() >> blocks_bits;

        if block_mask == 0 {
            let mean = chunked_sum(&self.amplitudes) / self.dim() as f64;
            reflect_slice(&mut self.amplitudes, mean * 2.0);
        } else if block_mask == full & !(full >> blocks_bits) {
            // Leading-bit mask: every block is a contiguous chunk.
            let per_block = |chunk: &mut [Complex64]| {
                let twice_mean = chunked_sum(chunk) * (2.0 / block_len as f64);
                chunk.iter_mut().for_each(|a| *a = twice_mean - *a);
            };
            if self.dim() >= PAR_MIN_LEN && block_len < self.dim() / 2 {
                self.amplitudes
                    .par_chunks_mut(block_len)
                    .for_each(per_block);
            } else {
                self.amplitudes.chunks_mut(block_len).for_each(per_block);
            }
        } else {
            let mut sums = vec![Complex64::new(0.0, 0.0); 1usize << blocks_bits];
            for (i, a) in self.amplitudes.iter().enumerate() {
                sums[extract_bits(i, block_mask)] += a;
            }
            let scale = 2.0 / block_len as f64;
            for (i, a) in self.amplitudes.iter_mut().enumerate() {
                *a = sums[extract_bits(i, block_mask)] * scale - *a;
            }
        }
        Ok(())
    }

    /// Global phase of −1.
    pub fn negate(&mut self) {
        if self.dim() >= PAR_MIN_LEN {
            self.amplitudes.par_iter_mut().for_each(|a| *a = -*a);
        } else {
            self.amplitudes.iter_mut().for_each(|a| *a = -*a);
        }
    }

    #[cfg(test)]
    pub(crate) fn from_raw_unchecked(amplitudes: Vec<Complex64>) -> Self {
        let num_qubits = amplitudes.len().trailing_zeros();
        Self {
            num_qubits,
            amplitudes,
        }
    }
}

impl TryFrom<Vec<[f64; 2]>> for StateVector {
    type Error = QsimError;

    fn try_from(pairs: Vec<[f64; 2]>) -> Result<Self> {
        Self::from_amplitudes(
            pairs
                .into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect(),
        )
    }
}

impl From<StateVector> for Vec<[f64; 2]> {
    fn from(state: StateVector) -> Self {
        state.amplitudes.into_iter().map(|a| [a.re, a.im]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn assert_amps(state: &StateVector, expected: &[f64], tol: f64) {
        assert_eq!(state.dim(), expected.len());
        for (a, e) in state.amplitudes().iter().zip(expected) {
            assert_abs_diff_eq!(a.re, *e, epsilon = tol);
            assert_abs_diff_eq!(a.im, 0.0, epsilon = tol);
        }
    }

    #[test]
    fn uniform_small_registers() {
        assert_amps(&StateVector::uniform(2).unwrap(), &[0.5; 4], 0.0);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_amps(&StateVector::uniform(1).unwrap(), &[h, h], 1e-15);
    }

    #[test]
    fn uniform_twenty_qubits() {
        let s = StateVector::uniform(20).unwrap();
        assert_eq!(s.dim(), 1 << 20);
        for i in [0, 1, 4095, 1 << 19, (1 << 20) - 1] {
            assert_eq!(s.amplitude(i), c(1.0 / 1024.0));
        }
        assert_abs_diff_eq!(s.norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn uniform_rejects_bad_sizes() {
        assert_eq!(StateVector::uniform(0), Err(QsimError::QubitCount(0)));
        assert_eq!(StateVector::uniform(25), Err(QsimError::QubitCount(25)));
    }

    #[test]
    fn phase_flip_single_index() {
        let mut s = StateVector::uniform(2).unwrap();
        s.phase_flip(&BasisPredicate::exact(2, 3).unwrap()).unwrap();
        assert_amps(&s, &[0.5, 0.5, 0.5, -0.5], 0.0);
    }

    #[test]
    fn phase_flip_empty_mask_is_global_phase() {
        let mut s = StateVector::uniform(2).unwrap();
        s.phase_flip(&BasisPredicate::always()).unwrap();
        assert_amps(&s, &[-0.5; 4], 0.0);
    }

    #[test]
    fn phase_flip_top_bits() {
        let mut s = StateVector::uniform(4).unwrap();
        s.phase_flip(&BasisPredicate::new(0b1100, 0b0100).unwrap())
            .unwrap();
        let negated: Vec<usize> = (0..16).filter(|&i| s.amplitude(i).re < 0.0).collect();
        assert_eq!(negated, vec![4, 5, 6, 7]);
    }

    #[test]
    fn phase_flip_rejects_wide_mask() {
        let mut s = StateVector::uniform(2).unwrap();
        let p = BasisPredicate::new(0b100, 0b100).unwrap();
        assert!(matches!(
            s.phase_flip(&p),
            Err(QsimError::MaskTooWide { .. })
        ));
    }

    #[test]
    fn inversion_about_mean_after_flip() {
        let mut s = StateVector::from_amplitudes(vec![c(0.5), c(0.5), c(0.5), c(-0.5)]).unwrap();
        s.invert_about_mean(0).unwrap();
        assert_amps(&s, &[0.0, 0.0, 0.0, 1.0], 1e-15);
    }

    #[test]
    fn block_inversion_leaves_uniform_unchanged() {
        let mut s = StateVector::uniform(4).unwrap();
        s.invert_about_mean(0b1100).unwrap();
        assert_amps(&s, &[0.25; 16], 1e-15);
    }

    #[test]
    fn block_inversion_matches_per_block_formula() {
        // Strided mask takes the general path; compare against explicit blocks.
        let amps: Vec<Complex64> = (0..16).map(|i| c(i as f64 + 1.0)).collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let amps: Vec<Complex64> = amps.into_iter().map(|a| a / norm).collect();
        for mask in [0b0101usize, 0b1100, 0b0011, 0b1111, 0b1000] {
            let mut s = StateVector::from_amplitudes(amps.clone()).unwrap();
            s.invert_about_mean(mask).unwrap();
            for i in 0..16 {
                let block: Vec<usize> = (0..16).filter(|j| j & mask == i & mask).collect();
                let mean: Complex64 =
                    block.iter().map(|&j| amps[j]).sum::<Complex64>() / block.len() as f64;
                assert_abs_diff_eq!(
                    s.amplitude(i).re,
                    (mean * 2.0 - amps[i]).re,
                    epsilon = 1e-14
                );
            }
        }
    }

    #[test]
    fn size_one_blocks_are_identity() {
        let mut s = StateVector::uniform(3).unwrap();
        s.phase_flip(&BasisPredicate::exact(3, 2).unwrap()).unwrap();
        let before = s.clone();
        s.invert_about_mean(0b111).unwrap();
        assert_eq!(s, before);
    }

    #[test]
    fn parallel_and_sequential_paths_agree() {
        // 2^16 amplitudes exercises the rayon branch; the strided mask forces
        // the sequential general path for the same block structure.
        let mut a = StateVector::uniform(16).unwrap();
        a.phase_flip(&BasisPredicate::exact(16, 12345).unwrap())
            .unwrap();
        let mut b = a.clone();
        a.invert_about_mean(0).unwrap();
        let mean = b.amplitudes().iter().sum::<Complex64>() / b.dim() as f64;
        let expected: Vec<Complex64> = b.amplitudes().iter().map(|x| mean * 2.0 - x).collect();
        for (x, y) in a.amplitudes().iter().zip(&expected) {
            assert_abs_diff_eq!(x.re, y.re, epsilon = 1e-12);
        }
        let mask = 0b1100_0000_0000_0000;
        let before = b.clone();
        b.invert_about_mean(mask).unwrap();
        let block_len = 1 << 14;
        for blk in 0..4 {
            let chunk = &before.amplitudes()[blk * block_len..(blk + 1) * block_len];
            let twice_mean = chunk.iter().sum::<Complex64>() * (2.0 / block_len as f64);
            for (off, x) in chunk.iter().enumerate() {
                let got = b.amplitude(blk * block_len + off);
                assert_abs_diff_eq!(got.re, (twice_mean - x).re, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn marginal_over_segment() {
        let s = StateVector::basis(4, 0b1001).unwrap();
        assert_eq!(s.marginal(0b1100).unwrap(), vec![0.0, 0.0, 1.0, 0.0]);
        assert_eq!(s.marginal(0b0011).unwrap(), vec![0.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn uniform_over_predicate() {
        let p = BasisPredicate::new(0b1010, 0b1000).unwrap();
        let s = StateVector::uniform_over(4, &p).unwrap();
        for i in 0..16 {
            let expect = if p.matches(i) { 0.5 } else { 0.0 };
            assert_eq!(s.amplitude(i).re, expect);
        }
    }

    #[test]
    fn from_amplitudes_validates() {
        assert_eq!(
            StateVector::from_amplitudes(vec![c(1.0); 3]),
            Err(QsimError::NotPowerOfTwo(3))
        );
        assert!(matches!(
            StateVector::from_amplitudes(vec![c(1.0), c(1.0)]),
            Err(QsimError::NotNormalized { .. })
        ));
    }

    #[test]
    fn json_fixture_format() {
        let s = StateVector::basis(1, 1).unwrap();
        assert_eq!(serde_json::to_string(&s).unwrap(), "[[0.0,0.0],[1.0,0.0]]");
        let back: StateVector = serde_json::from_str("[[0.6,0.0],[0.0,0.8]]").unwrap();
        assert_eq!(back.amplitude(1), Complex64::new(0.0, 0.8));
        assert!(serde_json::from_str::<StateVector>("[[1.0,0.0],[1.0,0.0]]").is_err());
    }
}
