//! Truncated field vectors over the orthonormal basis e_n = |n⟩/√λ_n and the
//! deformed ladder operators acting on them.

use num_complex::Complex64;

use super::weights::WeightSequence;
use crate::error::{Error, Result};

/// Coefficients c_0..c_{n_max} over the orthonormal basis e_n.
///
/// `spill` accumulates the squared magnitude pushed past `n_max` by a creation
/// operator; it is never folded back into the vector.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldVector {
    coeffs: Vec<Complex64>,
    spill: f64,
}

impl FieldVector {
    pub fn zeros(n_max: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); n_max + 1],
            spill: 0.0,
        }
    }

    /// The basis vector e_n.
    pub fn basis(n: usize, n_max: usize) -> Self {
        assert!(n <= n_max, "basis level {n} above n_max {n_max}");
        let mut v = Self::zeros(n_max);
        v.coeffs[n] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a field vector needs at least the vacuum level");
        Self { coeffs, spill: 0.0 }
    }

    pub fn n_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs[n]
    }

    /// Squared magnitude dropped past the top level by creation operators.
    pub fn truncation_loss(&self) -> f64 {
        self.spill
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= 1e-10
    }

    /// ⟨self, other⟩, antilinear in the first argument.
    pub fn inner(&self, other: &FieldVector) -> Complex64 {
        assert_eq!(self.n_max(), other.n_max(), "mismatched truncation");
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn scaled(&self, factor: Complex64) -> FieldVector {
        FieldVector {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
            spill: self.spill * factor.norm_sqr(),
        }
    }

    fn check_table(&self, seq: &WeightSequence) -> Result<()> {
        let needed = self.n_max() + 1;
        if seq.max_index() < needed {
            return Err(Error::Range {
                index: needed,
                max: seq.max_index(),
            });
        }
        Ok(())
    }

    /// A†: e_n ↦ √(λ_{n+1}/λ_n) e_{n+1}.
    pub fn create(&self, seq: &WeightSequence) -> Result<FieldVector> {
        self.check_table(seq)?;
        let top = self.n_max();
        let mut out = FieldVector::zeros(top);
        out.spill = self.spill;
        for (n, c) in self.coeffs.iter().enumerate() {
            let amp = c * seq.ratio(n + 1)?.sqrt();
            if n < top {
                out.coeffs[n + 1] = amp;
            } else {
                out.spill += amp.norm_sqr();
            }
        }
        Ok(out)
    }

    /// A: e_n ↦ √(λ_n/λ_{n-1}) e_{n-1}, e_0 ↦ 0.
    pub fn annihilate(&self, seq: &WeightSequence) -> Result<FieldVector> {
        self.check_table(seq)?;
        let mut out = FieldVector::zeros(self.n_max());
        out.spill = self.spill;
        for n in 1..self.coeffs.len() {
            out.coeffs[n - 1] = self.coeffs[n] * seq.ratio(n)?.sqrt();
        }
        Ok(out)
    }

    /// A†A: e_n ↦ (λ_n/λ_{n-1}) e_n.
    pub fn number(&self, seq: &WeightSequence) -> Result<FieldVector> {
        self.check_table(seq)?;
        let mut out = self.clone();
        for (n, c) in out.coeffs.iter_mut().enumerate() {
            *c *= seq.ratio(n)?;
        }
        Ok(out)
    }
}
