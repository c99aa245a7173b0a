//! Coherent vectors and initial field amplitudes.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::field::FieldVector;
use super::weights::WeightSequence;
use crate::error::{Error, Result};

/// Largest tail mass a truncated initial field may leave behind.
pub const TAIL_LIMIT: f64 = 1e-12;

const MAX_SERIES_TERMS: usize = 100_000;

/// How the initial field amplitudes are generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoherentStyle {
    /// Boson coherent amplitudes F_n = e^{-n̄/2} n̄^{n/2} e^{iζn}/√(n!) whatever λ is.
    #[default]
    PaperAmplitudes,
    /// Coefficients of the interacting-Fock-space coherent vector f_α, α = √n̄ e^{iζ}.
    IfsCoherent,
}

/// An initial coherent field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherentSpec {
    pub nbar: f64,
    pub zeta: f64,
    #[serde(default)]
    pub style: CoherentStyle,
}

impl CoherentSpec {
    pub fn paper(nbar: f64, zeta: f64) -> Self {
        Self {
            nbar,
            zeta,
            style: CoherentStyle::PaperAmplitudes,
        }
    }

    pub fn alpha(&self) -> Complex64 {
        Complex64::from_polar(self.nbar.sqrt(), self.zeta)
    }
}

/// Terms |α|^{2n}/λ_n of ψ(|α|²), generated by successive ratios until they are
/// negligible. Stops early where the weights vanish.
fn psi_terms(seq: &WeightSequence, alpha_sq: f64, at_least: usize) -> Result<Vec<f64>> {
    let mut terms = vec![1.0];
    let mut total = 1.0;
    let mut n = 1;
    while let Some(r) = seq.extended_ratio(n) {
        if r == 0.0 {
            break;
        }
        let term = terms[n - 1] * alpha_sq / r;
        if !term.is_finite() {
            return Err(Error::Divergent { alpha_sq });
        }
        terms.push(term);
        total += term;
        if n > at_least && term < 1e-20 * total && term <= terms[n - 1] {
            break;
        }
        n += 1;
        if n > MAX_SERIES_TERMS {
            return Err(Error::Divergent { alpha_sq });
        }
    }
    Ok(terms)
}

/// Smallest level m such that the mass in levels above m is below `limit`.
fn suggest_n_max(weights: &[f64], limit: f64) -> usize {
    let total: f64 = weights.iter().sum();
    let mut tail = 0.0;
    for (m, w) in weights.iter().enumerate().rev() {
        if tail + w >= limit * total {
            return m;
        }
        tail += w;
    }
    0
}

fn check_tail(weights: &[f64], n_max: usize) -> Result<()> {
    let total: f64 = weights.iter().sum();
    let tail: f64 = weights.iter().skip(n_max + 1).sum::<f64>() / total;
    if tail >= TAIL_LIMIT {
        return Err(Error::Truncation {
            n_max,
            tail,
            limit: TAIL_LIMIT,
            suggested: suggest_n_max(weights, TAIL_LIMIT),
        });
    }
    Ok(())
}

/// The coherent vector f_α truncated at `n_max`, in orthonormal-basis coefficients
/// c_n = ψ(|α|²)^{-1/2} α^n/√λ_n.
pub fn coherent_vector(seq: &WeightSequence, alpha: Complex64, n_max: usize) -> Result<FieldVector> {
    let terms = psi_terms(seq, alpha.norm_sqr(), n_max)?;
    check_tail(&terms, n_max)?;
    let psi: f64 = terms.iter().sum();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n_max + 1];
    coeffs[0] = Complex64::new(psi.powf(-0.5), 0.0);
    for n in 1..=n_max {
        let r = seq.extended_ratio(n).unwrap_or(0.0);
        if r == 0.0 {
            break;
        }
        coeffs[n] = coeffs[n - 1] * alpha / r.sqrt();
    }
    Ok(FieldVector::from_coeffs(coeffs))
}

/// Poisson weights p_n for n = 0.. until negligible, computed in log space.
fn poisson_weights(nbar: f64, at_least: usize) -> Vec<f64> {
    if nbar == 0.0 {
        return vec![1.0];
    }
    let ln_nbar = nbar.ln();
    let mut ln_p = -nbar;
    let mut out = vec![ln_p.exp()];
    let mut n = 1usize;
    loop {
        ln_p += ln_nbar - (n as f64).ln();
        let p = ln_p.exp();
        out.push(p);
        if n > at_least && (n as f64) > nbar && p < 1e-30 {
            break;
        }
        n += 1;
    }
    out
}

/// Initial field amplitudes F_0..F_{n_max}.
pub fn initial_amplitudes(spec: &CoherentSpec, seq: &WeightSequence, n_max: usize) -> Result<Vec<Complex64>> {
    if !(spec.nbar >= 0.0 && spec.nbar.is_finite()) {
        return Err(Error::Config(format!("nbar = {} must be finite and >= 0", spec.nbar)));
    }
    match spec.style {
        CoherentStyle::PaperAmplitudes => {
            let weights = poisson_weights(spec.nbar, n_max);
            check_tail(&weights, n_max)?;
            Ok((0..=n_max)
                .map(|n| {
                    let p = weights.get(n).copied().unwrap_or(0.0);
                    Complex64::from_polar(p.sqrt(), spec.zeta * n as f64)
                })
                .collect())
        }
        CoherentStyle::IfsCoherent => Ok(coherent_vector(seq, spec.alpha(), n_max)?.coeffs().to_vec()),
    }
}
