use num_complex::Complex64;

use super::{AmplitudeSet, Block, EvolutionMode, ModelParams};
use crate::error::{Error, Result};

/// β′² = 2 g² λ_n/λ_{n-1} - k²/16.
pub fn lossy_beta_sq(g: f64, ratio: f64, k: f64) -> f64 {
    2.0 * g * g * ratio - k * k / 16.0
}

/// One block of the printed lossy solution, evaluated verbatim (including its
/// nonzero t = 0 correction and the k² sin term). Accepts k = 0.
pub(crate) fn lossy_block(n: usize, ratio: f64, f: Complex64, g: f64, k: f64, t: f64) -> Result<Block> {
    let beta_sq = lossy_beta_sq(g, ratio, k);
    if beta_sq <= 0.0 {
        return Err(Error::Overdamped { n, beta_sq });
    }
    let beta = beta_sq.sqrt();
    let sqrt_r = ratio.sqrt();
    let b1 = sqrt_r * f * g / (2f64.sqrt() * beta);
    let denom = beta_sq + k * k / 4.0;
    let (s, c) = (beta * t).sin_cos();
    let cc = -2.0 * b1 * (-k * t / 4.0).exp() * s;
    let side = -g * sqrt_r * b1 * ((c - 2.0) / denom + k * k * s / denom) + f / 2f64.sqrt();
    Ok(Block { ca: side, cb: side, cc })
}

/// Printed closed form for the cavity-decay model (Δ′ = 0, g1 = g2, k > 0).
pub fn amplitudes_lossy(params: &ModelParams, t: f64) -> Result<AmplitudeSet> {
    params.validate()?;
    if params.decay <= 0.0 {
        return Err(Error::Config("the lossy closed form needs k > 0".into()));
    }
    if !params.is_resonant_symmetric() {
        return Err(Error::Config(
            "the lossy closed form needs zero detuning, g1 = g2, alpha = 90 deg and psi = 0".into(),
        ));
    }
    let blocks = (1..=params.n_max())
        .map(|n| lossy_block(n, params.ratio(n), params.field()[n], params.g1, params.decay, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(AmplitudeSet::from_blocks(blocks, t, EvolutionMode::PaperLossy))
}

#[cfg(test)]
mod tests {
    use super::super::test_support::params;
    use super::*;
    use crate::ifs::WeightFamily;

    #[test]
    fn beta_prime_example() {
        let b = lossy_beta_sq(1.0, 1.0, 0.1).sqrt();
        assert!((b - (2.0f64 - 0.000625).sqrt()).abs() < 1e-15);
        assert!((b - 1.41399).abs() < 1e-5);
    }

    #[test]
    fn zero_time_keeps_correction_term() {
        let p = params(WeightFamily::Factorial, 0.5, 30).with_decay(0.1);
        let a = amplitudes_lossy(&p, 0.0).unwrap();
        for (n, b) in a.blocks() {
            let r = n as f64;
            let f = p.field()[n];
            let beta_sq = lossy_beta_sq(1.0, r, 0.1);
            let b1 = r.sqrt() * f / (2f64.sqrt() * beta_sq.sqrt());
            let expected = -r.sqrt() * b1 * (-1.0) / (beta_sq + 0.0025) + f / 2f64.sqrt();
            assert_eq!(b.cc.norm(), 0.0);
            assert!((b.ca - expected).norm() < 1e-15);
            assert_eq!(b.ca, b.cb);
        }
    }

    #[test]
    fn continuous_as_decay_vanishes() {
        let f = Complex64::new(0.3, 0.1);
        for n in 1..6 {
            for &t in &[0.5, 7.0, 31.0] {
                let small = lossy_block(n, n as f64, f, 1.0, 1e-6, t).unwrap();
                let zero = lossy_block(n, n as f64, f, 1.0, 0.0, t).unwrap();
                assert!((small.ca - zero.ca).norm() < 1e-6 * t);
                assert!((small.cc - zero.cc).norm() < 1e-6 * t);
            }
        }
    }

    #[test]
    fn overdamped_blocks_are_rejected() {
        let p = params(WeightFamily::Factorial, 0.5, 20)
            .with_couplings(0.01, 0.01)
            .with_decay(1.0);
        assert!(matches!(amplitudes_lossy(&p, 1.0), Err(Error::Overdamped { n: 1, .. })));
    }

    #[test]
    fn requires_positive_decay() {
        let p = params(WeightFamily::Factorial, 0.5, 20);
        assert!(matches!(amplitudes_lossy(&p, 1.0), Err(Error::Config(_))));
    }
}
