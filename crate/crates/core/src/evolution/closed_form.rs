use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::{AmplitudeSet, Block, EvolutionMode, ModelParams};
use crate::error::{Error, Result};
use crate::ifs::WeightSequence;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// β_n = √(Δ′²/4 + (g1² + g2²) λ_n/λ_{n-1}).
pub fn rabi_beta(seq: &WeightSequence, params: &ModelParams, n: usize) -> Result<f64> {
    let r = seq.ratio(n)?;
    Ok((params.detuning * params.detuning / 4.0 + (params.g1 * params.g1 + params.g2 * params.g2) * r).sqrt())
}

/// (e^{ixt} - 1)/x, continuous through x = 0.
fn phase_integral(x: f64, t: f64) -> Complex64 {
    let half = 0.5 * x * t;
    let sinc_part = if x == 0.0 { 0.5 * t } else { half.sin() / x };
    2.0 * I * Complex64::from_polar(1.0, half) * sinc_part
}

/// The general detuned closed form, with F_{n-1} replaced by F_n throughout.
pub fn amplitudes_general(params: &ModelParams, t: f64) -> Result<AmplitudeSet> {
    params.validate()?;
    let (wa, wb) = params.atom_weights();
    let half_detuning = params.detuning / 2.0;
    let mut blocks = Vec::with_capacity(params.n_max());
    for n in 1..=params.n_max() {
        let f = params.field()[n];
        let sqrt_r = params.ratio(n).sqrt();
        let beta = rabi_beta(params.seq(), params, n)?;
        if beta == 0.0 {
            return Err(Error::Degenerate { n });
        }
        let b1 = (params.g1 * sqrt_r * wa * f + params.g2 * sqrt_r * wb * f) / (2.0 * beta);
        let cc = b1
            * (Complex64::from_polar(1.0, -(half_detuning + beta) * t)
                - Complex64::from_polar(1.0, -(half_detuning - beta) * t));
        let bracket = phase_integral(half_detuning + beta, t) - phase_integral(half_detuning - beta, t);
        let ca = -params.g1 * sqrt_r * b1 * bracket + wa * f;
        let cb = -params.g2 * sqrt_r * b1 * bracket + wb * f;
        blocks.push(Block { ca, cb, cc });
    }
    Ok(AmplitudeSet::from_blocks(blocks, t, EvolutionMode::PaperClosedForm))
}

/// The resonant, equal-coupling closed form:
/// C_c = -i F_n sin β_n t, C_a = C_b = -(F_n/√2)(cos β_n t - 2), β_n = g √(2 λ_n/λ_{n-1}).
pub fn amplitudes_resonant(params: &ModelParams, t: f64) -> Result<AmplitudeSet> {
    params.validate()?;
    if !params.is_resonant_symmetric() {
        return Err(Error::Config(
            "resonant closed form needs zero detuning, g1 = g2, alpha = 90 deg and psi = 0".into(),
        ));
    }
    let g = params.g1;
    let blocks = (1..=params.n_max())
        .map(|n| {
            let f = params.field()[n];
            let theta = (2.0 * params.ratio(n)).sqrt() * g * t;
            let side = f * FRAC_1_SQRT_2 * (2.0 - theta.cos());
            Block {
                ca: side,
                cb: side,
                cc: -I * f * theta.sin(),
            }
        })
        .collect();
    Ok(AmplitudeSet::from_blocks(blocks, t, EvolutionMode::PaperClosedForm))
}
