//! Fixed-step RK4 integration of the per-block equations of motion.
//!
//! Each n-block is an independent 3×3 linear system:
//!
//! ```text
//! Ċ_a = -i g1 √r_n e^{iΔ′t} C_c - (k/2) r_{n-1} C_a
//! Ċ_b = -i g2 √r_n e^{iΔ′t} C_c - (k/2) r_{n-1} C_b
//! Ċ_c = -i e^{-iΔ′t} √r_n (g1 C_a + g2 C_b) - (k/2) r_n C_c
//! ```
//!
//! with r_n = λ_n/λ_{n-1}. The decay terms come from the non-Hermitian -ik/2 A†A
//! acting on the field level each amplitude occupies.

use num_complex::Complex64;

use super::{AmplitudeSet, Block, EvolutionMode, ModelParams};
use crate::error::{Error, Result};

/// Default RK4 resolution: steps per unit of the fastest block Rabi frequency × time.
pub const STEPS_PER_UNIT: f64 = 200.0;

/// Steps per unit of the fastest block decay rate × time, i.e. h·γ ≤ 0.1.
pub const DECAY_STEPS_PER_UNIT: f64 = 10.0;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Step count for integrating over `duration`, resolving every block's Rabi
/// frequency at [`STEPS_PER_UNIT`] and its decay at [`DECAY_STEPS_PER_UNIT`].
pub fn default_steps(params: &ModelParams, duration: f64) -> usize {
    let couplings = params.g1 * params.g1 + params.g2 * params.g2;
    let quarter_detuning_sq = params.detuning * params.detuning / 4.0;
    let (mut omega, mut gamma) = (0.0f64, 0.0f64);
    for n in 1..=params.n_max() {
        let r = params.ratio(n);
        omega = omega.max((quarter_detuning_sq + couplings * r).sqrt());
        gamma = gamma.max(params.decay / 2.0 * r.max(params.ratio(n - 1)));
    }
    let per_unit = (STEPS_PER_UNIT * omega).max(DECAY_STEPS_PER_UNIT * gamma);
    let per_unit = if per_unit > 0.0 { per_unit } else { STEPS_PER_UNIT };
    ((per_unit * duration.abs()).ceil() as usize).max(1)
}

struct BlockSystem {
    g1: f64,
    g2: f64,
    sqrt_r: f64,
    decay_side: f64,
    decay_ground: f64,
    detuning: f64,
}

impl BlockSystem {
    fn new(params: &ModelParams, n: usize) -> Self {
        let half_k = params.decay / 2.0;
        Self {
            g1: params.g1,
            g2: params.g2,
            sqrt_r: params.ratio(n).sqrt(),
            decay_side: half_k * params.ratio(n - 1),
            decay_ground: half_k * params.ratio(n),
            detuning: params.detuning,
        }
    }

    fn derivative(&self, t: f64, y: &[Complex64; 3]) -> [Complex64; 3] {
        let phase = Complex64::from_polar(1.0, self.detuning * t);
        let [ca, cb, cc] = *y;
        [
            -I * self.g1 * self.sqrt_r * phase * cc - self.decay_side * ca,
            -I * self.g2 * self.sqrt_r * phase * cc - self.decay_side * cb,
            -I * phase.conj() * self.sqrt_r * (self.g1 * ca + self.g2 * cb) - self.decay_ground * cc,
        ]
    }

    fn step(&self, t: f64, h: f64, y: &[Complex64; 3]) -> [Complex64; 3] {
        let axpy = |a: &[Complex64; 3], s: f64, b: &[Complex64; 3]| -> [Complex64; 3] {
            [a[0] + b[0] * s, a[1] + b[1] * s, a[2] + b[2] * s]
        };
        let k1 = self.derivative(t, y);
        let k2 = self.derivative(t + h / 2.0, &axpy(y, h / 2.0, &k1));
        let k3 = self.derivative(t + h / 2.0, &axpy(y, h / 2.0, &k2));
        let k4 = self.derivative(t + h, &axpy(y, h, &k3));
        std::array::from_fn(|i| y[i] + (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) * (h / 6.0))
    }
}

/// Integrates from `start` (at time `start.t`) over `duration` in `steps` equal steps.
/// Negative durations integrate backwards.
pub fn integrate_from(params: &ModelParams, start: &AmplitudeSet, duration: f64, steps: usize) -> Result<AmplitudeSet> {
    params.validate()?;
    if steps == 0 {
        return Err(Error::Config("the integrator needs at least one step".into()));
    }
    if start.n_max() != params.n_max() {
        return Err(Error::Config(format!(
            "amplitude set has {} blocks, model has {}",
            start.n_max(),
            params.n_max()
        )));
    }
    let h = duration / steps as f64;
    let t0 = start.t;
    let mut blocks = Vec::with_capacity(params.n_max());
    for (n, block) in start.blocks() {
        let system = BlockSystem::new(params, n);
        let mut y = [block.ca, block.cb, block.cc];
        for i in 0..steps {
            let t = t0 + h * i as f64;
            y = system.step(t, h, &y);
        }
        let out = Block {
            ca: y[0],
            cb: y[1],
            cc: y[2],
        };
        if !out.is_finite() {
            return Err(Error::Integration { n, t: t0 + duration });
        }
        blocks.push(out);
    }
    Ok(AmplitudeSet::from_blocks(
        blocks,
        t0 + duration,
        EvolutionMode::OracleOde,
    ))
}

/// Integrates the equations of motion from the shared t = 0 state to `t`.
pub fn integrate_ode(params: &ModelParams, t: f64, steps: usize) -> Result<AmplitudeSet> {
    integrate_from(params, &AmplitudeSet::initial(params), t, steps)
}

#[cfg(test)]
mod tests {
    use super::super::test_support::params;
    use super::*;
    use crate::ifs::WeightFamily;

    #[test]
    fn matches_exact_resonant_solution() {
        // Hand-solved: C_a = C_b = (F_n/√2) cos β_n t, C_c = -i F_n sin β_n t.
        let p = params(WeightFamily::Factorial, 0.5, 12);
        let t = 50.0 / (2.0 * 12f64).sqrt();
        let a = integrate_ode(&p, t, 10_000).unwrap();
        for (n, b) in a.blocks() {
            let beta = (2.0 * n as f64).sqrt();
            let f = p.field()[n];
            let ca = f / 2f64.sqrt() * (beta * t).cos();
            let cc = -I * f * (beta * t).sin();
            assert!((b.ca - ca).norm() < 1e-8, "n={n}");
            assert!((b.cb - ca).norm() < 1e-8);
            assert!((b.cc - cc).norm() < 1e-8);
        }
    }

    #[test]
    fn conserves_norm_without_decay() {
        for family in [WeightFamily::Factorial, WeightFamily::QBracket { q: 0.5 }] {
            let p = params(family, 0.5, 40).with_couplings(1.0, 0.6).with_detuning(0.3);
            let init = AmplitudeSet::initial(&p).total_norm();
            let a = integrate_ode(&p, 50.0, default_steps(&p, 50.0)).unwrap();
            assert!((a.total_norm() - init).abs() < 1e-8);
        }
    }

    #[test]
    fn time_reversal_recovers_initial_state() {
        let p = params(WeightFamily::QBracketFactorial { q: 0.5 }, 0.5, 30).with_couplings(1.0, 0.7);
        let t = 20.0;
        let steps = default_steps(&p, t);
        let forward = integrate_ode(&p, t, steps).unwrap();
        let reversed = p.clone().with_couplings(-p.g1, -p.g2);
        let mut start = forward.clone();
        start.t = 0.0;
        let back = integrate_from(&reversed, &start, t, steps).unwrap();
        assert!(back.max_deviation(&AmplitudeSet::initial(&p)) < 1e-6);
    }

    #[test]
    fn fourth_order_self_convergence() {
        let p = params(WeightFamily::Factorial, 0.5, 14)
            .with_couplings(1.0, 0.5)
            .with_detuning(0.4);
        let t = 10.0;
        let base = 400;
        let reference = integrate_ode(&p, t, 4 * base).unwrap();
        let coarse = integrate_ode(&p, t, base).unwrap().max_deviation(&reference);
        let fine = integrate_ode(&p, t, 2 * base).unwrap().max_deviation(&reference);
        let ratio = coarse / fine;
        assert!((12.0..22.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn boson_two_level_rabi() {
        let p = params(WeightFamily::Factorial, 0.5, 20)
            .with_couplings(1.0, 0.0)
            .with_atom(0.0, 0.0);
        for &t in &[1.0, 5.5, 17.0] {
            let a = integrate_ode(&p, t, default_steps(&p, t)).unwrap();
            for (n, b) in a.blocks() {
                let expected = p.field()[n].norm_sqr() * ((n as f64).sqrt() * t).sin().powi(2);
                assert!((b.cc.norm_sqr() - expected).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn pure_decay_is_exponential() {
        let k = 0.3;
        let p = params(WeightFamily::QBracket { q: 0.5 }, 0.5, 20)
            .with_couplings(0.0, 0.0)
            .with_decay(k)
            .with_atom(1.1, 0.2);
        let init = AmplitudeSet::initial(&p);
        let t = 4.0;
        let a = integrate_ode(&p, t, 2000).unwrap();
        for (n, b) in a.blocks() {
            let factor = (-(k / 2.0) * p.seq().ratio(n - 1).unwrap() * t).exp();
            assert!((b.ca - init.block(n).ca * factor).norm() < 1e-12);
            assert!((b.cb - init.block(n).cb * factor).norm() < 1e-12);
        }
    }

    #[test]
    fn step_count_follows_fastest_block() {
        let p = params(WeightFamily::FactorialSquared, 0.3, 20);
        let beta_top = 2f64.sqrt() * 20.0;
        assert_eq!(default_steps(&p, 1.0), (STEPS_PER_UNIT * beta_top).ceil() as usize);
        let frozen = params(WeightFamily::Factorial, 0.5, 20)
            .with_couplings(0.0, 0.0)
            .with_decay(2.0);
        assert_eq!(default_steps(&frozen, 1.0), (DECAY_STEPS_PER_UNIT * 20.0) as usize);
        assert_eq!(default_steps(&p, 0.0), 1);
    }

    #[test]
    fn zero_steps_is_a_config_error() {
        let p = params(WeightFamily::Factorial, 0.5, 14);
        assert!(matches!(integrate_ode(&p, 1.0, 0), Err(Error::Config(_))));
    }

    #[test]
    fn non_finite_state_is_reported() {
        let p = params(WeightFamily::Factorial, 0.5, 14);
        let mut start = AmplitudeSet::initial(&p);
        let mut blocks: Vec<Block> = start.blocks().map(|(_, b)| *b).collect();
        blocks[0].ca = Complex64::new(f64::NAN, 0.0);
        start = AmplitudeSet::from_blocks(blocks, 0.0, EvolutionMode::OracleOde);
        assert!(matches!(
            integrate_from(&p, &start, 1.0, 10),
            Err(Error::Integration { n: 1, .. })
        ));
    }
}
