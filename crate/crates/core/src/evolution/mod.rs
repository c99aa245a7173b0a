//! Time-evolved atom-field amplitudes.
//!
//! The state is Σ_n (C_a[n] |a, e_{n-1}⟩ + C_b[n] |b, e_{n-1}⟩ + C_c[n] |c, e_n⟩)
//! for n = 1..=n_max. Amplitudes come either from printed closed forms
//! ([`amplitudes_general`], [`amplitudes_resonant`], [`amplitudes_lossy`]) or from
//! direct RK4 integration of the equations of motion ([`integrate_ode`]).
//! The two routes disagree away from t = 0; both are kept.

mod closed_form;
mod lossy;
mod ode;

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ifs::WeightSequence;

pub use closed_form::{amplitudes_general, amplitudes_resonant, rabi_beta};
pub use lossy::{amplitudes_lossy, lossy_beta_sq};
pub use ode::{default_steps, integrate_from, integrate_ode, DECAY_STEPS_PER_UNIT, STEPS_PER_UNIT};

const PARAM_TOL: f64 = 1e-12;

/// Which route produced an [`AmplitudeSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvolutionMode {
    PaperClosedForm,
    PaperLossy,
    OracleOde,
}

impl EvolutionMode {
    pub fn label(self) -> &'static str {
        match self {
            EvolutionMode::PaperClosedForm => "paper-closed-form",
            EvolutionMode::PaperLossy => "paper-lossy",
            EvolutionMode::OracleOde => "oracle-ode",
        }
    }
}

/// Which initial field amplitude the excited-state coefficients carry at t = 0.
///
/// `Paper` sets C_a[n](0) = cos(α/2) F_n, i.e. it applies F_{n-1} ≈ F_n as the
/// closed forms do. `Exact` uses F_{n-1}, so the reduced field at t = 0 is exactly
/// the initial field. Only the ODE route and [`AmplitudeSet::initial`] honour it;
/// the closed forms are always evaluated as printed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldAlignment {
    #[default]
    Paper,
    Exact,
}

/// Physical parameters of the atom-cavity model.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams {
    pub g1: f64,
    pub g2: f64,
    /// Common detuning Δ′.
    pub detuning: f64,
    /// Atomic superposition angle α (radians).
    pub atom_angle: f64,
    /// Atomic superposition phase ψ (radians).
    pub atom_phase: f64,
    /// Cavity decay rate k ≥ 0.
    pub decay: f64,
    pub alignment: FieldAlignment,
    seq: WeightSequence,
    field: Vec<Complex64>,
}

impl ModelParams {
    /// Resonant, equal-coupling model with the atom in (|a⟩ + |b⟩)/√2.
    pub fn new(seq: WeightSequence, field: Vec<Complex64>, g: f64) -> Result<Self> {
        let params = Self {
            g1: g,
            g2: g,
            detuning: 0.0,
            atom_angle: FRAC_PI_2,
            atom_phase: 0.0,
            decay: 0.0,
            alignment: FieldAlignment::Paper,
            seq,
            field,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn with_couplings(mut self, g1: f64, g2: f64) -> Self {
        self.g1 = g1;
        self.g2 = g2;
        self
    }

    pub fn with_detuning(mut self, detuning: f64) -> Self {
        self.detuning = detuning;
        self
    }

    pub fn with_atom(mut self, angle: f64, phase: f64) -> Self {
        self.atom_angle = angle;
        self.atom_phase = phase;
        self
    }

    pub fn with_decay(mut self, k: f64) -> Self {
        self.decay = k;
        self
    }

    pub fn with_alignment(mut self, alignment: FieldAlignment) -> Self {
        self.alignment = alignment;
        self
    }

    /// Checks invariants; the builder methods do not, so call this after chaining.
    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.g1,
            self.g2,
            self.detuning,
            self.atom_angle,
            self.atom_phase,
            self.decay,
        ];
        if finite.iter().any(|x| !x.is_finite()) {
            return Err(Error::Config("model parameters must be finite".into()));
        }
        if self.decay < 0.0 {
            return Err(Error::Config(format!("decay rate k = {} must be >= 0", self.decay)));
        }
        if self.field.len() < 2 {
            return Err(Error::Config("the field needs at least levels 0 and 1".into()));
        }
        match self.seq.supported_n_max() {
            Some(m) if m >= self.n_max() => Ok(()),
            _ => Err(Error::Range {
                index: self.n_max() + crate::ifs::TABLE_MARGIN,
                max: self.seq.max_index(),
            }),
        }
    }

    pub fn seq(&self) -> &WeightSequence {
        &self.seq
    }

    /// Initial field amplitudes F_0..F_{n_max}.
    pub fn field(&self) -> &[Complex64] {
        &self.field
    }

    pub fn n_max(&self) -> usize {
        self.field.len() - 1
    }

    pub(crate) fn ratio(&self, n: usize) -> f64 {
        self.seq.ratio(n).expect("validated table covers n_max + 2")
    }

    /// Δ′ = 0, g1 = g2, α = 90°, ψ = 0.
    pub fn is_resonant_symmetric(&self) -> bool {
        self.detuning.abs() <= PARAM_TOL
            && (self.g1 - self.g2).abs() <= PARAM_TOL
            && (self.atom_angle - FRAC_PI_2).abs() <= PARAM_TOL
            && self.atom_phase.abs() <= PARAM_TOL
    }

    fn atom_weights(&self) -> (Complex64, Complex64) {
        if (self.atom_angle - FRAC_PI_2).abs() <= PARAM_TOL && self.atom_phase == 0.0 {
            // Equal weights exactly, so every route starts from bitwise the same state.
            let w = Complex64::new(FRAC_1_SQRT_2, 0.0);
            return (w, w);
        }
        let half = self.atom_angle / 2.0;
        (
            Complex64::new(half.cos(), 0.0),
            Complex64::from_polar(half.sin(), -self.atom_phase),
        )
    }
}

/// Amplitudes of one n-block: C_a[n], C_b[n] on field level n-1 and C_c[n] on level n.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Block {
    pub ca: Complex64,
    pub cb: Complex64,
    pub cc: Complex64,
}

impl Block {
    pub fn norm_sqr(&self) -> f64 {
        self.ca.norm_sqr() + self.cb.norm_sqr() + self.cc.norm_sqr()
    }

    pub(crate) fn is_finite(&self) -> bool {
        self.ca.is_finite() && self.cb.is_finite() && self.cc.is_finite()
    }
}

/// Amplitudes for n = 1..=n_max at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeSet {
    blocks: Vec<Block>,
    pub t: f64,
    pub mode: EvolutionMode,
}

impl AmplitudeSet {
    pub fn from_blocks(blocks: Vec<Block>, t: f64, mode: EvolutionMode) -> Self {
        Self { blocks, t, mode }
    }

    /// The t = 0 state shared by every route.
    pub fn initial(params: &ModelParams) -> Self {
        let (wa, wb) = params.atom_weights();
        let field = params.field();
        let blocks = (1..=params.n_max())
            .map(|n| {
                let f = match params.alignment {
                    FieldAlignment::Paper => field[n],
                    FieldAlignment::Exact => field[n - 1],
                };
                Block {
                    ca: wa * f,
                    cb: wb * f,
                    cc: Complex64::new(0.0, 0.0),
                }
            })
            .collect();
        Self {
            blocks,
            t: 0.0,
            mode: EvolutionMode::PaperClosedForm,
        }
    }

    pub fn n_max(&self) -> usize {
        self.blocks.len()
    }

    /// Block n, for 1 ≤ n ≤ n_max.
    pub fn block(&self, n: usize) -> &Block {
        &self.blocks[n - 1]
    }

    /// Iterates `(n, block)` in ascending n.
    pub fn blocks(&self) -> impl Iterator<Item = (usize, &Block)> {
        self.blocks.iter().enumerate().map(|(i, b)| (i + 1, b))
    }

    pub fn block_norm(&self, n: usize) -> f64 {
        self.block(n).norm_sqr()
    }

    /// Σ_n (|C_a|² + |C_b|² + |C_c|²).
    pub fn total_norm(&self) -> f64 {
        self.blocks.iter().map(Block::norm_sqr).sum()
    }

    /// Largest componentwise difference to another set.
    pub fn max_deviation(&self, other: &AmplitudeSet) -> f64 {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a.ca - b.ca).norm().max((a.cb - b.cb).norm()).max((a.cc - b.cc).norm()))
            .fold(0.0, f64::max)
    }
}

/// Dispatches to the closed form, lossy form or ODE oracle.
pub fn evolve(mode: EvolutionMode, params: &ModelParams, t: f64) -> Result<AmplitudeSet> {
    params.validate()?;
    match mode {
        EvolutionMode::PaperClosedForm => {
            if params.decay != 0.0 {
                return Err(Error::Config(
                    "the lossless closed form ignores decay; use the lossy mode for k > 0".into(),
                ));
            }
            if params.is_resonant_symmetric() {
                amplitudes_resonant(params, t)
            } else {
                amplitudes_general(params, t)
            }
        }
        EvolutionMode::PaperLossy => amplitudes_lossy(params, t),
        EvolutionMode::OracleOde => integrate_ode(params, t, default_steps(params, t)),
    }
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;
    use crate::ifs::{initial_amplitudes, CoherentSpec, WeightFamily};

    pub fn params(family: WeightFamily, nbar: f64, n_max: usize) -> ModelParams {
        let seq = WeightSequence::new(family, n_max).unwrap();
        let field = initial_amplitudes(&CoherentSpec::paper(nbar, 0.0), &seq, n_max).unwrap();
        ModelParams::new(seq, field, 1.0).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::test_support::params;
    use super::*;
    use crate::ifs::WeightFamily;

    #[test]
    fn initial_state_splits_field_evenly() {
        let p = params(WeightFamily::Factorial, 0.5, 30);
        let init = AmplitudeSet::initial(&p);
        for (n, b) in init.blocks() {
            let expected = p.field()[n] * FRAC_1_SQRT_2;
            assert!((b.ca - expected).norm() < 1e-15);
            assert!((b.cb - expected).norm() < 1e-15);
            assert_eq!(b.cc.norm(), 0.0);
        }
    }

    #[test]
    fn exact_alignment_shifts_field() {
        let p = params(WeightFamily::Factorial, 0.5, 30).with_alignment(FieldAlignment::Exact);
        let init = AmplitudeSet::initial(&p);
        assert!((init.block(1).ca - p.field()[0] / 2f64.sqrt()).norm() < 1e-15);
    }

    #[test]
    fn evolve_closed_form_at_zero_is_initial() {
        let p = params(WeightFamily::QBracket { q: 0.5 }, 0.5, 30);
        let a = evolve(EvolutionMode::PaperClosedForm, &p, 0.0).unwrap();
        assert!(a.max_deviation(&AmplitudeSet::initial(&p)) < 1e-15);
        assert_eq!(a.mode, EvolutionMode::PaperClosedForm);
    }

    #[test]
    fn evolve_rejects_incompatible_modes() {
        let p = params(WeightFamily::Factorial, 0.5, 30);
        assert!(matches!(
            evolve(EvolutionMode::PaperLossy, &p, 1.0),
            Err(Error::Config(_))
        ));
        let lossy = p.clone().with_decay(0.1);
        assert!(matches!(
            evolve(EvolutionMode::PaperClosedForm, &lossy, 1.0),
            Err(Error::Config(_))
        ));
        let bad = p.with_decay(-1.0);
        assert!(bad.validate().is_err());
    }

    #[test]
    fn paper_and_oracle_diverge_at_half_period() {
        // At β_n t = π the closed form gives block norm 9|F_n|², the ODE keeps |F_n|².
        let p = params(WeightFamily::Factorial, 0.5, 30);
        let t = std::f64::consts::PI / 2f64.sqrt(); // β_1 = √2
        let paper = evolve(EvolutionMode::PaperClosedForm, &p, t).unwrap();
        let oracle = evolve(EvolutionMode::OracleOde, &p, t).unwrap();
        let f1 = p.field()[1].norm_sqr();
        assert!((paper.block_norm(1) - 9.0 * f1).abs() < 1e-12);
        assert!((oracle.block_norm(1) - f1).abs() < 1e-10);
        let rel = (paper.block_norm(1) - oracle.block_norm(1)).abs() / oracle.block_norm(1);
        assert!(rel > 1.0 && rel < 10.0);
    }

    #[test]
    fn lossy_mode_is_finite_over_figure_window() {
        let p = params(WeightFamily::Factorial, 0.5, 40).with_decay(0.1);
        for i in 0..=500 {
            let t = 50.0 * i as f64 / 500.0;
            let a = evolve(EvolutionMode::PaperLossy, &p, t).unwrap();
            assert!(a.blocks().all(|(_, b)| b.is_finite()));
        }
    }

    #[test]
    fn short_weight_table_is_rejected() {
        let seq = WeightSequence::new(WeightFamily::Factorial, 5).unwrap();
        let field = vec![Complex64::new(1.0, 0.0); 11];
        assert!(ModelParams::new(seq, field, 1.0).is_err());
    }
}
