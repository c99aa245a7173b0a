//! Nonclassicality witnesses of the reduced cavity field: Mandel Q and optimal
//! normally-ordered quadrature squeezing.
//!
//! Moments come from two engines. [`moments_paper`] evaluates the printed diagonal
//! sums (|C|² times square roots of weight quotients). [`moments_exact`] takes the
//! literal partial trace over the atom and applies the ladder operators to each
//! field component. Both agree on ⟨A†A⟩ and ⟨A†²A²⟩; they differ on ⟨A†⟩ and ⟨A†²⟩.

mod closed;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::{AmplitudeSet, EvolutionMode};
use crate::ifs::{FieldVector, WeightSequence};

pub use closed::mandel_q_closed;

/// Mean photon numbers at or below this leave Q undefined.
pub const MIN_MEAN: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MomentSource {
    PaperDiagonal,
    ExactReduced,
}

/// ⟨A†A⟩, ⟨A†A†AA⟩, ⟨A†⟩ and ⟨A†²⟩ of the reduced field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSet {
    pub m1: f64,
    pub m2: f64,
    pub a1: Complex64,
    pub a2: Complex64,
    pub source: MomentSource,
}

fn check_table(amps: &AmplitudeSet, seq: &WeightSequence) -> Result<()> {
    let needed = amps.n_max() + 2;
    if seq.max_index() < needed {
        return Err(Error::Range {
            index: needed,
            max: seq.max_index(),
        });
    }
    Ok(())
}

/// Printed diagonal moment sums. The excited-state weight is |C_a|² + |C_b|², which is
/// the printed 2|C_a|² whenever C_a = C_b.
pub fn moments_paper(amps: &AmplitudeSet, seq: &WeightSequence) -> Result<MomentSet> {
    check_table(amps, seq)?;
    let (mut m1, mut m2, mut a1, mut a2) = (0.0, 0.0, 0.0, 0.0);
    for (n, b) in amps.blocks() {
        let n = n as i64;
        let side = b.ca.norm_sqr() + b.cb.norm_sqr();
        let ground = b.cc.norm_sqr();
        m1 += side * seq.quotient(n - 1, n - 2) + ground * seq.quotient(n, n - 1);
        m2 += side * seq.quotient(n - 1, n - 3) + ground * seq.quotient(n, n - 2);
        a1 += side * seq.quotient(n, n - 1).sqrt() + ground * seq.quotient(n + 1, n).sqrt();
        a2 += side * seq.quotient(n + 1, n - 1).sqrt() + ground * seq.quotient(n + 2, n).sqrt();
    }
    Ok(MomentSet {
        m1,
        m2,
        a1: Complex64::new(a1, 0.0),
        a2: Complex64::new(a2, 0.0),
        source: MomentSource::PaperDiagonal,
    })
}

/// The three field components φ_a, φ_b, φ_c whose projectors sum to the reduced
/// field density matrix.
pub fn field_components(amps: &AmplitudeSet) -> [FieldVector; 3] {
    let n_max = amps.n_max();
    let zero = Complex64::new(0.0, 0.0);
    let mut fa = vec![zero; n_max + 1];
    let mut fb = vec![zero; n_max + 1];
    let mut fc = vec![zero; n_max + 1];
    for (n, b) in amps.blocks() {
        fa[n - 1] = b.ca;
        fb[n - 1] = b.cb;
        fc[n] = b.cc;
    }
    [fa, fb, fc].map(FieldVector::from_coeffs)
}

/// Expectations in the reduced field state Tr_atom |ψ⟩⟨ψ|.
pub fn moments_exact(amps: &AmplitudeSet, seq: &WeightSequence) -> Result<MomentSet> {
    check_table(amps, seq)?;
    let mut m = MomentSet {
        m1: 0.0,
        m2: 0.0,
        a1: Complex64::new(0.0, 0.0),
        a2: Complex64::new(0.0, 0.0),
        source: MomentSource::ExactReduced,
    };
    for phi in field_components(amps) {
        let lowered = phi.annihilate(seq)?;
        m.m1 += lowered.norm_sqr();
        m.m2 += lowered.annihilate(seq)?.norm_sqr();
        let raised = phi.create(seq)?;
        m.a1 += phi.inner(&raised);
        m.a2 += phi.inner(&raised.create(seq)?);
    }
    Ok(m)
}

/// Q = ⟨A†²A²⟩/⟨A†A⟩ - ⟨A†A⟩, or `None` when the mean photon number vanishes.
pub fn mandel_q(m: &MomentSet) -> Option<f64> {
    (m.m1 > MIN_MEAN).then(|| m.m2 / m.m1 - m.m1)
}

/// S_opt = -2|⟨A†²⟩ - ⟨A†⟩²| + 2⟨A†A⟩ - 2|⟨A†⟩|².
pub fn squeezing_opt(m: &MomentSet) -> f64 {
    -2.0 * (m.a2 - m.a1 * m.a1).norm() + 2.0 * m.m1 - 2.0 * m.a1.norm_sqr()
}

/// Level-n commutator eigenvalue λ_{n+1}/λ_n - λ_n/λ_{n-1}, the reference scale
/// for squeezing in the deformed algebra.
pub fn deformed_uncertainty_floor(seq: &WeightSequence, n: usize) -> Result<f64> {
    seq.commutator_diag(n)
}

/// Witness values at one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessSample {
    pub gt: f64,
    /// Mandel Q; `None` when undefined.
    pub q: Option<f64>,
    pub s_opt: f64,
    pub n_mean: f64,
    pub block_norm: f64,
    pub mode: EvolutionMode,
}

impl WitnessSample {
    pub fn evaluate(amps: &AmplitudeSet, seq: &WeightSequence, gt: f64, source: MomentSource) -> Result<Self> {
        let m = match source {
            MomentSource::PaperDiagonal => moments_paper(amps, seq)?,
            MomentSource::ExactReduced => moments_exact(amps, seq)?,
        };
        Ok(Self {
            gt,
            q: mandel_q(&m),
            s_opt: squeezing_opt(&m),
            n_mean: m.m1,
            block_norm: amps.total_norm(),
            mode: amps.mode,
        })
    }
}
