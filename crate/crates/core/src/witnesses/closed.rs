use crate::error::Result;
use crate::ifs::{initial_amplitudes, CoherentSpec, WeightSequence};

use super::MIN_MEAN;

/// Closed-form Mandel Q of the resonant solution for an initial coherent field:
///
/// Q = (A′ + B′)/(C′ + D′) - (C′ + D′), with per-level angle θ_n = √(2 λ_n/λ_{n-1}) gt
/// and Poisson weights p_n,
///
/// A′ = Σ p_n (λ_{n-1}/λ_{n-3}) (cos θ_n - 2)²,  B′ = Σ p_n (λ_n/λ_{n-2}) sin² θ_n,
/// C′ = Σ p_n (λ_{n-1}/λ_{n-2}) (cos θ_n - 2)²,  D′ = Σ p_n (λ_n/λ_{n-1}) sin² θ_n.
///
/// A term contributes only when every weight index in its quotient is ≥ 0.
/// Returns `Ok(None)` when C′ + D′ vanishes.
pub fn mandel_q_closed(seq: &WeightSequence, nbar: f64, gt: f64, n_max: usize) -> Result<Option<f64>> {
    let field = initial_amplitudes(&CoherentSpec::paper(nbar, 0.0), seq, n_max)?;
    if seq.max_index() < n_max {
        return Err(crate::error::Error::Range {
            index: n_max,
            max: seq.max_index(),
        });
    }
    let (mut a, mut b, mut c, mut d) = (0.0, 0.0, 0.0, 0.0);
    for (n, f) in field.iter().enumerate() {
        let p = f.norm_sqr();
        let n = n as i64;
        let theta = (2.0 * seq.quotient(n, n - 1)).sqrt() * gt;
        let side = (theta.cos() - 2.0).powi(2);
        let ground = theta.sin().powi(2);
        a += p * seq.quotient(n - 1, n - 3) * side;
        b += p * seq.quotient(n, n - 2) * ground;
        c += p * seq.quotient(n - 1, n - 2) * side;
        d += p * seq.quotient(n, n - 1) * ground;
    }
    let mean = c + d;
    Ok((mean >= MIN_MEAN).then(|| (a + b) / mean - mean))
}
