//! Weight sequences λ_n defining a one-mode interacting Fock space.
//!
//! Every sequence is normalized so that λ_0 = 1. Ratios λ_n/λ_{n-1} are stored
//! alongside the weights; ratio(0) is 0 so that the annihilator kills the vacuum,
//! and any ratio or weight quotient touching a negative index is 0.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default truncation level of the field basis.
pub const DEFAULT_N_MAX: usize = 40;

/// Number of extra levels tabulated above `n_max`; ⟨A†²⟩ on the top level needs λ_{n_max+2}.
pub const TABLE_MARGIN: usize = 2;

/// The family of weights λ_n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum WeightFamily {
    /// λ_n = n!, the ordinary boson Fock space.
    Factorial,
    /// λ_n = (n!)².
    FactorialSquared,
    /// λ_n = [n] = (1 - q^n)/(1 - q) for n ≥ 1, with λ_0 = 1.
    QBracket { q: f64 },
    /// λ_n = [n]! = [1][2]...[n].
    QBracketFactorial { q: f64 },
    /// A user-supplied table.
    Custom,
}

impl WeightFamily {
    /// Short label used in file names and CSV output.
    pub fn label(&self) -> &'static str {
        match self {
            WeightFamily::Factorial => "factorial",
            WeightFamily::FactorialSquared => "factorial2",
            WeightFamily::QBracket { .. } => "qbracket",
            WeightFamily::QBracketFactorial { .. } => "qbracket-factorial",
            WeightFamily::Custom => "custom",
        }
    }

    pub fn q(&self) -> Option<f64> {
        match *self {
            WeightFamily::QBracket { q } | WeightFamily::QBracketFactorial { q } => Some(q),
            _ => None,
        }
    }

    fn validate(&self) -> Result<()> {
        if let Some(q) = self.q() {
            if !(q > 0.0 && q < 1.0) {
                return Err(Error::InvalidWeights(format!("q = {q} must lie in (0, 1)")));
            }
        }
        Ok(())
    }

    /// Analytic λ_n/λ_{n-1} for n ≥ 1; `None` for tabulated families.
    pub(crate) fn analytic_ratio(&self, n: usize) -> Option<f64> {
        if n == 0 {
            return Some(0.0);
        }
        let x = n as f64;
        match *self {
            WeightFamily::Factorial => Some(x),
            WeightFamily::FactorialSquared => Some(x * x),
            WeightFamily::QBracket { q } => {
                if n == 1 {
                    // [1]/[0] with [0] := 1
                    Some(1.0)
                } else {
                    Some(q_bracket(q, n) / q_bracket(q, n - 1))
                }
            }
            WeightFamily::QBracketFactorial { q } => Some(q_bracket(q, n)),
            WeightFamily::Custom => None,
        }
    }
}

/// [n] = (1 - q^n)/(1 - q).
pub fn q_bracket(q: f64, n: usize) -> f64 {
    (1.0 - q.powi(n as i32)) / (1.0 - q)
}

/// Raw numbers of a weight table file, unscaled.
pub fn parse_table_values(text: &str) -> Result<Vec<f64>> {
    let mut raw = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let value: f64 = content
            .parse()
            .map_err(|_| Error::InvalidWeights(format!("line {}: cannot parse {content:?} as a number", lineno + 1)))?;
        raw.push(value);
    }
    Ok(raw)
}

/// A memoized table λ_0..λ_max together with the ratios λ_n/λ_{n-1}.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSequence {
    family: WeightFamily,
    values: Vec<f64>,
    ratios: Vec<f64>,
}

impl WeightSequence {
    /// Tabulates an analytic family through λ_{n_max + 2}.
    pub fn new(family: WeightFamily, n_max: usize) -> Result<Self> {
        family.validate()?;
        if family == WeightFamily::Custom {
            return Err(Error::InvalidWeights(
                "custom weights must be built from a table".into(),
            ));
        }
        let len = n_max + TABLE_MARGIN + 1;
        let mut values = Vec::with_capacity(len);
        let mut ratios = Vec::with_capacity(len);
        values.push(1.0);
        ratios.push(0.0);
        for n in 1..len {
            let r = family.analytic_ratio(n).expect("analytic family");
            let value = values[n - 1] * r;
            if !value.is_finite() {
                return Err(Error::InvalidWeights(format!(
                    "{} weight overflows at n = {n}; lower n_max",
                    family.label()
                )));
            }
            values.push(value);
            ratios.push(r);
        }
        Ok(Self { family, values, ratios })
    }

    /// Builds a custom sequence from λ_0, λ_1, ... The table is rescaled so λ_0 = 1.
    pub fn from_table(raw: &[f64]) -> Result<Self> {
        let first = *raw
            .first()
            .ok_or_else(|| Error::InvalidWeights("empty weight table".into()))?;
        if !(first > 0.0 && first.is_finite()) {
            return Err(Error::InvalidWeights(format!(
                "lambda_0 = {first} must be positive and finite"
            )));
        }
        let mut vanished = false;
        for (n, &v) in raw.iter().enumerate() {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidWeights(format!(
                    "lambda_{n} = {v} must be finite and non-negative"
                )));
            }
            if v == 0.0 {
                vanished = true;
            } else if vanished {
                return Err(Error::InvalidWeights(format!(
                    "lambda_{n} = {v} follows a vanishing weight; once zero, all later weights must be zero"
                )));
            }
        }
        let values: Vec<f64> = raw.iter().map(|v| v / first).collect();
        let ratios = std::iter::once(0.0)
            .chain(values.windows(2).map(|w| if w[0] == 0.0 { 0.0 } else { w[1] / w[0] }))
            .collect();
        Ok(Self {
            family: WeightFamily::Custom,
            values,
            ratios,
        })
    }

    /// Parses the plain-text table format: one λ_n per line, `#` comments and blank
    /// lines ignored.
    pub fn parse_table(text: &str) -> Result<Self> {
        Self::from_table(&parse_table_values(text)?)
    }

    pub fn family(&self) -> WeightFamily {
        self.family
    }

    /// λ_0, λ_1, ... as tabulated.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Largest tabulated index.
    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    /// The largest field truncation level this table supports.
    pub fn supported_n_max(&self) -> Option<usize> {
        self.max_index().checked_sub(TABLE_MARGIN)
    }

    pub fn weight(&self, n: usize) -> Result<f64> {
        self.values.get(n).copied().ok_or(Error::Range {
            index: n,
            max: self.max_index(),
        })
    }

    /// λ_n/λ_{n-1}; 0 at n = 0.
    pub fn ratio(&self, n: usize) -> Result<f64> {
        self.ratios.get(n).copied().ok_or(Error::Range {
            index: n,
            max: self.max_index(),
        })
    }

    /// Eigenvalue of [A, A†] on e_n.
    pub fn commutator_diag(&self, n: usize) -> Result<f64> {
        Ok(self.ratio(n + 1)? - self.ratio(n)?)
    }

    /// λ_n/λ_{n-1} for any signed index, 0 whenever the index is ≤ 0.
    ///
    /// Panics above the table; callers size their loops from `max_index`.
    pub(crate) fn ratio_signed(&self, n: i64) -> f64 {
        if n <= 0 {
            0.0
        } else {
            self.ratios[n as usize]
        }
    }

    /// λ_top/λ_bottom as a product of successive ratios. Zero whenever the bottom
    /// index is negative, matching "term absent because the operator annihilates".
    pub(crate) fn quotient(&self, top: i64, bottom: i64) -> f64 {
        debug_assert!(top >= bottom);
        if bottom < 0 {
            return 0.0;
        }
        ((bottom + 1)..=top).map(|j| self.ratio_signed(j)).product()
    }

    /// Ratio used by series sums that run past the table. Analytic families keep
    /// going; custom tables return `None` once the table ends.
    pub(crate) fn extended_ratio(&self, n: usize) -> Option<f64> {
        match self.ratios.get(n) {
            Some(&r) => Some(r),
            None => self.family.analytic_ratio(n),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(family: WeightFamily) -> WeightSequence {
        WeightSequence::new(family, 10).unwrap()
    }

    const QB: WeightFamily = WeightFamily::QBracket { q: 0.5 };

    #[test]
    fn weight_examples() {
        assert_eq!(seq(WeightFamily::Factorial).weight(4).unwrap(), 24.0);
        assert!((seq(QB).weight(3).unwrap() - 1.75).abs() < 1e-15);
        assert_eq!(seq(WeightFamily::FactorialSquared).weight(3).unwrap(), 36.0);
        assert_eq!(seq(WeightFamily::Factorial).weight(0).unwrap(), 1.0);
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(seq(WeightFamily::Factorial).ratio(5).unwrap(), 5.0);
        for family in [WeightFamily::Factorial, WeightFamily::FactorialSquared, QB] {
            assert_eq!(seq(family).ratio(0).unwrap(), 0.0);
        }
        assert!((seq(QB).ratio(2).unwrap() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn commutator_examples() {
        let f = seq(WeightFamily::Factorial);
        for n in 0..10 {
            assert_eq!(f.commutator_diag(n).unwrap(), 1.0);
        }
        assert!((seq(QB).commutator_diag(1).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(seq(WeightFamily::FactorialSquared).commutator_diag(1).unwrap(), 3.0);
    }

    #[test]
    fn range_errors() {
        let f = seq(WeightFamily::Factorial);
        assert_eq!(f.max_index(), 12);
        assert!(f.weight(12).is_ok());
        assert_eq!(f.weight(13), Err(Error::Range { index: 13, max: 12 }));
        assert!(f.ratio(13).is_err());
    }

    #[test]
    fn q_families_are_bounded() {
        let q = 0.5;
        let qb = seq(WeightFamily::QBracket { q });
        let qbf = seq(WeightFamily::QBracketFactorial { q });
        for n in 1..=12 {
            assert!(qbf.ratio(n).unwrap() <= 1.0 / (1.0 - q));
            assert!((qbf.ratio(n).unwrap() - q_bracket(q, n)).abs() < 1e-15);
        }
        assert!((qb.ratio(12).unwrap() - 1.0).abs() < 1e-3);
    }

    #[test]
    fn rejects_bad_q() {
        assert!(WeightSequence::new(WeightFamily::QBracket { q: 1.0 }, 5).is_err());
        assert!(WeightSequence::new(WeightFamily::QBracketFactorial { q: 0.0 }, 5).is_err());
    }

    #[test]
    fn quotient_convention() {
        let f = seq(WeightFamily::Factorial);
        assert_eq!(f.quotient(4, 2), 12.0);
        assert_eq!(f.quotient(1, -1), 0.0);
        assert_eq!(f.quotient(0, -2), 0.0);
        // λ_1/λ_0 = 1 is kept: both indices are non-negative.
        assert_eq!(f.quotient(1, 0), 1.0);
    }

    #[test]
    fn parses_custom_table() {
        let text = "# weights\n2\n\n4   # lambda_1\n12\n0\n0\n";
        let s = WeightSequence::parse_table(text).unwrap();
        assert_eq!(s.family(), WeightFamily::Custom);
        assert_eq!(s.weight(0).unwrap(), 1.0);
        assert_eq!(s.weight(2).unwrap(), 6.0);
        assert_eq!(s.ratio(2).unwrap(), 3.0);
        assert_eq!(s.ratio(3).unwrap(), 0.0);
        assert_eq!(s.ratio(4).unwrap(), 0.0);
        assert_eq!(s.max_index(), 4);
    }

    #[test]
    fn custom_table_errors() {
        assert!(WeightSequence::parse_table("").is_err());
        assert!(WeightSequence::parse_table("1\nabc\n").is_err());
        assert!(WeightSequence::parse_table("1\n0\n3\n").is_err());
        assert!(WeightSequence::parse_table("0\n1\n").is_err());
        assert!(WeightSequence::parse_table("1\n-2\n").is_err());
    }

    #[test]
    fn factorial_squared_overflow_is_reported() {
        assert!(WeightSequence::new(WeightFamily::FactorialSquared, 200).is_err());
    }
}
