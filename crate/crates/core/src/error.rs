use thiserror::Error;

/// Errors raised by the simulation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("weight index {index} is outside the tabulated range 0..={max}")]
    Range { index: usize, max: usize },

    #[error("invalid weight table: {0}")]
    InvalidWeights(String),

    #[error(
        "truncation at n_max = {n_max} leaves tail mass {tail:.3e} (limit {limit:.0e}); \
         try n_max >= {suggested}"
    )]
    Truncation {
        n_max: usize,
        tail: f64,
        limit: f64,
        suggested: usize,
    },

    #[error("coherent series does not converge for |alpha|^2 = {alpha_sq}")]
    Divergent { alpha_sq: f64 },

    #[error("degenerate parameters: Rabi frequency vanishes in block n = {n}")]
    Degenerate { n: usize },

    #[error("overdamped block n = {n}: beta'^2 = {beta_sq:.6e} <= 0")]
    Overdamped { n: usize, beta_sq: f64 },

    #[error("integration produced a non-finite amplitude in block n = {n} at t = {t}")]
    Integration { n: usize, t: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{source} (at gt = {gt})")]
    AtTime { gt: f64, source: Box<Error> },
}

impl Error {
    /// True for failures caused by the numerical domain (truncation, overdamping,
    /// divergence, integration blow-up) rather than by a malformed request.
    pub fn is_numeric_domain(&self) -> bool {
        match self {
            Error::Truncation { .. }
            | Error::Divergent { .. }
            | Error::Degenerate { .. }
            | Error::Overdamped { .. }
            | Error::Integration { .. } => true,
            Error::AtTime { source, .. } => source.is_numeric_domain(),
            Error::Range { .. } | Error::InvalidWeights(_) | Error::Config(_) => false,
        }
    }

    pub(crate) fn at_time(self, gt: f64) -> Error {
        Error::AtTime {
            gt,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
