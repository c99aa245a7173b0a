//! A V-type three-level atom coupled to one cavity mode whose Fock space carries
//! weights λ_n (an interacting Fock space).
//!
//! * [`ifs`]: weight sequences, truncated field vectors, deformed ladder operators
//!   and coherent vectors.
//! * [`evolution`]: printed closed-form amplitudes (lossless and lossy) and an RK4
//!   oracle for the equations of motion.
//! * [`witnesses`]: Mandel Q and optimal quadrature squeezing from two moment engines.
//! * [`sweep`]: time-grid scans, figure presets and paper-vs-oracle reports.

pub mod error;
pub mod evolution;
pub mod ifs;
pub mod sweep;
pub mod witnesses;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Which quotient terms enter the moment sums; echoed into run metadata.
pub const INDEX_CONVENTION: &str = "a weight-quotient term contributes only when every weight index in it is >= 0";
