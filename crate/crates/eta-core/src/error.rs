//! Error type shared by every module in the crate.

use thiserror::Error;

/// Errors produced by evaluation, set construction, and experiment drivers.
#[derive(Debug, Error)]
pub enum EtaError {
    /// The zeta function was evaluated at (or within 1e-12 of) its pole.
    #[error("zeta has a pole at s = 1")]
    PoleAtOne,

    /// Branch tracking detected a jump too large to resolve by step refinement,
    /// which indicates the path runs into a zero of zeta.
    #[error("branch jump at sigma = {sigma}, t = {t}: log zeta moved by {jump:.3} in one refined step")]
    BranchJump { sigma: f64, t: f64, jump: f64 },

    /// A continuation path or evaluation disk meets the cut set.
    #[error("cut violation: {0}")]
    CutViolation(String),

    /// Adaptive quadrature hit the recursion cap before reaching tolerance.
    #[error("quadrature did not reach tolerance {tol:e} (best error estimate {best:e})")]
    ToleranceNotMet { tol: f64, best: f64 },

    /// Input outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The Mellin transform was requested too close to its pole at the origin.
    #[error("mellin transform evaluated within 1e-8 of the pole at s = 0")]
    NearPole,

    /// The zero catalog does not reach high enough for the requested window.
    #[error("catalog too short: need ordinates up to {need}, have {have}")]
    CatalogTooShort { need: f64, have: f64 },

    /// Malformed zero-table line.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Zero ordinates must be strictly increasing.
    #[error("monotonicity error at line {line}: ordinate {value} does not exceed its predecessor")]
    Monotonicity { line: usize, value: f64 },

    /// Sampled-function inputs do not share a grid layout.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// Scan step must be positive.
    #[error("invalid step: {0}")]
    InvalidStep(f64),

    /// An experiment was asked to run with no samples.
    #[error("empty sample")]
    EmptySample,

    /// Exponent vector with zero total frequency but nonzero entries;
    /// impossible for distinct primes, so the input is malformed.
    #[error("zero frequency: sum of n_p * log p vanished for a nonzero exponent vector")]
    ZeroFrequency,

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, EtaError>;
