use thiserror::Error;

/// Errors raised by the exact and numeric routines of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series has zero constant term")]
    SingularSeries,

    #[error("series constant term must be 1, found {0}")]
    NonUnitConstant(String),

    #[error("truncation order {have} is too small, need at least {need}")]
    InsufficientOrder { have: usize, need: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("pi exponents differ in sum: {left} vs {right}")]
    PiExponentMismatch { left: i64, right: i64 },

    #[error("series is not special through order {order}")]
    NotSpecial { order: usize },

    #[error("tail bound does not clear beta at cutoff {cutoff} (kappa = {kappa}): margin {margin}")]
    CertificationFailed {
        kappa: usize,
        cutoff: usize,
        margin: String,
    },

    #[error("eigenvector polynomial vanishes identically for (d, kappa, n) = ({d}, {kappa}, {n})")]
    DegenerateEigenvector { d: usize, kappa: usize, n: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("quadrature did not converge: estimate {estimate:e} exceeds tolerance {tolerance:e}")]
    NotConverged { estimate: f64, tolerance: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
