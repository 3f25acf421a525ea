//! Error type shared by all computation layers.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("extension class has u-degree-0 term")]
    UDegreeZeroTerm,
    #[error("curve does not pass through origin")]
    CurveNotThroughOrigin,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("curve not reduced")]
    NotReduced,
    #[error("non-isolated singularity or cap too small")]
    NonIsolated,
    #[error("unsupported field tower")]
    UnsupportedFieldTower,
    #[error("resolution depth cap exceeded")]
    DepthCapExceeded,
    #[error("presentation bounds too small; rerun with --max-degree")]
    BoundsTooSmall,
    #[error("width computation failed certification")]
    WidthCertification,
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
