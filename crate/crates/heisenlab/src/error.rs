//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("operation requires exact coordinates, got float mode")]
    InexactMode,

    #[error("generators are linearly dependent over the reals")]
    DependentGenerators,

    #[error("element lies outside the subgroup: {0}")]
    SupportOutsideSubgroup(String),

    #[error("zero element not allowed here")]
    ZeroElement,

    #[error("twisted polynomials built over different splittings")]
    SplittingMismatch,

    #[error("matrix is singular or numerically singular")]
    SingularMatrix,

    #[error("no valid cube parameter: {0}")]
    NoCubeParameter(String),

    #[error("quadrature resolution too low: self-estimate {0:.3e} exceeds bound")]
    QuadratureResolution(f64),

    #[error("packet dimension {0} too large for quadrature oracle (max {1})")]
    QuadratureDimension(usize, usize),

    #[error("invalid packet: {0}")]
    InvalidPacket(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
