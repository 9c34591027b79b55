use thiserror::Error;

/// Errors raised by the exact solver library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not symmetric")]
    NonSymmetric,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("hyperplane normal vector is zero")]
    ZeroNormalVector,
    #[error("row index {index} out of range for {rows} rows")]
    IndexOutOfRange { index: usize, rows: usize },
    #[error("polyhedron is empty")]
    EmptyPolyhedron,
    #[error("objective is not convex")]
    NotConvex,
    #[error("scale limit exceeded: {0}")]
    ScaleLimitExceeded(String),
    #[error("invalid instance spec: {0}")]
    InvalidSpec(String),
    #[error("invalid scalar literal {literal:?}: {reason}")]
    ParseScalar { literal: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn dim_mismatch(what: impl Into<String>) -> Error {
    Error::DimensionMismatch(what.into())
}
