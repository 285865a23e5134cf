use thiserror::Error;

/// Errors raised by the geometry engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid group element: determinant {det:e}")]
    SingularElement { det: f64 },
    #[error("frame is degenerate at {point:?}: {reason}")]
    DegenerateFrame { point: Vec<f64>, reason: String },
    #[error("unsupported dimension {found} (supported: {supported})")]
    UnsupportedDimension { found: usize, supported: &'static str },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("value space mismatch: {0}")]
    ValueSpaceMismatch(String),
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("connection is not reducible: metricity residual {residual:e} at {witness:?}")]
    NotReducible { residual: f64, witness: Vec<f64> },
    #[error("direction `{name}` rejected: {reason}")]
    InadmissibleDirection { name: String, reason: String },
    #[error("unknown perturbation direction `{0}`")]
    UnknownDirection(String),
    #[error("field is not polynomial and cannot be serialized: {0}")]
    NotPolynomial(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
