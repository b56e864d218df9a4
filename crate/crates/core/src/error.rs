use thiserror::Error;

/// Errors raised by the algebra, the parsers, and the structure checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("input error: {0}")]
    Input(String),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("mode violation: {0}")]
    ModeViolation(String),

    #[error("twist error: {0}")]
    Twist(String),

    #[error("reduction error: {0}")]
    Reduction(String),

    #[error("parity error: {0}")]
    Parity(String),

    #[error("structure error: {0}")]
    Structure(String),

    #[error("unrepresentable deformation: 1 + lambda'^2 = {value} is not a rational square")]
    Unrepresentable { value: String },

    #[error("metric error: {0}")]
    Metric(String),

    #[error("degenerate pairing: {0}")]
    Degenerate(String),

    #[error("duality error: {0}")]
    Duality(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    pub(crate) fn dims(expected: usize, found: usize) -> Self {
        Error::DimensionMismatch { expected, found }
    }
}
