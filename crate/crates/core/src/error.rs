use thiserror::Error;

/// Errors raised by the algebra, the field evaluator and the verifiers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("not invertible: octonion has zero norm")]
    NotInvertible,

    #[error("{what} must be a unit quaternion, got norm {norm}")]
    NotUnit { what: &'static str, norm: f64 },

    #[error("singular point: {0}")]
    Singular(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("index {index} out of range {range}")]
    IndexOutOfRange { index: usize, range: &'static str },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("fixture error: {0}")]
    Fixture(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
