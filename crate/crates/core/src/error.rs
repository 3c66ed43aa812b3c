use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("syntax error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("unknown variable {0:?}")]
    UnknownVariable(String),

    #[error("invalid variable set: {0}")]
    InvalidVariables(String),

    #[error("variable-set mismatch")]
    VariableMismatch,

    #[error("{0}")]
    ZeroPolynomial(&'static str),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("non-isolated singularity")]
    NonIsolated,

    #[error("not a curve germ through the origin: {0}")]
    NotAGerm(String),

    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),

    #[error("extension tower limit exceeded: {0}")]
    TowerLimit(String),

    #[error("reduction step bound {0} exceeded")]
    StepBound(u64),

    #[error("input is not irreducible: {0}")]
    NotIrreducible(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True when the failure indicates a bug rather than bad input or a
    /// mathematical obstruction.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_) | Error::StepBound(_))
    }

    /// True for malformed user input (syntax, unknown names, shapes).
    pub fn is_input(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::UnknownVariable(_)
                | Error::InvalidVariables(_)
                | Error::VariableMismatch
                | Error::DimensionMismatch(_)
                | Error::Io(_)
                | Error::Schema(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Schema(e.to_string())
    }
}
