use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed input file. `line` and `column` are 1-based.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// Input parsed but violates one or more scenario invariants.
    #[error("invalid scenario: {}", .0.join("; "))]
    Validation(Vec<String>),

    #[error("unknown supplier `{0}`")]
    UnknownSupplier(String),

    #[error("instance too large for exhaustive oracle: {0}")]
    InstanceTooLarge(String),

    #[error("{count} suppliers exceeds the subset sweep limit of {limit}")]
    TooManySuppliers { count: usize, limit: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("cost distribution is empty")]
    EmptyDistribution,

    #[error("the full supplier set cannot meet demand")]
    InfeasibleBaseline,
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameters(msg.into())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}
