use thiserror::Error;

/// Errors produced by the library.
///
/// Check failures (a graph that is not intersecting, a violated bound) are
/// never errors; they are reported as values. Errors cover bad input,
/// arithmetic that would leave the supported range, and work budgets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("count overflow: {0}")]
    Overflow(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("hypothesis fails: {0}")]
    Hypothesis(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn parse(offset: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: msg.into(),
        }
    }

    /// Short machine-readable tag, used in JSON error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::Parse { .. } => "parse",
            Error::Overflow(_) => "overflow",
            Error::Budget(_) => "budget",
            Error::Hypothesis(_) => "hypothesis",
            Error::Invariant(_) => "invariant",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
