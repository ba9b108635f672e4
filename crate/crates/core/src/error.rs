use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("{what} = {value} exceeds the supported maximum {cap}")]
    TooLarge {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// An exact or exhaustive computation was asked for beyond its budget.
    #[error("refused: {0}")]
    Refused(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// True for budget refusals (exact-mode caps, search budgets).
    pub fn is_refusal(&self) -> bool {
        matches!(self, Error::Refused(_) | Error::TooLarge { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
