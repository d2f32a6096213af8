use thiserror::Error;

/// Errors raised by the measures, simulators and readers in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A text input could not be parsed; `line` is 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A tabular input is missing a required column or has a bad cell.
    #[error("schema error in column `{column}`: {message}")]
    Schema { column: String, message: String },

    /// The least-squares design matrix does not have full column rank.
    #[error("rank-deficient design: {0}")]
    RankDeficient(String),

    /// The ODE integration produced a non-finite state.
    #[error("integration diverged at step {step}")]
    Diverged { step: usize },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
