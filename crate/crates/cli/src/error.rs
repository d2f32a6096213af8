use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 2;
    pub const ACCEPTANCE: i32 = 3;
    pub const DIVERGED: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] phic_core::Error),

    #[error("{path}: {source}")]
    File {
        path: String,
        source: std::io::Error,
    },

    #[error("{0}")]
    Usage(String),

    /// The computed report disagrees with the reference beyond the threshold.
    /// The report has already been written.
    #[error("acceptance check failed: {0}")]
    Acceptance(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(phic_core::Error::Diverged { .. }) => exit::DIVERGED,
            CliError::Acceptance(_) => exit::ACCEPTANCE,
            _ => exit::INPUT,
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(format!("json encoding failed: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
