use thiserror::Error;

/// Errors that stop a command before it can report checks.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input; exit status 2.
    #[error("input error: {0}")]
    Input(String),
    /// The command refused to run on data that failed validation; exit status 1.
    #[error("{0}")]
    Refused(String),
    #[error(transparent)]
    Core(#[from] hilbext_core::Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Refused(_) => 1,
            _ => 2,
        }
    }
}
