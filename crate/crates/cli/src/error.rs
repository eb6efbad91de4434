use thiserror::Error;

/// Failures that end the process, each with its own exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),

    #[error(transparent)]
    Library(#[from] lerch_zeta::Error),

    #[error("cannot write output: {0}")]
    Output(String),

    /// A verification suite found residuals above tolerance; the report is already printed.
    #[error("{0} sample(s) exceeded the tolerance")]
    CheckFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::CheckFailed(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Library(_) => 3,
            CliError::Output(_) => 4,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Output(e.to_string())
    }
}
