use std::io;
use std::path::Path;

use thiserror::Error;

/// Everything a command can fail with. Each variant maps to one exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Verify(String),

    #[error("{0}")]
    Capability(String),

    #[error("{0}")]
    Io(String),

    #[error("{0}")]
    Format(String),

    #[error(transparent)]
    Code(zigzag::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verify(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Capability(_) => 3,
            CliError::Io(_) | CliError::Format(_) => 4,
            CliError::Code(zigzag::Error::CapabilityExceeded { .. }) => 3,
            CliError::Code(_) => 2,
        }
    }

    pub fn io(path: &Path, err: io::Error) -> CliError {
        CliError::Io(format!("{}: {err}", path.display()))
    }
}

impl From<zigzag::Error> for CliError {
    fn from(err: zigzag::Error) -> CliError {
        CliError::Code(err)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
