use std::path::Path;

use thiserror::Error;

/// Command-level failures, each mapped to a stable process exit code:
/// usage = 2, numeric = 3, I/O = 4.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) => 2,
            Self::Numeric(_) => 3,
            Self::Io(_) => 4,
        }
    }

    pub fn io(path: &Path, err: std::io::Error) -> Self {
        Self::Io(format!("{}: {err}", path.display()))
    }
}

impl From<sqzlink::Error> for CliError {
    fn from(err: sqzlink::Error) -> Self {
        match err {
            sqzlink::Error::Numeric(msg) => Self::Numeric(msg),
            other => Self::Usage(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
