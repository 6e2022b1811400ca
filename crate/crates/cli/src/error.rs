use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input { path: String, source: bsssp::Error },
    #[error(transparent)]
    Core(#[from] bsssp::Error),
    #[error("{0}")]
    Mismatch(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("writing output: {0}")]
    Output(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch(_) => EXIT_MISMATCH,
            CliError::Invariant(_) | CliError::Output(_) => EXIT_INTERNAL,
            CliError::Core(e) if is_internal(e) => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        }
    }
}

pub fn is_internal(e: &bsssp::Error) -> bool {
    matches!(
        e,
        bsssp::Error::InternalInconsistency { .. }
            | bsssp::Error::InvariantViolation(_)
            | bsssp::Error::BadBundleStructure(_)
    )
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
