use std::path::PathBuf;

use mobius_walk::WalkError;
use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const VALIDATION: u8 = 1;
    pub const NUMERICAL: u8 = 2;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid `{field}`: {reason}")]
    Invalid { field: &'static str, reason: String },

    #[error("cannot read config {path}: {reason}")]
    Config { path: PathBuf, reason: String },

    #[error(transparent)]
    Walk(#[from] WalkError),

    #[error("I/O failure on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{failed} of {total} verification checks failed")]
    VerificationFailed { failed: usize, total: usize },
}

impl CliError {
    pub fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        CliError::Invalid {
            field,
            reason: reason.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid { .. } | CliError::Config { .. } | CliError::Io { .. } => exit::VALIDATION,
            CliError::Walk(e) => match e {
                WalkError::IncompleteEigensystem { .. } | WalkError::EigConvergenceFailure { .. } => {
                    exit::NUMERICAL
                }
                _ => exit::VALIDATION,
            },
            CliError::VerificationFailed { .. } => exit::NUMERICAL,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
