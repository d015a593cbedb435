use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("invalid input in {path}: {message}")]
    Input { path: PathBuf, message: String },
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Library(#[from] kaehler::Error),
    #[error("{0}")]
    CheckFailed(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    /// 0 all pass, 1 check failure, 2 configuration error, 3 I/O error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::CheckFailed(_) | Self::Library(_) => 1,
            Self::Config(_) | Self::Input { .. } => 2,
            Self::Io { .. } => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
