use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum RunnerError {
    /// Bad flags or configuration values; reported as a usage error.
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] tfim_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

impl RunnerError {
    pub fn config(msg: impl Into<String>) -> Self {
        RunnerError::Config(msg.into())
    }

    pub fn is_usage(&self) -> bool {
        matches!(self, RunnerError::Config(_))
    }
}

pub type RunnerResult<T> = Result<T, RunnerError>;
