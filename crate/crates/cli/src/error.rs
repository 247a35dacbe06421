use std::path::PathBuf;

use thiserror::Error;

use crate::config::ConfigError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error("{0}")]
    Invalid(String),

    #[error(transparent)]
    Core(#[from] huygens_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// The run completed but some of its results are failures.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    /// Process exit status: `1` for bad input, `2` for failed computations.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Invalid(_) | CliError::Io { .. } => 1,
            CliError::Core(e) if e.is_computational() => 2,
            CliError::Core(_) => 1,
            CliError::Failed(_) => 2,
        }
    }
}
