//! Batch front end for `huygens-core`: parameter sweeps, oracle
//! verification, receiver networks and commutator probes.

pub mod config;
mod error;
pub mod network;
pub mod output;
pub mod probe;
pub mod sweep;
pub mod verify;

use std::fs;
use std::io::Write;
use std::path::Path;

pub use error::CliError;

/// Reads and parses a config file.
pub fn load_config(path: &Path) -> Result<config::SweepConfig, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(config::parse_config(&text)?)
}

/// Writes to `path`, or to stdout when `None`.
pub fn emit(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, content).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(content.as_bytes())
                .and_then(|()| out.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}
