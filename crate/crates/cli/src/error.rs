use std::path::PathBuf;

use thiserror::Error;

use crate::scenario::ParseError;

/// Anything that makes a command unable to run. All of these exit with
/// status 2; a command that runs and finds a failed check exits with 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Scenario { path: PathBuf, source: ParseError },

    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Core(#[from] towerlim_core::Error),
}
