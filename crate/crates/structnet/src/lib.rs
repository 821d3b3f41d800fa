//! File formats, DOT export and the `structnet` command line for
//! [`structnet_core`].

pub mod cli;
pub mod dot;
pub mod format;
pub mod report;

use std::path::PathBuf;

use thiserror::Error;

use structnet_core::generate::GenerateError;
use structnet_core::oracle::OracleError;
use structnet_core::ModelError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error("invalid instance: {0}")]
    Model(#[from] ModelError),
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error(transparent)]
    Oracle(OracleError),
}

/// What a command prints and how the process should exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
