//! File formats, subcommands and the benchmark harness for `c4free-core`.

pub mod bench;
pub mod commands;
pub mod io;
pub mod report;

use std::path::PathBuf;

use thiserror::Error;

/// Exit status of a successful run.
pub const EXIT_OK: u8 = 0;
/// The checked object is invalid.
pub const EXIT_INVALID: u8 = 1;
/// Bad usage, unreadable input or an unmet precondition.
pub const EXIT_ERROR: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("file error: {}: {source}", path.display())]
    File {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parse error: {}: {source}", path.display())]
    Parse { path: PathBuf, source: io::ParseError },
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("output error: {0}")]
    Output(#[from] std::io::Error),
    #[error("output error: {0}")]
    Csv(#[from] csv::Error),
    #[error("output error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => EXIT_INVALID,
            _ => EXIT_ERROR,
        }
    }
}
