//! Argument definitions and output renderings for the `gts` binary.

pub mod args;
pub mod report;

use gts_core::oracle::OracleError;
use thiserror::Error;

/// Failure of a subcommand; [`CliError::exit_code`] maps it to the process
/// exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Budget(OracleError),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}
