// SPDX-License-Identifier: Apache-2.0

//! Errors of the command-line tool and their exit codes.

use thiserror::Error;

/// Exit code for success.
pub const EXIT_OK: u8 = 0;
/// Exit code when a verification or self-test check fails.
pub const EXIT_FAILURE: u8 = 1;
/// Exit code for usage and input errors.
pub const EXIT_USAGE: u8 = 2;

/// Errors reported by the command-line tool.
#[derive(Debug, Error)]
pub enum CliError {
    /// An error from the library.
    #[error(transparent)]
    Core(#[from] wdg_core::Error),
    /// Reading or writing failed.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    /// An input file could not be read.
    #[error("cannot read {path}: {source}")]
    ReadInput {
        path: String,
        source: std::io::Error,
    },
    /// JSON input or output failed.
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    /// CSV output failed.
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    /// Some checks did not pass.
    #[error("{failed} of {total} checks failed")]
    Failed { failed: usize, total: usize },
}

impl CliError {
    /// The process exit code for this error.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(wdg_core::Error::Internal(_) | wdg_core::Error::Overflow(_)) => {
                EXIT_FAILURE
            }
            CliError::Failed { .. } => EXIT_FAILURE,
            CliError::Io(_) | CliError::Csv(_) => EXIT_FAILURE,
            CliError::Core(_) | CliError::Json(_) | CliError::ReadInput { .. } => EXIT_USAGE,
        }
    }
}
