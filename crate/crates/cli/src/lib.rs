//! Command implementations behind the `cmn` binary.
//!
//! Each command returns its report as a string (JSON or CSV) so the thin
//! binary — and the test suite — can route it to stdout or a file.

pub mod commands;

use thiserror::Error;

/// CLI failure classes, mapped to exit codes so automation can distinguish
/// bad inputs (1) from violated numerical invariants (2).
#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Invariant(_) => 2,
        }
    }
}

impl From<cmn_core::Error> for CliError {
    fn from(err: cmn_core::Error) -> Self {
        match err {
            cmn_core::Error::NegativeDiscord(_) => CliError::Invariant(err.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::Input(err.to_string())
    }
}
