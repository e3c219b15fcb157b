//! Errors of the command-line front end and their exit codes.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable files, malformed JSON, or documents of the wrong shape.
    #[error("input error: {0}")]
    Input(String),
    /// A library error on well-formed input.
    #[error("{name}: {0}", name = .0.name())]
    Domain(#[from] symspace::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
