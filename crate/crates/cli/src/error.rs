//! Command failures and their exit codes.

use std::fmt;

use hyptr_core::Error;

pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_DEGENERATE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TruncationTooShallow { .. }
            | Error::NonFiniteSample
            | Error::QuadratureFailure { .. }
            | Error::BilinearRelationViolated(_)
            | Error::CharacteristicResolutionFailed(_)
            | Error::PathThroughBranchPoint => EXIT_NUMERIC,
            Error::InvalidInput(_) => EXIT_USAGE,
            _ => EXIT_DEGENERATE,
        };
        Self { code, message: e.to_string() }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
