//! Front end for `selfdual-core`: argument resolution, report types, the
//! JSON code format and the CSV/text projections of every report.

pub mod commands;
pub mod config;
pub mod output;
pub mod schema;

use std::fmt;

use selfdual_core::Error;

/// Process exit status for each failure class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitKind {
    Usage,
    Guard,
    Disagreement,
    Failure,
}

impl ExitKind {
    pub fn code(self) -> i32 {
        match self {
            ExitKind::Usage => 2,
            ExitKind::Guard => 3,
            ExitKind::Disagreement => 4,
            ExitKind::Failure => 1,
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub kind: ExitKind,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { kind: ExitKind::Usage, message: message.into() }
    }

    pub fn failure(message: impl Into<String>) -> Self {
        CliError { kind: ExitKind::Failure, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::Precondition(_) | Error::Domain(_) | Error::Unsupported(_) => ExitKind::Usage,
            Error::GuardExceeded { .. } => ExitKind::Guard,
            _ => ExitKind::Failure,
        };
        let message = match e {
            Error::GuardExceeded { required, guard } => {
                format!("refused: {required} candidates exceed the guard {guard}; rerun with --guard {required} or higher")
            }
            other => other.to_string(),
        };
        CliError { kind, message }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
