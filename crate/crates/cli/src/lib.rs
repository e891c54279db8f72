//! File formats and subcommand implementations behind the `ci-lattice`
//! binary. Every command returns its report as text plus an exit status, so
//! the binary only handles arguments and I/O.

pub mod commands;
pub mod generate;
pub mod schema;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// The question was answered (including "no").
    Decided = 0,
    VerifyFailed = 1,
    InputError = 2,
    /// No gluing found but the exponent cap was reached somewhere.
    BoundExhausted = 3,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub status: Status,
}
