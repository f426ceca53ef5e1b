use std::path::Path;

use thiserror::Error;

/// Failure of an `nsm` command, classified by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable, malformed or inconsistent input.
    #[error("{0}")]
    Input(String),
    /// The algorithm ran but flagged a non-converged result.
    #[error("{0}")]
    NotConverged(String),
    /// Numerical failure during a run.
    #[error("{0}")]
    Runtime(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::NotConverged(_) | CliError::Runtime(_) => 1,
        }
    }

    pub fn input(message: impl Into<String>) -> Self {
        CliError::Input(message.into())
    }

    /// Input error prefixed with the offending path.
    pub fn at(path: &Path, err: impl std::fmt::Display) -> Self {
        CliError::Input(format!("{}: {err}", path.display()))
    }
}

impl From<algorithms::AlgoError> for CliError {
    fn from(e: algorithms::AlgoError) -> Self {
        match e {
            algorithms::AlgoError::NonFinite { .. } => CliError::Runtime(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

macro_rules! input_errors {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Input(e.to_string())
            }
        })*
    };
}

input_errors!(
    pauli_core::PauliError,
    shell_basis::ShellError,
    encodings::EncodingError,
    simulator::SimError,
    ansatz::AnsatzError,
    serde_json::Error,
    csv::Error
);
