use pauli_core::PauliError;
use shell_basis::ShellError;
use thiserror::Error;

/// Errors raised while building encoding maps or transforming Hamiltonians.
#[derive(Debug, Error)]
pub enum EncodingError {
    #[error(transparent)]
    Pauli(#[from] PauliError),

    #[error(transparent)]
    Shell(#[from] ShellError),

    #[error("invalid codeword set: {0}")]
    InvalidCodes(String),

    #[error("operation requires the {expected} scheme, map uses {found}")]
    SchemeMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("{orbitals} orbitals exceed the supported maximum of {max}")]
    TooManyOrbitals { orbitals: usize, max: usize },

    #[error(
        "coupling {coupling:.3e} between mapped and unmapped codewords exceeds {tolerance:.1e}"
    )]
    Leakage { coupling: f64, tolerance: f64 },

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, EncodingError>;
