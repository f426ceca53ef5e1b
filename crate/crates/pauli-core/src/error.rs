use thiserror::Error;

/// Errors raised by Pauli algebra, dense conversion and file parsing.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum PauliError {
    #[error("qubit count mismatch: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },

    #[error("{qubits} qubits exceed the supported maximum of {max}")]
    TooManyQubits { qubits: usize, max: usize },

    #[error("invalid Pauli letter {0:?}")]
    InvalidLetter(char),

    #[error("matrix is not hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not square with power-of-two dimension (got {rows}x{cols})")]
    BadDimension { rows: usize, cols: usize },

    #[error("duplicate basis state {0:b}")]
    DuplicateState(u64),

    #[error("basis state {state:b} does not fit in {qubits} qubits")]
    StateOutOfRange { state: u64, qubits: usize },

    #[error("invalid bitstring {0:?}")]
    InvalidBitstring(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("coefficient of {word} has imaginary part {imag:.3e}; file format stores real values")]
    ComplexCoefficient { word: String, imag: f64 },

    #[error("empty Pauli sum")]
    Empty,
}

pub type Result<T> = std::result::Result<T, PauliError>;
