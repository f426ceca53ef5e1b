use pauli_core::PauliError;
use thiserror::Error;

/// Errors raised while building or executing circuits.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("circuit has {expected} parameters but {got} values were bound")]
    UnboundParameter { expected: usize, got: usize },

    #[error("qubit {qubit} out of range for {qubits} qubits")]
    QubitOutOfRange { qubit: usize, qubits: usize },

    #[error("gate {0} uses a qubit more than once")]
    OverlappingQubits(String),

    #[error("gate {0} has the wrong number of controls or a missing angle")]
    MalformedGate(String),

    #[error("register sizes differ: {left} vs {right} qubits")]
    SizeMismatch { left: usize, right: usize },

    #[error("state vector norm {0} is not 1")]
    NotNormalized(f64),

    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),

    #[error("{0} must be at least 1")]
    ZeroCount(&'static str),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Pauli(#[from] PauliError),
}

pub type Result<T> = std::result::Result<T, SimError>;
