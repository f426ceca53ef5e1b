use ansatz::AnsatzError;
use pauli_core::PauliError;
use simulator::SimError;
use thiserror::Error;

/// Errors raised by the variational algorithms.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgoError {
    #[error(transparent)]
    Sim(#[from] SimError),

    #[error(transparent)]
    Pauli(#[from] PauliError),

    #[error(transparent)]
    Ansatz(#[from] AnsatzError),

    #[error("cost function returned {value} at evaluation {evaluation}")]
    NonFinite { evaluation: u64, value: f64 },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{expected} parameters expected, got {got}")]
    ParameterCount { expected: usize, got: usize },

    #[error("Hamiltonian acts on {hamiltonian} qubits but the circuit on {circuit}")]
    QubitMismatch { hamiltonian: usize, circuit: usize },

    #[error(
        "fold scales must start at 1, be strictly increasing and number at least 2, got {0:?}"
    )]
    BadScales(Vec<usize>),
}

pub type Result<T> = std::result::Result<T, AlgoError>;
