use pauli_core::PauliError;
use simulator::SimError;
use thiserror::Error;

/// Errors raised while constructing or reading ansatz circuits.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnsatzError {
    #[error(transparent)]
    Sim(#[from] SimError),

    #[error(transparent)]
    Pauli(#[from] PauliError),

    #[error("qubits {0:?} are not distinct")]
    Overlap(Vec<usize>),

    #[error("states {from} and {to} differ by more than a double excitation")]
    NotAnExcitation { from: String, to: String },

    #[error("state {state} has {found} particles, expected {expected}")]
    ParticleMismatch {
        state: String,
        found: u32,
        expected: u32,
    },

    #[error("state {0} appears twice in the basis order")]
    RepeatedState(String),

    #[error("no control set isolates {state} from the other prepared states")]
    CannotIsolate { state: String },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("amplitudes have squared norm {0}, expected 1")]
    NotNormalized(f64),

    #[error("pool size requires at least 2 qubits, got {0}")]
    PoolTooSmall(usize),

    #[error("the identity string does not generate an evolution")]
    IdentityGenerator,

    #[error("cannot decompose {0}")]
    Unsupported(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, AnsatzError>;
