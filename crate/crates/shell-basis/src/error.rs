use thiserror::Error;

/// Errors raised while reading model spaces and interactions or building bases.
#[derive(Debug, Error)]
pub enum ShellError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown orbital label {0:?}")]
    UnknownOrbit(String),

    #[error("invalid orbital: {0}")]
    InvalidOrbital(String),

    #[error("sector with {particles} particles and 2M = {twice_m} is empty")]
    EmptySector { particles: usize, twice_m: i32 },

    #[error("particle count {particles} outside 1..={orbitals}")]
    BadParticleCount { particles: usize, orbitals: usize },

    #[error("no single-particle energy for shell n={n} l={l} 2j={twice_j} 2tz={twice_tz}")]
    MissingSpe {
        n: u32,
        l: u32,
        twice_j: u32,
        twice_tz: i32,
    },

    #[error("state {state} does not belong to the sector: {reason}")]
    ForeignState { state: String, reason: String },

    #[error("matrix of size {got} does not match basis of size {expected}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, ShellError>;
