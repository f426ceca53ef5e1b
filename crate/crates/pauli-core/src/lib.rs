//! Pauli-string algebra with a dense-matrix reference oracle.
//!
//! Qubit 0 is the least significant qubit everywhere: bit 0 of a basis-state
//! index, and the rightmost character of a Pauli word or bitstring.

pub mod error;
pub mod io;
pub mod matrix;
pub mod string;
pub mod sum;

pub use error::{PauliError, Result};
pub use io::{parse_pauli_sum, read_pauli_file, render_pauli_sum, round_coefficients};
pub use matrix::{
    eig_sym, eigh, format_bitstring, from_matrix, hermitian_deviation, max_abs_diff,
    parse_bitstring, restrict_to_subspace, to_matrix, DenseMatrix, MAX_DENSE_QUBITS,
};
pub use num_complex::Complex64;
pub use string::{multiply, Pauli, PauliString};
pub use sum::{commutator, PauliSum, SIMPLIFY_TOLERANCE};
