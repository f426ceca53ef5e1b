//! Qubit encodings of shell-model Hamiltonians.
//!
//! Jordan-Wigner uses one qubit per orbital with `|1⟩` meaning occupied. The
//! Gray-code encoding assigns the `Nb` states of a sector to `ceil(log2 Nb)`
//! qubit codewords along a unit-Hamming-distance path and expands the signed
//! sector matrix uniquely in Pauli strings.

pub mod error;
pub mod gc;
pub mod gray;
pub mod jw;
pub mod map;

pub use error::{EncodingError, Result};
pub use gc::{
    decode_gc, decode_gc_with_tolerance, encode_matrix, gc_transform, jw_encode, leakage,
    outer_product, EncodedHamiltonian, DECODE_TOLERANCE,
};
pub use gray::{gray_qubits, gray_sequence, is_unit_distance_path, MAX_GRAY_QUBITS};
pub use jw::{jw_annihilation, jw_creation, jw_transform, MAX_JW_ORBITALS};
pub use map::{
    build_encoding_map, encoding_map_from_text, load_encoding_map, parse_mapping, render_mapping,
    EncodingMap, MappingEntry, Scheme,
};
