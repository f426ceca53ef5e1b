//! Reflected binary Gray sequences and codeword-path checks.

/// Largest register accepted by [`gray_sequence`].
pub const MAX_GRAY_QUBITS: usize = 12;

/// Reflected binary Gray sequence of length `2^q` starting at all zeros.
///
/// # Panics
/// If `q` is 0 or exceeds [`MAX_GRAY_QUBITS`].
pub fn gray_sequence(q: usize) -> Vec<u64> {
    assert!(
        (1..=MAX_GRAY_QUBITS).contains(&q),
        "Gray register must have 1..={MAX_GRAY_QUBITS} qubits"
    );
    (0..1u64 << q).map(|i| i ^ (i >> 1)).collect()
}

/// Qubits needed to give `states` basis states distinct codewords (at least 1).
pub fn gray_qubits(states: usize) -> usize {
    states.max(2).next_power_of_two().trailing_zeros() as usize
}

/// Whether consecutive codewords differ in exactly one bit.
pub fn is_unit_distance_path(codes: &[u64]) -> bool {
    codes.windows(2).all(|w| (w[0] ^ w[1]).count_ones() == 1)
}
