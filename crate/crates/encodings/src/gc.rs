//! Gray-code encoding of sector matrices and the inverse read-out.

use std::collections::HashMap;

use pauli_core::{hermitian_deviation, Complex64, DenseMatrix, PauliError, PauliSum};
use shell_basis::{matrix_in_basis, FermHamiltonian, SectorBasis};

use crate::error::{EncodingError, Result};
use crate::jw::jw_transform;
use crate::map::{build_encoding_map, EncodingMap, Scheme};

/// Default bound on couplings between mapped and unmapped codewords.
pub const DECODE_TOLERANCE: f64 = 1e-5;

/// Hermiticity bound applied to sector matrices before encoding.
pub const SECTOR_HERMITIAN_TOLERANCE: f64 = 1e-10;

/// Qubit Hamiltonian together with the map that defines its sector.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodedHamiltonian {
    pub pauli: PauliSum,
    pub map: EncodingMap,
    pub label: String,
}

impl EncodedHamiltonian {
    /// Pair an existing qubit Hamiltonian (for example shipped data) with its map.
    pub fn new(pauli: PauliSum, map: EncodingMap, label: impl Into<String>) -> Result<Self> {
        if pauli.qubit_count() != map.qubit_count() {
            return Err(PauliError::QubitMismatch {
                left: pauli.qubit_count(),
                right: map.qubit_count(),
            }
            .into());
        }
        if !pauli.is_hermitian() {
            return Err(PauliError::NotHermitian {
                deviation: pauli.max_imaginary(),
            }
            .into());
        }
        Ok(Self {
            pauli,
            map,
            label: label.into(),
        })
    }

    pub fn qubit_count(&self) -> usize {
        self.pauli.qubit_count()
    }
}

/// Pauli expansion of the computational-basis operator `|to⟩⟨from|`.
///
/// Each qubit contributes `P⁽⁰⁾`, `P⁽¹⁾`, `σ⁺ = |0⟩⟨1|` or `σ⁻ = |1⟩⟨0|`.
pub fn outer_product(qubits: usize, to: u64, from: u64) -> PauliSum {
    (0..qubits).fold(PauliSum::identity(qubits, 1.0), |acc, q| {
        let factor = PauliSum::transition(qubits, q, to >> q & 1 == 1, from >> q & 1 == 1);
        acc.try_mul(&factor).expect("equal qubit counts")
    })
}

/// Embed a sector matrix at the map's codewords and expand it in Pauli strings.
/// Unmapped codewords carry exact zeros.
pub fn encode_matrix(m: &DenseMatrix, map: &EncodingMap) -> Result<PauliSum> {
    let nb = map.len();
    if m.nrows() != nb || m.ncols() != nb {
        return Err(shell_basis::ShellError::SizeMismatch {
            expected: nb,
            got: m.nrows(),
        }
        .into());
    }
    let q = map.qubit_count();
    let mut out = PauliSum::zero(q);
    for r in 0..nb {
        for c in 0..nb {
            let x = m[(r, c)];
            if x == Complex64::default() {
                continue;
            }
            out = out.try_add(&outer_product(q, map.codeword(r), map.codeword(c)).scale(x))?;
        }
    }
    Ok(out.simplified())
}

/// Gray-code qubit Hamiltonian of `h` on the map's sector.
pub fn gc_transform(h: &FermHamiltonian, map: &EncodingMap) -> Result<EncodedHamiltonian> {
    if map.scheme != Scheme::Gray {
        return Err(EncodingError::SchemeMismatch {
            expected: Scheme::Gray.name(),
            found: map.scheme.name(),
        });
    }
    let m = matrix_in_basis(h, &map.basis);
    let deviation = hermitian_deviation(&m);
    if deviation > SECTOR_HERMITIAN_TOLERANCE {
        return Err(PauliError::NotHermitian { deviation }.into());
    }
    let pauli = encode_matrix(&m, map)?;
    let label = format!(
        "{} {}p 2M={} gray",
        map.basis.model_space.name, map.basis.particle_count, map.basis.twice_m
    );
    EncodedHamiltonian::new(pauli, map.clone(), label)
}

/// Jordan-Wigner qubit Hamiltonian of `h`, paired with the one-hot map of `basis`.
pub fn jw_encode(h: &FermHamiltonian, basis: SectorBasis) -> Result<EncodedHamiltonian> {
    let label = format!(
        "{} {}p 2M={} one-hot",
        basis.model_space.name, basis.particle_count, basis.twice_m
    );
    let map = build_encoding_map(basis, Scheme::OneHot, None)?;
    EncodedHamiltonian::new(jw_transform(h)?, map, label)
}

/// Sector matrix read out at the codewords, with the default tolerance.
pub fn decode_gc(e: &EncodedHamiltonian) -> Result<DenseMatrix> {
    decode_gc_with_tolerance(e, DECODE_TOLERANCE)
}

/// Sector matrix `⟨g_r| H |g_c⟩` over the map's codewords.
///
/// Fails when any codeword couples to an unmapped basis state by more than
/// `tolerance`.
pub fn decode_gc_with_tolerance(e: &EncodedHamiltonian, tolerance: f64) -> Result<DenseMatrix> {
    let (m, coupling) = decode_parts(e);
    if coupling > tolerance {
        return Err(EncodingError::Leakage {
            coupling,
            tolerance,
        });
    }
    Ok(m)
}

/// Largest coupling between a mapped codeword and any unmapped state.
pub fn leakage(e: &EncodedHamiltonian) -> f64 {
    decode_parts(e).1
}

fn decode_parts(e: &EncodedHamiltonian) -> (DenseMatrix, f64) {
    let map = &e.map;
    let nb = map.len();
    let index: HashMap<u64, usize> = map
        .codewords()
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i))
        .collect();
    let mut m = DenseMatrix::zeros(nb, nb);
    let mut coupling: f64 = 0.0;
    for (c, &code) in map.codewords().iter().enumerate() {
        let mut column: HashMap<u64, Complex64> = HashMap::new();
        for (p, x) in e.pauli.terms() {
            let (phase, out) = p.apply_to_basis(code);
            *column.entry(out).or_default() += phase * x;
        }
        for (out, amp) in column {
            match index.get(&out) {
                Some(&r) => m[(r, c)] = amp,
                None => coupling = coupling.max(amp.norm()),
            }
        }
    }
    (m, coupling)
}
