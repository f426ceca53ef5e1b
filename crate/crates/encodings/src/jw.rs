//! Jordan-Wigner (one-hot) encoding of fermionic operators.

use pauli_core::{Complex64, Pauli, PauliString, PauliSum, MAX_DENSE_QUBITS};
use shell_basis::FermHamiltonian;

use crate::error::{EncodingError, Result};

/// Largest orbital count accepted by [`jw_transform`].
pub const MAX_JW_ORBITALS: usize = MAX_DENSE_QUBITS;

fn z_string(n: usize, i: usize) -> PauliSum {
    let mut p = PauliString::identity(n);
    for k in 0..i {
        p = p.with(k, Pauli::Z);
    }
    PauliSum::from_term(p, 1.0)
}

/// `c†_i = (∏_{k<i} Z_k) σ⁻_i` with `σ⁻ = |1⟩⟨0|` (occupied is `|1⟩`).
pub fn jw_creation(n: usize, i: usize) -> PauliSum {
    z_string(n, i)
        .try_mul(&PauliSum::sigma_minus(n, i))
        .expect("equal qubit counts")
}

/// `c_i = (∏_{k<i} Z_k) σ⁺_i` with `σ⁺ = |0⟩⟨1|`.
pub fn jw_annihilation(n: usize, i: usize) -> PauliSum {
    z_string(n, i)
        .try_mul(&PauliSum::sigma_plus(n, i))
        .expect("equal qubit counts")
}

/// Qubit form of `h` with one qubit per orbital.
pub fn jw_transform(h: &FermHamiltonian) -> Result<PauliSum> {
    let n = h.orbitals;
    if n > MAX_JW_ORBITALS {
        return Err(EncodingError::TooManyOrbitals {
            orbitals: n,
            max: MAX_JW_ORBITALS,
        });
    }
    let create: Vec<PauliSum> = (0..n).map(|i| jw_creation(n, i)).collect();
    let destroy: Vec<PauliSum> = (0..n).map(|i| jw_annihilation(n, i)).collect();
    let mut out = PauliSum::identity(n, Complex64::new(h.constant, 0.0));
    for (&(i, j), &x) in &h.one_body {
        let term = create[i].try_mul(&destroy[j])?;
        out = out.try_add(&term.scale(x))?;
    }
    for (&(i, j, k, l), &x) in &h.two_body {
        let term = create[i]
            .try_mul(&create[j])?
            .try_mul(&destroy[k])?
            .try_mul(&destroy[l])?;
        out = out.try_add(&term.scale(x))?;
    }
    Ok(out.simplified())
}
