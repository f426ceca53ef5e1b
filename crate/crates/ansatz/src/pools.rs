//! Minimal ADAPT operator pools and Pauli-evolution circuits.
//!
//! A pool element `P` stands for the anti-hermitian generator `iP`.

use std::fmt;

use pauli_core::{Pauli, PauliString};
use simulator::{Angle, Circuit};

use crate::error::{AnsatzError, Result};

/// Pool family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PoolKind {
    V,
    G,
}

impl fmt::Display for PoolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PoolKind::V => "V",
            PoolKind::G => "G",
        })
    }
}

impl std::str::FromStr for PoolKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "V" | "v" => Ok(PoolKind::V),
            "G" | "g" => Ok(PoolKind::G),
            other => Err(format!("unknown pool {other:?}")),
        }
    }
}

/// Anti-hermitian generators `iP` stored by their Pauli strings `P`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorPool {
    pub kind: PoolKind,
    pub elements: Vec<PauliString>,
}

impl OperatorPool {
    pub fn new(kind: PoolKind, qubits: usize) -> Result<Self> {
        match kind {
            PoolKind::V => pool_v(qubits),
            PoolKind::G => pool_g(qubits),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// `{V}_n = {Z_n {V}_{n−1}, iY_n, iY_{n−1}}` from `{V}_2 = {iZ_2 Y_1, iY_2}`,
/// with labels `1…n` mapped to qubits `0…n−1`.
pub fn pool_v(n: usize) -> Result<OperatorPool> {
    if n < 2 {
        return Err(AnsatzError::PoolTooSmall(n));
    }
    let mut strings: Vec<Vec<(usize, Pauli)>> =
        vec![vec![(1, Pauli::Z), (0, Pauli::Y)], vec![(1, Pauli::Y)]];
    for m in 3..=n {
        strings = strings
            .into_iter()
            .map(|mut s| {
                s.insert(0, (m - 1, Pauli::Z));
                s
            })
            .chain([vec![(m - 1, Pauli::Y)], vec![(m - 2, Pauli::Y)]])
            .collect();
    }
    let elements = strings
        .iter()
        .map(|s| PauliString::from_letters(n, s))
        .collect();
    Ok(OperatorPool {
        kind: PoolKind::V,
        elements,
    })
}

/// `{iZ_{k+1} Y_k : 1 ≤ k < n} ∪ {iY_k : 2 ≤ k ≤ n}`, with labels `1…n`
/// mapped to qubits `0…n−1`.
pub fn pool_g(n: usize) -> Result<OperatorPool> {
    if n < 2 {
        return Err(AnsatzError::PoolTooSmall(n));
    }
    let pairs =
        (0..n - 1).map(|k| PauliString::from_letters(n, &[(k + 1, Pauli::Z), (k, Pauli::Y)]));
    let singles = (1..n).map(|k| PauliString::single(n, k, Pauli::Y));
    Ok(OperatorPool {
        kind: PoolKind::G,
        elements: pairs.chain(singles).collect(),
    })
}

/// Append `exp(θ · iP)` to `circuit`: basis changes (`H` for X, `S†` then `H`
/// for Y), a CNOT ladder collecting the parity on the highest support qubit,
/// `Rz(−2θ)` there, and the mirrored uncompute.
pub fn append_pauli_evolution(circuit: &mut Circuit, p: &PauliString, theta: Angle) -> Result<()> {
    if p.is_identity() {
        return Err(AnsatzError::IdentityGenerator);
    }
    if p.qubit_count() != circuit.qubit_count() {
        return Err(simulator::SimError::SizeMismatch {
            left: circuit.qubit_count(),
            right: p.qubit_count(),
        }
        .into());
    }
    let support = p.support();
    for &q in &support {
        match p.get(q) {
            Pauli::X => {
                circuit.h(q);
            }
            Pauli::Y => {
                circuit.sdg(q).h(q);
            }
            _ => {}
        }
    }
    for w in support.windows(2) {
        circuit.cx(w[0], w[1]);
    }
    let pivot = *support.last().expect("non-identity string has support");
    circuit.rz(pivot, theta.scaled(-2.0));
    for w in support.windows(2).rev() {
        circuit.cx(w[0], w[1]);
    }
    for &q in &support {
        match p.get(q) {
            Pauli::X => {
                circuit.h(q);
            }
            Pauli::Y => {
                circuit.h(q).s(q);
            }
            _ => {}
        }
    }
    Ok(())
}

/// Circuit for `exp(θ · iP)` with one parameter named `theta`.
pub fn pauli_evolution(p: &PauliString) -> Result<Circuit> {
    let mut c = Circuit::new(p.qubit_count());
    let theta = Angle::param(c.parameter("theta"));
    append_pauli_evolution(&mut c, p, theta)?;
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(pool: &OperatorPool) -> Vec<String> {
        pool.elements.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn small_pools_match_closed_forms() {
        assert_eq!(words(&pool_v(2).unwrap()), ["ZY", "YI"]);
        assert_eq!(words(&pool_v(3).unwrap()), ["ZZY", "ZYI", "YII", "IYI"]);
        assert_eq!(words(&pool_g(3).unwrap()), ["IZY", "ZYI", "IYI", "YII"]);
    }

    #[test]
    fn pools_have_minimal_size_and_odd_y_count() {
        for n in 2..=8 {
            for pool in [pool_v(n).unwrap(), pool_g(n).unwrap()] {
                assert_eq!(pool.len(), 2 * n - 2);
                assert!(pool.elements.iter().all(|p| p.y_count() % 2 == 1));
            }
        }
        assert!(matches!(pool_v(1), Err(AnsatzError::PoolTooSmall(1))));
        assert!(matches!(pool_g(0), Err(AnsatzError::PoolTooSmall(0))));
    }

    #[test]
    fn identity_has_no_evolution() {
        assert_eq!(
            pauli_evolution(&PauliString::identity(2)).unwrap_err(),
            AnsatzError::IdentityGenerator
        );
    }
}
