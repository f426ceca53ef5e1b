//! Dense statevectors, gate application and exact expectations.

use std::f64::consts::FRAC_1_SQRT_2;

use pauli_core::{Complex64, DenseMatrix, PauliError, PauliString, PauliSum, MAX_DENSE_QUBITS};

use crate::circuit::Circuit;
use crate::error::{Result, SimError};
use crate::gate::{Gate, GateKind};

/// Largest register the simulator accepts.
pub const MAX_QUBITS: usize = 20;

/// Tolerance for unit norm on user-supplied amplitudes.
pub const NORM_TOLERANCE: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Pure state over `qubits` qubits; amplitude `b` belongs to basis state `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    qubits: usize,
    amps: Vec<Complex64>,
}

type Mat2 = [[Complex64; 2]; 2];

fn gate_matrix(kind: GateKind, theta: f64) -> Mat2 {
    let re = |x: f64| Complex64::new(x, 0.0);
    match kind {
        GateKind::X | GateKind::Cnot | GateKind::MCX => [[ZERO, ONE], [ONE, ZERO]],
        GateKind::H => [
            [re(FRAC_1_SQRT_2), re(FRAC_1_SQRT_2)],
            [re(FRAC_1_SQRT_2), re(-FRAC_1_SQRT_2)],
        ],
        GateKind::S => [[ONE, ZERO], [ZERO, Complex64::i()]],
        GateKind::Sdg => [[ONE, ZERO], [ZERO, -Complex64::i()]],
        GateKind::Ry | GateKind::CRy | GateKind::MCRy => {
            let (s, c) = (theta / 2.0).sin_cos();
            [[re(c), re(-s)], [re(s), re(c)]]
        }
        GateKind::Rz => [
            [Complex64::from_polar(1.0, -theta / 2.0), ZERO],
            [ZERO, Complex64::from_polar(1.0, theta / 2.0)],
        ],
    }
}

impl Statevector {
    /// `|0…0⟩`.
    pub fn zero(qubits: usize) -> Self {
        Self::basis(qubits, 0)
    }

    /// Computational basis state `|b⟩`.
    ///
    /// # Panics
    /// If `qubits` exceeds [`MAX_QUBITS`] or `b` does not fit.
    pub fn basis(qubits: usize, b: u64) -> Self {
        assert!(
            qubits <= MAX_QUBITS,
            "at most {MAX_QUBITS} qubits are supported"
        );
        assert!(
            b >> qubits == 0,
            "basis state does not fit in {qubits} qubits"
        );
        let mut amps = vec![ZERO; 1 << qubits];
        amps[b as usize] = ONE;
        Self { qubits, amps }
    }

    /// Wrap amplitudes of a normalized state.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if !len.is_power_of_two() {
            return Err(PauliError::BadDimension { rows: len, cols: 1 }.into());
        }
        let qubits = len.trailing_zeros() as usize;
        if qubits > MAX_QUBITS {
            return Err(PauliError::TooManyQubits {
                qubits,
                max: MAX_QUBITS,
            }
            .into());
        }
        let s = Self { qubits, amps };
        let norm = s.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(SimError::NotNormalized(norm));
        }
        Ok(s)
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, b: u64) -> Complex64 {
        self.amps[b as usize]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if self.qubits != other.qubits {
            return Err(SimError::SizeMismatch {
                left: self.qubits,
                right: other.qubits,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Basis-state probabilities `|ψ_b|²`.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Apply `gate` with its angle already resolved to `theta`.
    pub fn apply_gate(&mut self, gate: &Gate, theta: f64) {
        let m = gate_matrix(gate.kind, theta);
        let control_mask = gate.controls.iter().fold(0usize, |m, &q| m | 1 << q);
        let t = 1usize << gate.target;
        for i in 0..self.amps.len() {
            if i & t != 0 || i & control_mask != control_mask {
                continue;
            }
            let (a0, a1) = (self.amps[i], self.amps[i | t]);
            self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
            self.amps[i | t] = m[1][0] * a0 + m[1][1] * a1;
        }
    }

    /// Multiply by the Pauli string `p` (no phase dropped).
    pub fn apply_pauli(&mut self, p: &PauliString) {
        let mut out = vec![ZERO; self.amps.len()];
        for (b, &a) in self.amps.iter().enumerate() {
            if a != ZERO {
                let (phase, to) = p.apply_to_basis(b as u64);
                out[to as usize] = phase * a;
            }
        }
        self.amps = out;
    }

    /// Run `circuit` with parameter values `params`.
    pub fn apply_circuit(&mut self, circuit: &Circuit, params: &[f64]) -> Result<()> {
        if circuit.qubit_count() != self.qubits {
            return Err(SimError::SizeMismatch {
                left: self.qubits,
                right: circuit.qubit_count(),
            });
        }
        circuit.check_bindings(params)?;
        for g in circuit.gates() {
            self.apply_gate(g, g.angle.map_or(0.0, |a| a.resolve(params)));
        }
        Ok(())
    }

    /// `⟨ψ|P|ψ⟩` for one Pauli string.
    pub fn pauli_expectation(&self, p: &PauliString) -> Complex64 {
        let mut acc = ZERO;
        for (b, &a) in self.amps.iter().enumerate() {
            if a != ZERO {
                let (phase, to) = p.apply_to_basis(b as u64);
                acc += self.amps[to as usize].conj() * phase * a;
            }
        }
        acc
    }

    /// `⟨ψ|H|ψ⟩` as a complex number.
    pub fn expectation_complex(&self, h: &PauliSum) -> Result<Complex64> {
        if h.qubit_count() != self.qubits {
            return Err(SimError::SizeMismatch {
                left: self.qubits,
                right: h.qubit_count(),
            });
        }
        Ok(h.terms().map(|(p, c)| c * self.pauli_expectation(p)).sum())
    }
}

/// `|ψ⟩` after running `circuit` on `|0…0⟩`.
pub fn run(circuit: &Circuit, params: &[f64]) -> Result<Statevector> {
    let mut psi = Statevector::zero(circuit.qubit_count());
    psi.apply_circuit(circuit, params)?;
    Ok(psi)
}

/// `|ψ'⟩ = U(circuit) |ψ⟩`.
pub fn apply(circuit: &Circuit, psi: &Statevector, params: &[f64]) -> Result<Statevector> {
    let mut out = psi.clone();
    out.apply_circuit(circuit, params)?;
    Ok(out)
}

/// Real part of `⟨ψ|H|ψ⟩`.
pub fn expectation_exact(psi: &Statevector, h: &PauliSum) -> Result<f64> {
    Ok(psi.expectation_complex(h)?.re)
}

/// Dense unitary of `circuit`, column `b` being the image of `|b⟩`.
pub fn circuit_unitary(circuit: &Circuit, params: &[f64]) -> Result<DenseMatrix> {
    let n = circuit.qubit_count();
    if n > MAX_DENSE_QUBITS {
        return Err(PauliError::TooManyQubits {
            qubits: n,
            max: MAX_DENSE_QUBITS,
        }
        .into());
    }
    let dim = 1usize << n;
    let mut u = DenseMatrix::zeros(dim, dim);
    for b in 0..dim {
        let mut psi = Statevector::basis(n, b as u64);
        psi.apply_circuit(circuit, params)?;
        for (r, a) in psi.amps.iter().enumerate() {
            u[(r, b)] = *a;
        }
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::Angle;

    fn close(a: Complex64, b: f64) -> bool {
        (a - Complex64::new(b, 0.0)).norm() < 1e-12
    }

    #[test]
    fn hadamard_on_zero() {
        let mut c = Circuit::new(1);
        c.h(0);
        let psi = run(&c, &[]).unwrap();
        assert!(close(psi.amplitude(0), FRAC_1_SQRT_2) && close(psi.amplitude(1), FRAC_1_SQRT_2));
    }

    #[test]
    fn ry_definition() {
        let mut c = Circuit::new(1);
        let p = c.parameter("t");
        c.ry(0, Angle::param(p));
        let psi = run(&c, &[0.8]).unwrap();
        assert!(close(psi.amplitude(0), 0.4f64.cos()) && close(psi.amplitude(1), 0.4f64.sin()));
    }

    #[test]
    fn multi_controlled_gates_need_all_controls() {
        let mut c = Circuit::new(3);
        c.mcx(&[0, 1], 2);
        for b in 0..8u64 {
            let psi = apply(&c, &Statevector::basis(3, b), &[]).unwrap();
            let want = if b & 0b011 == 0b011 { b ^ 0b100 } else { b };
            assert!(close(psi.amplitude(want), 1.0), "input {b:03b}");
        }
    }

    #[test]
    fn z_expectation_of_one() {
        let z: PauliSum = PauliSum::from_term("Z".parse().unwrap(), 1.0);
        assert_eq!(
            expectation_exact(&Statevector::basis(1, 1), &z).unwrap(),
            -1.0
        );
    }

    #[test]
    fn unbound_parameters_are_rejected() {
        let c = Circuit::from_text(1, "RY q0 a\n").unwrap();
        assert!(matches!(
            run(&c, &[]),
            Err(SimError::UnboundParameter {
                expected: 1,
                got: 0
            })
        ));
    }
}
