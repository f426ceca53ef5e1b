//! Variational quantum eigensolver.

use pauli_core::PauliSum;
use simulator::{expectation, run, Circuit, Estimate, Shots, Statevector};

use crate::error::{AlgoError, Result};
use crate::polish::bfgs;
use crate::seeds::derive_seed2;
use crate::spsa::{spsa_minimize, SpsaConfig};

/// Iteration cap of the exact-mode refinement.
pub const POLISH_ITERATIONS: usize = 200;

const EVALUATION_STREAM: u64 = 1;
const FINAL_STREAM: u64 = 2;

/// Measured energy `E(θ) = ⟨ψ(θ)|H|ψ(θ)⟩` with a fresh shot seed per call.
#[derive(Debug, Clone)]
pub struct EnergyObjective<'a> {
    circuit: &'a Circuit,
    h: &'a PauliSum,
    shots: Shots,
    seed: u64,
    evaluations: u64,
}

impl<'a> EnergyObjective<'a> {
    pub fn new(circuit: &'a Circuit, h: &'a PauliSum, shots: Shots, seed: u64) -> Result<Self> {
        if h.qubit_count() != circuit.qubit_count() {
            return Err(AlgoError::QubitMismatch {
                hamiltonian: h.qubit_count(),
                circuit: circuit.qubit_count(),
            });
        }
        Ok(Self {
            circuit,
            h,
            shots,
            seed,
            evaluations: 0,
        })
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    pub fn state(&self, theta: &[f64]) -> Result<Statevector> {
        if theta.len() != self.circuit.parameter_count() {
            return Err(AlgoError::ParameterCount {
                expected: self.circuit.parameter_count(),
                got: theta.len(),
            });
        }
        Ok(run(self.circuit, theta)?)
    }

    /// One energy measurement.
    pub fn estimate(&mut self, theta: &[f64]) -> Result<Estimate> {
        let psi = self.state(theta)?;
        self.evaluations += 1;
        let seed = derive_seed2(self.seed, EVALUATION_STREAM, self.evaluations);
        Ok(expectation(&psi, self.h, self.shots, seed)?)
    }

    pub fn energy(&mut self, theta: &[f64]) -> Result<f64> {
        Ok(self.estimate(theta)?.value)
    }
}

/// Outcome of one VQE run.
#[derive(Debug, Clone, PartialEq)]
pub struct VqeResult {
    pub energy: f64,
    /// Shot standard error of `energy`; 0 for exact expectations.
    pub stderr: f64,
    pub theta: Vec<f64>,
    pub evaluations: u64,
    pub seed: u64,
    pub trace: Vec<f64>,
}

/// Minimize `cost` with SPSA and, when `refine` is set, polish the result
/// with BFGS and keep the start point if it is still better. Returns the
/// parameters, SPSA trace and evaluation count.
pub(crate) fn optimize<F>(
    mut cost: F,
    theta0: &[f64],
    spsa: &SpsaConfig,
    refine: bool,
) -> Result<(Vec<f64>, Vec<f64>, u64)>
where
    F: FnMut(&[f64]) -> f64,
{
    let r = spsa_minimize(&mut cost, theta0, spsa)?;
    let mut evaluations = r.evaluations;
    let theta = if refine && !r.theta.is_empty() {
        let counted = |t: &[f64]| {
            evaluations += 1;
            cost(t)
        };
        let polished = bfgs(counted, &r.theta, POLISH_ITERATIONS);
        evaluations += 2;
        if cost(&polished) <= cost(theta0) {
            polished
        } else {
            theta0.to_vec()
        }
    } else {
        r.theta
    };
    Ok((theta, r.trace, evaluations))
}

/// Minimize the measured energy of `circuit` from `theta0`. With exact
/// expectations the SPSA result is refined with BFGS; with shots the final
/// energy is a fresh measurement at the optimum.
pub fn vqe(
    h: &PauliSum,
    circuit: &Circuit,
    spsa: &SpsaConfig,
    shots: Shots,
    theta0: &[f64],
) -> Result<VqeResult> {
    let mut objective = EnergyObjective::new(circuit, h, shots, spsa.seed)?;
    objective.state(theta0)?;
    let exact = shots == Shots::Exact;
    let (theta, trace, _) = {
        let cost = |t: &[f64]| objective.energy(t).expect("parameter count checked");
        optimize(cost, theta0, spsa, exact)?
    };
    let psi = objective.state(&theta)?;
    let last = expectation(&psi, h, shots, derive_seed2(spsa.seed, FINAL_STREAM, 0))?;
    Ok(VqeResult {
        energy: last.value,
        stderr: last.stderr,
        theta,
        evaluations: objective.evaluations() + 1,
        seed: spsa.seed,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use simulator::Angle;

    #[test]
    fn identity_hamiltonian_returns_its_coefficient() {
        let mut c = Circuit::new(2);
        let p = c.parameter("a");
        c.ry(0, Angle::param(p)).cx(0, 1);
        let h = PauliSum::identity(2, -7.25);
        let cfg = SpsaConfig::default().with_iterations(20);
        for shots in [Shots::Exact, Shots::Finite(100)] {
            let r = vqe(&h, &c, &cfg, shots, &[0.4]).unwrap();
            assert_eq!(r.energy, -7.25);
        }
    }

    #[test]
    fn qubit_mismatch_is_rejected() {
        let c = Circuit::new(2);
        let h = PauliSum::identity(1, 1.0);
        assert!(matches!(
            vqe(&h, &c, &SpsaConfig::default(), Shots::Exact, &[]),
            Err(AlgoError::QubitMismatch { .. })
        ));
    }
}
