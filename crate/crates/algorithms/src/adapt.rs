//! Qubit-ADAPT-VQE.

use ansatz::{append_pauli_evolution, OperatorPool};
use pauli_core::{Complex64, PauliString, PauliSum};
use simulator::{expectation, Angle, Circuit, Shots, Statevector};

use crate::error::{AlgoError, Result};
use crate::seeds::derive_seed2;
use crate::spsa::SpsaConfig;
use crate::vqe::{optimize, EnergyObjective, VqeResult};

/// Default relative gradient threshold.
pub const DEFAULT_THRESHOLD: f64 = 1e-5;

const GRADIENT_STREAM: u64 = 3;
const OPTIMIZER_STREAM: u64 = 4;

/// ADAPT settings. The loop stops when the largest gradient magnitude falls
/// below `threshold · |E|`, or after `max_iterations` (default three times
/// the pool size).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptConfig {
    pub spsa: SpsaConfig,
    pub shots: Shots,
    pub threshold: f64,
    pub max_iterations: Option<usize>,
}

impl Default for AdaptConfig {
    fn default() -> Self {
        Self {
            spsa: SpsaConfig::default(),
            shots: Shots::Exact,
            threshold: DEFAULT_THRESHOLD,
            max_iterations: None,
        }
    }
}

/// Why the ADAPT loop ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Termination {
    Converged,
    IterationCap,
    /// Re-optimization after adding an operator did not lower the energy.
    Stagnated,
}

/// Record of one ADAPT iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct AdaptIteration {
    /// Energy before the operator was added.
    pub energy: f64,
    /// `⟨[H, iP_k]⟩` for every pool element, measured at `theta`.
    pub gradients: Vec<f64>,
    /// Pool index of the chosen operator.
    pub selected: usize,
    /// Parameters before the operator was added.
    pub theta: Vec<f64>,
}

/// Grown ansatz and its history.
#[derive(Debug, Clone, PartialEq)]
pub struct AdaptState {
    /// Pool indices in the order they were appended.
    pub selected: Vec<usize>,
    pub generators: Vec<PauliString>,
    pub theta: Vec<f64>,
    /// Largest gradient magnitude at every gradient measurement, including
    /// the final one that ended the loop.
    pub gradient_norm_history: Vec<f64>,
    pub history: Vec<AdaptIteration>,
    pub termination: Termination,
    pub circuit: Circuit,
}

/// X gates preparing the computational basis state `codeword`.
pub fn reference_circuit(qubits: usize, codeword: u64) -> Circuit {
    let mut c = Circuit::new(qubits);
    for q in (0..qubits).filter(|q| codeword >> q & 1 == 1) {
        c.x(q);
    }
    c
}

/// `reference` followed by `exp(θ_k · iP_k)` for each generator, with
/// parameters `theta_0, theta_1, …`.
pub fn adapt_circuit(reference: &Circuit, generators: &[PauliString]) -> Result<Circuit> {
    let mut c = reference.clone();
    for p in generators {
        let k = c.new_parameter();
        append_pauli_evolution(&mut c, p, Angle::param(k))?;
    }
    Ok(c)
}

/// Gradient observables `[H, iP]` for every pool element.
pub fn gradient_operators(h: &PauliSum, pool: &OperatorPool) -> Result<Vec<PauliSum>> {
    pool.elements
        .iter()
        .map(|p| Ok(h.commutator(&PauliSum::from_term(*p, Complex64::i()))?))
        .collect()
}

fn measure_gradients(
    psi: &Statevector,
    ops: &[PauliSum],
    shots: Shots,
    seed: u64,
) -> Result<Vec<f64>> {
    ops.iter()
        .enumerate()
        .map(|(k, op)| Ok(expectation(psi, op, shots, derive_seed2(seed, k as u64, 0))?.value))
        .collect()
}

/// Grow an ansatz from `reference` one pool operator at a time, appending
/// the operator with the largest gradient magnitude and re-optimizing all
/// parameters from their previous values (new parameter starts at 0).
pub fn adapt_vqe(
    h: &PauliSum,
    pool: &OperatorPool,
    reference: &Circuit,
    config: &AdaptConfig,
) -> Result<(AdaptState, VqeResult)> {
    if pool.is_empty() {
        return Err(AlgoError::Empty("operator pool"));
    }
    if h.qubit_count() != reference.qubit_count() {
        return Err(AlgoError::QubitMismatch {
            hamiltonian: h.qubit_count(),
            circuit: reference.qubit_count(),
        });
    }
    if config.threshold.is_nan() || config.threshold < 0.0 {
        return Err(AlgoError::InvalidConfig(format!(
            "gradient threshold {}",
            config.threshold
        )));
    }
    let ops = gradient_operators(h, pool)?;
    let cap = config.max_iterations.unwrap_or(3 * pool.len());
    let exact = config.shots == Shots::Exact;
    let seed = config.spsa.seed;
    let mut generators: Vec<PauliString> = Vec::new();
    let mut selected = Vec::new();
    let mut theta: Vec<f64> = Vec::new();
    let mut history = Vec::new();
    let mut norms = Vec::new();
    let mut evaluations = 0;
    let mut trace = Vec::new();
    let mut circuit = adapt_circuit(reference, &generators)?;
    let mut energy = EnergyObjective::new(
        &circuit,
        h,
        config.shots,
        derive_seed2(seed, OPTIMIZER_STREAM, 0),
    )?
    .energy(&theta)?;
    let termination = loop {
        let psi = simulator::run(&circuit, &theta)?;
        let gradients = measure_gradients(
            &psi,
            &ops,
            config.shots,
            derive_seed2(seed, GRADIENT_STREAM, history.len() as u64),
        )?;
        let (best, max) = gradients
            .iter()
            .map(|g| g.abs())
            .enumerate()
            .fold((0, 0.0), |acc, (k, g)| if g > acc.1 { (k, g) } else { acc });
        norms.push(max);
        if max < config.threshold * energy.abs() || max == 0.0 {
            break Termination::Converged;
        }
        if history.len() >= cap {
            break Termination::IterationCap;
        }
        history.push(AdaptIteration {
            energy,
            gradients,
            selected: best,
            theta: theta.clone(),
        });
        selected.push(best);
        generators.push(pool.elements[best]);
        circuit = adapt_circuit(reference, &generators)?;
        let start: Vec<f64> = theta.iter().copied().chain(std::iter::once(0.0)).collect();
        let spsa =
            config
                .spsa
                .with_seed(derive_seed2(seed, OPTIMIZER_STREAM, history.len() as u64));
        let mut objective = EnergyObjective::new(&circuit, h, config.shots, spsa.seed)?;
        let (next, t, used) = {
            let cost = |x: &[f64]| {
                objective
                    .energy(x)
                    .expect("parameter count matches the circuit")
            };
            optimize(cost, &start, &spsa, exact)?
        };
        evaluations += used;
        trace = t;
        let next_energy = objective.energy(&next)?;
        theta = next;
        let previous = energy;
        energy = next_energy;
        if exact && energy >= previous {
            break Termination::Stagnated;
        }
    };
    let final_seed = derive_seed2(seed, OPTIMIZER_STREAM, u64::MAX);
    let psi = simulator::run(&circuit, &theta)?;
    let last = expectation(&psi, h, config.shots, final_seed)?;
    let result = VqeResult {
        energy: last.value,
        stderr: last.stderr,
        theta: theta.clone(),
        evaluations: evaluations + 1,
        seed,
        trace,
    };
    let state = AdaptState {
        selected,
        generators,
        theta,
        gradient_norm_history: norms,
        history,
        termination,
        circuit,
    };
    Ok((state, result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ansatz::pool_g;

    #[test]
    fn reference_sets_codeword_bits() {
        let c = reference_circuit(3, 0b101);
        assert_eq!(c.len(), 2);
        let psi = simulator::run(&c, &[]).unwrap();
        assert!((psi.amplitude(0b101).re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn diagonal_hamiltonian_at_its_ground_state_needs_no_iterations() {
        let h = pauli_core::parse_pauli_sum("1.0 ZI\n0.5 IZ\n-3.0 II\n").unwrap();
        let reference = reference_circuit(2, 0b11);
        let (state, result) =
            adapt_vqe(&h, &pool_g(2).unwrap(), &reference, &AdaptConfig::default()).unwrap();
        assert!(state.history.is_empty());
        assert_eq!(state.termination, Termination::Converged);
        assert!((result.energy - -4.5).abs() < 1e-12);
    }

    #[test]
    fn empty_pool_is_rejected() {
        let pool = OperatorPool {
            kind: ansatz::PoolKind::G,
            elements: vec![],
        };
        let h = PauliSum::identity(1, 1.0);
        assert!(matches!(
            adapt_vqe(&h, &pool, &Circuit::new(1), &AdaptConfig::default()),
            Err(AlgoError::Empty(_))
        ));
    }
}
