//! Stochastic Pauli-error trajectories.

use pauli_core::{Pauli, PauliString, PauliSum};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::circuit::Circuit;
use crate::error::{Result, SimError};
use crate::measure::{attenuated_expectation, sample_expectation, Estimate, Shots};
use crate::state::Statevector;

/// Depolarizing rates per gate and symmetric readout flips per measured qubit.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NoiseModel {
    pub p1: f64,
    pub p2: f64,
    pub readout_flip: f64,
}

impl NoiseModel {
    pub fn new(p1: f64, p2: f64, readout_flip: f64) -> Result<Self> {
        for p in [p1, p2, readout_flip] {
            if !(0.0..=1.0).contains(&p) {
                return Err(SimError::InvalidProbability(p));
            }
        }
        Ok(Self {
            p1,
            p2,
            readout_flip,
        })
    }

    pub fn noiseless() -> Self {
        Self::default()
    }

    pub fn is_noiseless(&self) -> bool {
        self.p1 == 0.0 && self.p2 == 0.0 && self.readout_flip == 0.0
    }
}

/// RNG for trajectory `index` under `seed`; streams are independent of
/// execution order.
pub fn trajectory_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn random_error<R: Rng>(qubits: usize, on: &[usize], rng: &mut R) -> PauliString {
    let choice = rng.random_range(1..1u64 << (2 * on.len()));
    on.iter()
        .enumerate()
        .fold(PauliString::identity(qubits), |p, (k, &q)| {
            let letter = match choice >> (2 * k) & 3 {
                0 => Pauli::I,
                1 => Pauli::X,
                2 => Pauli::Y,
                _ => Pauli::Z,
            };
            p.with(q, letter)
        })
}

/// Final state of one noisy trajectory: after every gate, with probability
/// `p1` (one-qubit gates) or `p2` (gates on two or more qubits) a uniformly
/// random non-identity Pauli acts on the gate's qubits.
pub fn noisy_trajectory<R: Rng>(
    circuit: &Circuit,
    params: &[f64],
    noise: &NoiseModel,
    rng: &mut R,
) -> Result<Statevector> {
    circuit.check_bindings(params)?;
    let n = circuit.qubit_count();
    let mut psi = Statevector::zero(n);
    for g in circuit.gates() {
        psi.apply_gate(g, g.angle.map_or(0.0, |a| a.resolve(params)));
        let p = if g.arity() == 1 { noise.p1 } else { noise.p2 };
        if p > 0.0 && rng.random::<f64>() < p {
            psi.apply_pauli(&random_error(n, &g.qubits(), rng));
        }
    }
    Ok(psi)
}

/// Monte-Carlo noisy energy averaged over `trajectories` runs of `circuit`
/// from `|0…0⟩`. Finite shots are split evenly (rounded up) across
/// trajectories; readout flips act on every sampled bit. The standard error
/// is the spread of the per-trajectory estimates.
pub fn noisy_expectation(
    circuit: &Circuit,
    params: &[f64],
    h: &PauliSum,
    noise: &NoiseModel,
    shots: Shots,
    trajectories: u64,
    seed: u64,
) -> Result<Estimate> {
    if trajectories == 0 {
        return Err(SimError::ZeroCount("trajectories"));
    }
    if h.qubit_count() != circuit.qubit_count() {
        return Err(SimError::SizeMismatch {
            left: circuit.qubit_count(),
            right: h.qubit_count(),
        });
    }
    let mut values = Vec::with_capacity(trajectories as usize);
    for t in 0..trajectories {
        let mut rng = trajectory_rng(seed, t);
        let psi = noisy_trajectory(circuit, params, noise, &mut rng)?;
        let v = match shots {
            Shots::Exact => attenuated_expectation(&psi, h, noise.readout_flip),
            Shots::Finite(0) => return Err(SimError::ZeroCount("shots")),
            Shots::Finite(s) => {
                let per = s.div_ceil(trajectories);
                sample_expectation(&psi, h, per, noise.readout_flip, &mut rng).value
            }
        };
        values.push(v);
    }
    let k = values.len() as f64;
    let mean = values.iter().sum::<f64>() / k;
    let stderr = if values.len() > 1 {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0) / k).sqrt()
    } else {
        0.0
    };
    Ok(Estimate {
        value: mean,
        stderr,
    })
}
