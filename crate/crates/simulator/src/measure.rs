//! Finite-shot estimation of Pauli-sum expectations.

use pauli_core::{PauliString, PauliSum};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{Result, SimError};
use crate::state::Statevector;

/// Number of measurement shots per Pauli term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shots {
    /// Infinite-shot limit: exact expectation values.
    Exact,
    Finite(u64),
}

/// Shot-based estimate and its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
}

/// Probability that a measurement of `p` returns `+1` after symmetric readout
/// flips with probability `readout_flip` on each measured qubit.
pub(crate) fn plus_probability(psi: &Statevector, p: &PauliString, readout_flip: f64) -> f64 {
    let ev = psi.pauli_expectation(p).re.clamp(-1.0, 1.0);
    let odd_flips = 0.5 * (1.0 - (1.0 - 2.0 * readout_flip).powi(p.weight() as i32));
    let plus = 0.5 * (1.0 + ev);
    plus * (1.0 - odd_flips) + (1.0 - plus) * odd_flips
}

/// Exact expectation including the readout attenuation `(1 − 2r)^{weight}`.
pub(crate) fn attenuated_expectation(psi: &Statevector, h: &PauliSum, readout_flip: f64) -> f64 {
    h.terms()
        .map(|(p, c)| {
            let ev = psi.pauli_expectation(p).re;
            c.re * ev * (1.0 - 2.0 * readout_flip).powi(p.weight() as i32)
        })
        .sum()
}

/// Sample every non-identity term of `h` with `shots` shots.
///
/// Each term is measured in its own eigenbasis; the `±1` outcome count is
/// binomial in the probability of even parity over the term's support.
pub(crate) fn sample_expectation<R: Rng>(
    psi: &Statevector,
    h: &PauliSum,
    shots: u64,
    readout_flip: f64,
    rng: &mut R,
) -> Estimate {
    let mut value = 0.0;
    let mut variance = 0.0;
    for (p, c) in h.terms() {
        if p.is_identity() {
            value += c.re;
            continue;
        }
        let plus = plus_probability(psi, p, readout_flip);
        let k = Binomial::new(shots, plus)
            .expect("probability in [0, 1]")
            .sample(rng);
        let mean = (2.0 * k as f64 - shots as f64) / shots as f64;
        let s2 = if shots > 1 {
            (1.0 - mean * mean) * shots as f64 / (shots - 1) as f64
        } else {
            1.0
        };
        value += c.re * mean;
        variance += c.re * c.re * s2 / shots as f64;
    }
    Estimate {
        value,
        stderr: variance.sqrt(),
    }
}

/// Estimate `⟨ψ|H|ψ⟩` from `shots` samples per term, deterministic in `seed`.
/// Identity terms contribute their coefficient exactly.
pub fn expectation_shots(
    psi: &Statevector,
    h: &PauliSum,
    shots: u64,
    seed: u64,
) -> Result<Estimate> {
    if shots == 0 {
        return Err(SimError::ZeroCount("shots"));
    }
    if h.qubit_count() != psi.qubit_count() {
        return Err(SimError::SizeMismatch {
            left: psi.qubit_count(),
            right: h.qubit_count(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sample_expectation(psi, h, shots, 0.0, &mut rng))
}

/// Exact value for [`Shots::Exact`], otherwise a seeded shot estimate.
pub fn expectation(psi: &Statevector, h: &PauliSum, shots: Shots, seed: u64) -> Result<Estimate> {
    match shots {
        Shots::Exact => Ok(Estimate {
            value: crate::state::expectation_exact(psi, h)?,
            stderr: 0.0,
        }),
        Shots::Finite(n) => expectation_shots(psi, h, n, seed),
    }
}
