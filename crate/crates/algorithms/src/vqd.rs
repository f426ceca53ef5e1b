//! Variational quantum deflation for excited states.

use pauli_core::{eig_sym, to_matrix, PauliSum};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use simulator::{expectation, Circuit, Shots, Statevector};

use crate::error::{AlgoError, Result};
use crate::seeds::derive_seed2;
use crate::spsa::SpsaConfig;
use crate::vqe::{optimize, EnergyObjective};

/// Largest acceptable `|⟨ψ_i|ψ_j⟩|²` between converged levels.
pub const OVERLAP_TOLERANCE: f64 = 1e-2;

/// Number of random starting points tried per level.
pub const DEFAULT_RESTARTS: usize = 3;

const START_STREAM: u64 = 5;
const LEVEL_STREAM: u64 = 6;

/// VQD settings. `betas[i]` weighs the overlap with level `i`; `None` uses
/// [`default_beta`] for every level.
#[derive(Debug, Clone, PartialEq)]
pub struct VqdConfig {
    pub k: usize,
    pub betas: Option<Vec<f64>>,
    pub spsa: SpsaConfig,
    pub shots: Shots,
    pub restarts: usize,
}

impl VqdConfig {
    pub fn new(k: usize) -> Self {
        Self {
            k,
            betas: None,
            spsa: SpsaConfig::default(),
            shots: Shots::Exact,
            restarts: DEFAULT_RESTARTS,
        }
    }
}

/// Levels `E_0 … E_k` with their parameters and pairwise overlaps.
#[derive(Debug, Clone, PartialEq)]
pub struct VqdResult {
    pub energies: Vec<f64>,
    pub thetas: Vec<Vec<f64>>,
    pub betas: Vec<f64>,
    /// `overlaps[i][j] = |⟨ψ_i|ψ_j⟩|²` for `j < i`.
    pub overlaps: Vec<Vec<f64>>,
    /// Pairs `(i, j)` whose overlap exceeds [`OVERLAP_TOLERANCE`].
    pub non_orthogonal: Vec<(usize, usize)>,
}

/// `2 (E_max − E_min)` from the exact spectrum when `h` is small enough to
/// diagonalize, otherwise `2 Σ |x_i|` over the Pauli coefficients.
pub fn default_beta(h: &PauliSum) -> f64 {
    match to_matrix(h).and_then(|m| eig_sym(&m)) {
        Ok(values) => 2.0 * (values[values.len() - 1] - values[0]),
        Err(_) => 2.0 * h.terms().map(|(_, c)| c.norm()).sum::<f64>(),
    }
}

fn overlap(a: &Statevector, b: &Statevector) -> f64 {
    a.inner(b).expect("same register").norm_sqr()
}

/// Levels `E_0 … E_k` of `h` within the span of `circuit`, each minimizing
/// `E(θ) + Σ_{i<k} β_i |⟨ψ(θ)|ψ_i⟩|²` with overlaps taken from exact
/// statevectors. Each level keeps the best of `restarts` seeded random
/// starts.
pub fn vqd(h: &PauliSum, circuit: &Circuit, config: &VqdConfig) -> Result<VqdResult> {
    if config.k == 0 {
        return Err(AlgoError::InvalidConfig("VQD needs k ≥ 1".into()));
    }
    if config.restarts == 0 {
        return Err(AlgoError::InvalidConfig(
            "VQD needs at least one start".into(),
        ));
    }
    let betas = match &config.betas {
        Some(b) if b.len() < config.k => {
            return Err(AlgoError::InvalidConfig(format!(
                "{} betas given for k = {}",
                b.len(),
                config.k
            )))
        }
        Some(b) => b[..config.k].to_vec(),
        None => vec![default_beta(h); config.k],
    };
    let exact = config.shots == Shots::Exact;
    let n = circuit.parameter_count();
    let seed = config.spsa.seed;
    let mut states: Vec<Statevector> = Vec::new();
    let mut thetas = Vec::new();
    let mut energies = Vec::new();
    for level in 0..=config.k {
        let mut best: Option<(f64, Vec<f64>)> = None;
        for start in 0..config.restarts {
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed2(
                seed,
                START_STREAM,
                (level * config.restarts + start) as u64,
            ));
            let theta0: Vec<f64> = (0..n)
                .map(|_| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
                .collect();
            let spsa = config.spsa.with_seed(derive_seed2(
                seed,
                LEVEL_STREAM,
                (level * config.restarts + start) as u64,
            ));
            let mut objective = EnergyObjective::new(circuit, h, config.shots, spsa.seed)?;
            let mut penalized = |t: &[f64]| -> Result<f64> {
                let psi = objective.state(t)?;
                let penalty: f64 = states
                    .iter()
                    .zip(&betas)
                    .map(|(s, b)| b * overlap(&psi, s))
                    .sum();
                Ok(objective.energy(t)? + penalty)
            };
            let (theta, _, _) = optimize(
                |t| penalized(t).expect("parameter count matches"),
                &theta0,
                &spsa,
                exact,
            )?;
            let value = penalized(&theta)?;
            if best.as_ref().map_or(true, |(v, _)| value < *v) {
                best = Some((value, theta));
            }
        }
        let (_, theta) = best.expect("at least one start");
        let psi = simulator::run(circuit, &theta)?;
        let e = expectation(
            &psi,
            h,
            config.shots,
            derive_seed2(seed, LEVEL_STREAM, u64::MAX - level as u64),
        )?;
        energies.push(e.value);
        states.push(psi);
        thetas.push(theta);
    }
    let overlaps: Vec<Vec<f64>> = (0..states.len())
        .map(|i| (0..i).map(|j| overlap(&states[i], &states[j])).collect())
        .collect();
    let non_orthogonal = overlaps
        .iter()
        .enumerate()
        .flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, o)| **o > OVERLAP_TOLERANCE)
                .map(move |(j, _)| (i, j))
        })
        .collect();
    Ok(VqdResult {
        energies,
        thetas,
        betas,
        overlaps,
        non_orthogonal,
    })
}
