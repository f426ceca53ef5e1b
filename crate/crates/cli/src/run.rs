//! Execution of algorithm run configurations.

use std::path::Path;
use std::time::Instant;

use algorithms::{
    adapt_vqe, ensemble_stats, linear_fit, reference_circuit, run_ensemble, vqd, vqe, zne,
    AdaptConfig, Termination, VqdConfig, ZneConfig,
};
use ansatz::{load_ansatz, pool_g, pool_v, AnsatzCircuit, OperatorPool, PoolKind};
use pauli_core::{eig_sym, parse_pauli_sum, to_matrix, Pauli, PauliString, PauliSum};
use simulator::{expectation_exact, Shots};

use crate::config::{Method, RunConfig};
use crate::data::{checked_digest, read_text, resolve};
use crate::error::{CliError, Result};
use crate::record::{RunRecord, ZneSummary};

/// Largest register whose spectrum is computed for reference values.
pub const MAX_REFERENCE_QUBITS: usize = 10;

/// Seed of the noiseless optimization that supplies ZNE parameters.
const ZNE_PARAMETER_SEED: u64 = u64::MAX;

pub fn load_hamiltonian(path: &Path) -> Result<PauliSum> {
    let text = read_text(path)?;
    parse_pauli_sum(&text).map_err(|e| CliError::at(path, e))
}

/// Ascending eigenvalues of the full register.
pub fn spectrum(h: &PauliSum) -> Result<Vec<f64>> {
    Ok(eig_sym(&to_matrix(h)?)?)
}

fn load_circuit(path: &Path) -> Result<AnsatzCircuit> {
    load_ansatz(path).map_err(CliError::from)
}

fn starting_point(given: &Option<Vec<f64>>, count: usize) -> Result<Vec<f64>> {
    match given {
        Some(t) if t.len() != count => Err(CliError::input(format!(
            "ansatz has {count} parameters, {} starting values given",
            t.len()
        ))),
        Some(t) => Ok(t.clone()),
        None => Ok(vec![0.0; count]),
    }
}

/// Run the ensemble described by `config` and collect its record.
///
/// Flagged non-convergence is reported in `warnings`; the record is still
/// complete.
pub fn execute(config: &RunConfig) -> Result<RunRecord> {
    config.validate()?;
    let start = Instant::now();
    let mut record = RunRecord::new(config.clone());
    let h_path = resolve(&config.hamiltonian);
    let h = load_hamiltonian(&h_path)?;
    record.data_digests.insert(
        config.hamiltonian.display().to_string(),
        checked_digest(&config.hamiltonian, &h_path)?,
    );
    let ansatz = match config.method.ansatz() {
        Some(p) => {
            let resolved = resolve(p);
            let a = load_circuit(&resolved)?;
            record
                .data_digests
                .insert(p.display().to_string(), checked_digest(p, &resolved)?);
            if a.qubit_count() != h.qubit_count() {
                return Err(CliError::input(format!(
                    "ansatz acts on {} qubits, Hamiltonian on {}",
                    a.qubit_count(),
                    h.qubit_count()
                )));
            }
            Some(a)
        }
        None => None,
    };
    let shots = config.shots.0;
    let (runs, seed) = (config.runs, config.seed);
    let optimizer = &config.optimizer;
    let energies: Vec<Vec<f64>> = match &config.method {
        Method::Vqe { theta0, .. } => {
            let c = &ansatz.as_ref().expect("vqe loads an ansatz").circuit;
            let theta0 = starting_point(theta0, c.parameter_count())?;
            run_ensemble(runs, seed, |_, s| {
                Ok(vec![vqe(&h, c, &optimizer.spsa(s), shots, &theta0)?.energy])
            })?
        }
        Method::Adapt {
            pool,
            reference,
            threshold,
            max_iterations,
        } => {
            let n = h.qubit_count();
            let pool = match pool {
                _ if n == 1 => OperatorPool {
                    kind: *pool,
                    elements: vec![PauliString::identity(1).with(0, Pauli::Y)],
                },
                PoolKind::V => pool_v(n)?,
                PoolKind::G => pool_g(n)?,
            };
            if n < 64 && reference >> n != 0 {
                return Err(CliError::input(format!(
                    "reference codeword {reference:b} does not fit in {n} qubits"
                )));
            }
            let reference = reference_circuit(n, *reference);
            let outcomes = run_ensemble(runs, seed, |_, s| {
                let cfg = AdaptConfig {
                    spsa: optimizer.spsa(s),
                    shots,
                    threshold: *threshold,
                    max_iterations: *max_iterations,
                };
                let (state, result) = adapt_vqe(&h, &pool, &reference, &cfg)?;
                Ok((result.energy, state.termination))
            })?;
            for (i, (_, t)) in outcomes.iter().enumerate() {
                if *t == Termination::IterationCap {
                    record.warnings.push(format!(
                        "run {i}: iteration cap reached before the gradient criterion"
                    ));
                }
            }
            outcomes.into_iter().map(|(e, _)| vec![e]).collect()
        }
        Method::Vqd {
            k, betas, restarts, ..
        } => {
            let c = &ansatz.as_ref().expect("vqd loads an ansatz").circuit;
            let results = run_ensemble(runs, seed, |_, s| {
                let cfg = VqdConfig {
                    k: *k,
                    betas: betas.clone(),
                    spsa: optimizer.spsa(s),
                    shots,
                    restarts: *restarts,
                };
                vqd(&h, c, &cfg)
            })?;
            for (i, r) in results.iter().enumerate() {
                for (a, b) in &r.non_orthogonal {
                    record
                        .warnings
                        .push(format!("run {i}: levels {a} and {b} are not orthogonal"));
                }
            }
            results.into_iter().map(|r| r.energies).collect()
        }
        Method::Zne {
            noise,
            scales,
            trajectories,
            params,
            ..
        } => {
            let c = &ansatz.as_ref().expect("zne loads an ansatz").circuit;
            let params = match params {
                Some(p) => starting_point(&Some(p.clone()), c.parameter_count())?,
                None => {
                    let zeros = vec![0.0; c.parameter_count()];
                    vqe(
                        &h,
                        c,
                        &optimizer.spsa(ZNE_PARAMETER_SEED),
                        Shots::Exact,
                        &zeros,
                    )?
                    .theta
                }
            };
            let cfg = ZneConfig {
                scales: scales.clone(),
                shots,
                runs,
                trajectories: *trajectories,
                seed,
            };
            let r = zne(c, &params, &h, &noise.model()?, &cfg)?;
            let x: Vec<f64> = r.scales.iter().map(|&s| s as f64).collect();
            let zero = vec![0.0; x.len()];
            let energies = r
                .per_run
                .iter()
                .map(|run| vec![linear_fit(&x, run, &zero).0])
                .collect();
            let noiseless = expectation_exact(&simulator::run(c, &params)?, &h)?;
            record.zne = Some(ZneSummary {
                params,
                noiseless,
                scales: r.scales,
                medians: r.energies,
                mads: r.mads,
                intercept: r.intercept,
                slope: r.slope,
                stderr: r.stderr,
            });
            energies
        }
    };
    let levels = energies.first().map_or(0, Vec::len);
    for k in 0..levels {
        let column: Vec<f64> = energies.iter().map(|e| e[k]).collect();
        let (median, mad) = ensemble_stats(&column)?;
        record.median.push(median);
        record.mad.push(mad);
    }
    let reference = if h.qubit_count() <= MAX_REFERENCE_QUBITS {
        Some(spectrum(&h)?)
    } else {
        None
    };
    record.exact = (0..levels)
        .map(|k| reference.as_ref().and_then(|s| s.get(k).copied()))
        .collect();
    record.energies = energies;
    record.wall_time_s = start.elapsed().as_secs_f64();
    Ok(record)
}

/// Re-execute a record's configuration and compare energies bit for bit.
pub fn replay(record: &RunRecord) -> Result<RunRecord> {
    let again = execute(&record.config)?;
    for (path, digest) in &record.data_digests {
        if again.data_digests.get(path) != Some(digest) {
            return Err(CliError::input(format!(
                "{path} changed since the record was written"
            )));
        }
    }
    let bits = |e: &[Vec<f64>]| {
        e.iter()
            .map(|r| r.iter().map(|v| v.to_bits()).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    };
    if bits(&again.energies) != bits(&record.energies) {
        return Err(CliError::Runtime(
            "replayed energies differ from the record".into(),
        ));
    }
    Ok(again)
}
