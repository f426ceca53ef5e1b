//! Argument grammar and command dispatch.

use std::path::{Path, PathBuf};

use ansatz::PoolKind;
use clap::{ArgAction, Args, Parser, Subcommand};
use pauli_core::parse_bitstring;
use simulator::Shots;

use crate::config::{
    label_from_path, Method, NoiseSetting, OptimizerSetting, RunConfig, ShotSetting, DEFAULT_NOISE,
    DEFAULT_RUNS, DEFAULT_SCALES, DEFAULT_SHOTS, DEFAULT_TRAJECTORIES,
};
use crate::data::{read_text, resolve};
use crate::encode::{encode, EncodeRequest, EncodeScheme, HamiltonianSource};
use crate::error::{CliError, Result};
use crate::record::{save, write_levels, LevelRow, RunRecord};
use crate::report::{collect_records, write_report};
use crate::run::{execute, load_hamiltonian, replay, spectrum};

pub const DEFAULT_OUT: &str = "results";

#[derive(Debug, Parser)]
#[command(
    name = "nsm",
    version,
    about = "Shell-model Hamiltonians on simulated qubits"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

/// Options shared by every subcommand.
#[derive(Debug, Default, Args)]
pub struct Common {
    /// JSON run configuration, or a run record whose configuration is reused.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Master seed; required for algorithm runs.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Shots per Pauli term, or `exact`.
    #[arg(long, global = true)]
    pub shots: Option<ShotSetting>,
    /// Number of independent runs in the ensemble.
    #[arg(long, global = true)]
    pub runs: Option<usize>,
    /// Noise rates `p1,p2,ro` for zne.
    #[arg(long, global = true)]
    pub noise: Option<NoiseSetting>,
    /// Fold scales for zne, such as `1,3,5`.
    #[arg(long, global = true, value_delimiter = ',')]
    pub scales: Option<Vec<usize>>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Re-execute the record given with --config and check that its energies repeat exactly.
    #[arg(long, global = true)]
    pub replay: bool,
    /// Log more detail; repeat for debug output.
    #[arg(short, long, global = true, action = ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Encode a shell-model sector as a qubit Hamiltonian.
    Encode(EncodeArgs),
    /// Print the ascending eigenvalues of a Pauli-file Hamiltonian.
    Exact(ExactArgs),
    /// Variational quantum eigensolver ensemble.
    Vqe(VqeArgs),
    /// Qubit-ADAPT-VQE ensemble.
    Adapt(AdaptArgs),
    /// Variational quantum deflation ensemble for excited states.
    Vqd(VqdArgs),
    /// Zero-noise extrapolation of a noisy ansatz energy.
    Zne(ZneArgs),
    /// Level table and SVG level scheme from run records.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    /// Model-space file.
    #[arg(long)]
    pub space: PathBuf,
    /// J-scheme interaction file.
    #[arg(
        long,
        conflicts_with = "from_table",
        required_unless_present = "from_table"
    )]
    pub interaction: Option<PathBuf>,
    /// Gray-code Pauli table whose sector matrix is re-encoded.
    #[arg(long, requires = "table_map")]
    pub from_table: Option<PathBuf>,
    /// Mapping file of the --from-table input.
    #[arg(long)]
    pub table_map: Option<PathBuf>,
    /// Valence particle count; required unless --mapping is given.
    #[arg(long)]
    pub particles: Option<usize>,
    /// Twice the total angular-momentum projection.
    #[arg(long, allow_hyphen_values = true)]
    pub twice_m: Option<i32>,
    #[arg(long, value_enum)]
    pub scheme: EncodeScheme,
    /// Explicit codeword assignment for the gc output.
    #[arg(long)]
    pub mapping: Option<PathBuf>,
    #[arg(long)]
    pub label: Option<String>,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    /// Pauli-file Hamiltonian.
    pub hamiltonian: PathBuf,
}

/// Inputs common to the algorithm commands.
#[derive(Debug, Default, Args)]
pub struct ProblemArgs {
    /// Pauli-file Hamiltonian.
    #[arg(long)]
    pub hamiltonian: Option<PathBuf>,
    /// Sector label; defaults to the Hamiltonian file stem.
    #[arg(long)]
    pub label: Option<String>,
    /// SPSA iterations per optimization.
    #[arg(long)]
    pub iterations: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VqeArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Ansatz specification file.
    /// Ansatz specification file.
    #[arg(long)]
    pub ansatz: Option<PathBuf>,
    /// Starting parameters, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub theta0: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct AdaptArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Operator pool, V or G.
    #[arg(long)]
    pub pool: Option<PoolKind>,
    /// Reference codeword as a bitstring, qubit 0 rightmost.
    #[arg(long)]
    pub reference: Option<String>,
    /// Stop when the largest gradient is below threshold·|E|.
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Cap on ADAPT iterations.
    #[arg(long)]
    pub max_iterations: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VqdArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Ansatz specification file.
    #[arg(long)]
    pub ansatz: Option<PathBuf>,
    /// Highest level index to compute.
    #[arg(long)]
    pub k: Option<usize>,
    /// Overlap penalties per lower level, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub betas: Option<Vec<f64>>,
    /// Random restarts per level.
    #[arg(long)]
    pub restarts: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ZneArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Ansatz specification file.
    #[arg(long)]
    pub ansatz: Option<PathBuf>,
    /// Noise trajectories per energy estimate.
    #[arg(long)]
    pub trajectories: Option<u64>,
    /// Circuit parameters; optimized noiselessly when omitted.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub params: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Run-record files or directories containing them.
    pub records: Vec<PathBuf>,
}

/// Configuration from a `--config` file: either a bare run configuration or
/// the snapshot inside a run record.
pub fn load_config(path: &Path) -> Result<(RunConfig, Option<RunRecord>)> {
    let text = read_text(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| CliError::at(path, e))?;
    if value.get("config").is_some() {
        let record = RunRecord::load(path)?;
        Ok((record.config.clone(), Some(record)))
    } else {
        Ok((
            serde_json::from_value(value).map_err(|e| CliError::at(path, e))?,
            None,
        ))
    }
}

fn parse_reference(bits: &str) -> Result<u64> {
    parse_bitstring(bits)
        .map(|(_, v)| v)
        .map_err(|e| CliError::input(format!("--reference: {e}")))
}

fn require<T>(value: Option<T>, what: &str) -> Result<T> {
    value.ok_or_else(|| CliError::input(format!("{what} is required")))
}

/// Merge `--config`, command-line options and defaults into a run
/// configuration for an algorithm command.
pub fn build_config(
    common: &Common,
    command: &Command,
    base: Option<RunConfig>,
) -> Result<RunConfig> {
    let (problem, name) = match command {
        Command::Vqe(a) => (&a.problem, "vqe"),
        Command::Adapt(a) => (&a.problem, "adapt"),
        Command::Vqd(a) => (&a.problem, "vqd"),
        Command::Zne(a) => (&a.problem, "zne"),
        _ => unreachable!("only algorithm commands carry a run configuration"),
    };
    if let Some(b) = &base {
        if b.method.name() != name {
            return Err(CliError::input(format!(
                "--config describes a {} run, not {name}",
                b.method.name()
            )));
        }
    }
    let hamiltonian = require(
        problem
            .hamiltonian
            .clone()
            .or(base.as_ref().map(|b| b.hamiltonian.clone())),
        "--hamiltonian",
    )?;
    let label = problem
        .label
        .clone()
        .or_else(|| {
            base.as_ref()
                .filter(|_| problem.hamiltonian.is_none())
                .map(|b| b.label.clone())
        })
        .unwrap_or_else(|| label_from_path(&hamiltonian));
    let seed = require(common.seed.or(base.as_ref().map(|b| b.seed)), "--seed")?;
    let shots = common
        .shots
        .or(base.as_ref().map(|b| b.shots))
        .unwrap_or(ShotSetting(Shots::Finite(DEFAULT_SHOTS)));
    let runs = common
        .runs
        .or(base.as_ref().map(|b| b.runs))
        .unwrap_or(DEFAULT_RUNS);
    let mut optimizer = base
        .as_ref()
        .map_or_else(OptimizerSetting::default, |b| b.optimizer.clone());
    if let Some(i) = problem.iterations {
        optimizer.iterations = i;
    }
    let base_method = base.map(|b| b.method);
    let method = match command {
        Command::Vqe(a) => {
            let (ansatz, theta0) = match base_method {
                Some(Method::Vqe { ansatz, theta0 }) => (Some(ansatz), theta0),
                _ => (None, None),
            };
            Method::Vqe {
                ansatz: require(a.ansatz.clone().or(ansatz), "--ansatz")?,
                theta0: a.theta0.clone().or(theta0),
            }
        }
        Command::Adapt(a) => {
            let (pool, reference, threshold, max_iterations) = match base_method {
                Some(Method::Adapt {
                    pool,
                    reference,
                    threshold,
                    max_iterations,
                }) => (pool, reference, threshold, max_iterations),
                _ => (
                    PoolKind::G,
                    0,
                    algorithms::AdaptConfig::default().threshold,
                    None,
                ),
            };
            Method::Adapt {
                pool: a.pool.unwrap_or(pool),
                reference: a
                    .reference
                    .as_deref()
                    .map(parse_reference)
                    .transpose()?
                    .unwrap_or(reference),
                threshold: a.threshold.unwrap_or(threshold),
                max_iterations: a.max_iterations.or(max_iterations),
            }
        }
        Command::Vqd(a) => {
            let (ansatz, k, betas, restarts) = match base_method {
                Some(Method::Vqd {
                    ansatz,
                    k,
                    betas,
                    restarts,
                }) => (Some(ansatz), k, betas, restarts),
                _ => (None, 1, None, algorithms::VqdConfig::new(1).restarts),
            };
            Method::Vqd {
                ansatz: require(a.ansatz.clone().or(ansatz), "--ansatz")?,
                k: a.k.unwrap_or(k),
                betas: a.betas.clone().or(betas),
                restarts: a.restarts.unwrap_or(restarts),
            }
        }
        Command::Zne(a) => {
            let (ansatz, noise, scales, trajectories, params) = match base_method {
                Some(Method::Zne {
                    ansatz,
                    noise,
                    scales,
                    trajectories,
                    params,
                }) => (Some(ansatz), noise, scales, trajectories, params),
                _ => (
                    None,
                    DEFAULT_NOISE,
                    DEFAULT_SCALES.to_vec(),
                    DEFAULT_TRAJECTORIES,
                    None,
                ),
            };
            Method::Zne {
                ansatz: require(a.ansatz.clone().or(ansatz), "--ansatz")?,
                noise: common.noise.unwrap_or(noise),
                scales: common.scales.clone().unwrap_or(scales),
                trajectories: a.trajectories.unwrap_or(trajectories),
                params: a.params.clone().or(params),
            }
        }
        _ => unreachable!(),
    };
    let config = RunConfig {
        label,
        hamiltonian,
        seed,
        shots,
        runs,
        optimizer,
        method,
    };
    config.validate()?;
    Ok(config)
}

fn print_levels(record: &RunRecord) {
    for row in record.level_rows() {
        let exact = row
            .exact
            .map_or_else(String::new, |e| format!("  exact {e:.6}"));
        println!(
            "{} {} level {}: median {:.6}  MAD {:.6}{exact}",
            row.label, row.method, row.level, row.median, row.mad
        );
    }
    if let Some(z) = &record.zne {
        for ((s, m), mad) in z.scales.iter().zip(&z.medians).zip(&z.mads) {
            println!("  scale {s}: median {m:.6}  MAD {mad:.6}");
        }
        println!(
            "  extrapolated {:.6} ± {:.6}  noiseless {:.6}",
            z.intercept, z.stderr, z.noiseless
        );
    }
}

fn run_algorithm(common: &Common, command: &Command) -> Result<()> {
    let (base, recorded) = match &common.config {
        Some(p) => {
            let (c, r) = load_config(p)?;
            (Some(c), r)
        }
        None => (None, None),
    };
    let config = build_config(common, command, base)?;
    if common.replay {
        let record = recorded
            .ok_or_else(|| CliError::input("--replay needs --config pointing at a run record"))?;
        if record.config != config {
            return Err(CliError::input(
                "command-line options change the recorded configuration",
            ));
        }
        let again = replay(&record)?;
        println!(
            "replay of {} reproduced {} runs exactly",
            record.stem(),
            again.energies.len()
        );
        return Ok(());
    }
    let record = execute(&config)?;
    let out = common
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
    let (json, csv) = save(&record, &out)?;
    print_levels(&record);
    log::info!("wrote {} and {}", json.display(), csv.display());
    if record.warnings.is_empty() {
        Ok(())
    } else {
        for w in &record.warnings {
            eprintln!("warning: {w}");
        }
        Err(CliError::NotConverged(format!(
            "{} run(s) flagged non-convergence",
            record.warnings.len()
        )))
    }
}

fn run_exact(common: &Common, args: &ExactArgs) -> Result<()> {
    let h = load_hamiltonian(&resolve(&args.hamiltonian))?;
    let values = spectrum(&h)?;
    for (k, e) in values.iter().enumerate() {
        println!("{k} {e:.6}");
    }
    if let Some(out) = &common.out {
        let label = label_from_path(&args.hamiltonian);
        let rows: Vec<LevelRow> = values
            .iter()
            .enumerate()
            .map(|(k, &e)| LevelRow {
                label: label.clone(),
                method: "exact".into(),
                level: k,
                median: e,
                mad: 0.0,
                exact: Some(e),
            })
            .collect();
        crate::record::ensure_dir(out)?;
        write_levels(&out.join(format!("{label}_exact.csv")), &rows)?;
    }
    Ok(())
}

fn run_encode(common: &Common, args: &EncodeArgs) -> Result<()> {
    let source = match (&args.interaction, &args.from_table, &args.table_map) {
        (Some(i), _, _) => HamiltonianSource::Interaction(i.clone()),
        (None, Some(t), Some(m)) => HamiltonianSource::Table {
            pauli: t.clone(),
            mapping: m.clone(),
        },
        _ => {
            return Err(CliError::input(
                "either --interaction or --from-table with --table-map is required",
            ))
        }
    };
    let request = EncodeRequest {
        space: args.space.clone(),
        source,
        particles: args.particles,
        twice_m: args.twice_m,
        scheme: args.scheme,
        mapping: args.mapping.clone(),
        label: args.label.clone(),
        out: common
            .out
            .clone()
            .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT)),
    };
    let written = encode(&request)?;
    println!(
        "{}: {} states, {} qubits, {} Pauli terms",
        written.encoded.label,
        written.encoded.map.len(),
        written.encoded.qubit_count(),
        written.encoded.pauli.len()
    );
    println!(
        "{}\n{}",
        written.hamiltonian.display(),
        written.mapping.display()
    );
    Ok(())
}

fn run_report(common: &Common, args: &ReportArgs) -> Result<()> {
    let records = collect_records(&args.records)?;
    let out = common
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
    let (csv, svg) = write_report(&records, &out)?;
    println!("{}\n{}", csv.display(), svg.display());
    Ok(())
}

/// Execute a parsed command line.
pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Encode(a) => run_encode(&cli.common, a),
        Command::Exact(a) => run_exact(&cli.common, a),
        Command::Report(a) => run_report(&cli.common, a),
        algorithm => run_algorithm(&cli.common, algorithm),
    }
}
