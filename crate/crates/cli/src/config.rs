//! Run configurations: everything needed to reproduce an algorithm run.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use algorithms::SpsaConfig;
use ansatz::PoolKind;
use serde::{Deserialize, Serialize};
use simulator::{NoiseModel, Shots};

use crate::error::{CliError, Result};

/// Schema version written into every record.
pub const SCHEMA_VERSION: u32 = 1;

pub const DEFAULT_RUNS: usize = 100;
pub const DEFAULT_SHOTS: u64 = 10_000;
pub const DEFAULT_SCALES: [usize; 3] = [1, 3, 5];
pub const DEFAULT_TRAJECTORIES: u64 = 200;
pub const DEFAULT_NOISE: NoiseSetting = NoiseSetting {
    p1: 0.0005,
    p2: 0.005,
    readout: 0.0,
};

/// Shot budget per Pauli term: a count, or `exact` for exact expectations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct ShotSetting(pub Shots);

impl fmt::Display for ShotSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Shots::Exact => f.write_str("exact"),
            Shots::Finite(n) => write!(f, "{n}"),
        }
    }
}

impl FromStr for ShotSetting {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s.eq_ignore_ascii_case("exact") {
            return Ok(Self(Shots::Exact));
        }
        match s.parse::<u64>() {
            Ok(0) | Err(_) => Err(format!(
                "expected a positive shot count or `exact`, got {s:?}"
            )),
            Ok(n) => Ok(Self(Shots::Finite(n))),
        }
    }
}

impl From<ShotSetting> for String {
    fn from(s: ShotSetting) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for ShotSetting {
    type Error = String;

    fn try_from(s: String) -> std::result::Result<Self, String> {
        s.parse()
    }
}

/// Depolarizing rates and readout flip probability, written `p1,p2,ro`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSetting {
    pub p1: f64,
    pub p2: f64,
    pub readout: f64,
}

impl NoiseSetting {
    pub fn model(&self) -> Result<NoiseModel> {
        NoiseModel::new(self.p1, self.p2, self.readout).map_err(CliError::from)
    }
}

impl FromStr for NoiseSetting {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let values: Vec<f64> = s
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|_| format!("invalid probability {v:?}"))
            })
            .collect::<std::result::Result<_, _>>()?;
        match values[..] {
            [p1, p2, readout] => Ok(Self { p1, p2, readout }),
            _ => Err(format!("expected p1,p2,ro, got {s:?}")),
        }
    }
}

/// SPSA hyperparameters; `a` is calibrated when absent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimizerSetting {
    pub iterations: usize,
    pub a: Option<f64>,
    pub c: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub stability: f64,
}

impl Default for OptimizerSetting {
    fn default() -> Self {
        let d = SpsaConfig::default();
        Self {
            iterations: d.iterations,
            a: d.a,
            c: d.c,
            alpha: d.alpha,
            gamma: d.gamma,
            stability: d.stability,
        }
    }
}

impl OptimizerSetting {
    pub fn spsa(&self, seed: u64) -> SpsaConfig {
        SpsaConfig {
            iterations: self.iterations,
            a: self.a,
            c: self.c,
            alpha: self.alpha,
            gamma: self.gamma,
            stability: self.stability,
            seed,
        }
    }
}

/// Algorithm and its specific settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "lowercase")]
pub enum Method {
    Vqe {
        ansatz: PathBuf,
        /// Starting parameters; zeros when absent.
        theta0: Option<Vec<f64>>,
    },
    Adapt {
        #[serde(with = "pool_kind")]
        pool: PoolKind,
        /// Codeword prepared by the reference circuit.
        reference: u64,
        threshold: f64,
        max_iterations: Option<usize>,
    },
    Vqd {
        ansatz: PathBuf,
        k: usize,
        betas: Option<Vec<f64>>,
        restarts: usize,
    },
    Zne {
        ansatz: PathBuf,
        noise: NoiseSetting,
        scales: Vec<usize>,
        trajectories: u64,
        /// Circuit parameters; optimized noiselessly when absent.
        params: Option<Vec<f64>>,
    },
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Vqe { .. } => "vqe",
            Method::Adapt { .. } => "adapt",
            Method::Vqd { .. } => "vqd",
            Method::Zne { .. } => "zne",
        }
    }

    pub fn ansatz(&self) -> Option<&PathBuf> {
        match self {
            Method::Vqe { ansatz, .. }
            | Method::Vqd { ansatz, .. }
            | Method::Zne { ansatz, .. } => Some(ansatz),
            Method::Adapt { .. } => None,
        }
    }
}

mod pool_kind {
    use ansatz::PoolKind;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(k: &PoolKind, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&k.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<PoolKind, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// Complete, serializable description of one ensemble run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Sector label used in file names and level tables.
    pub label: String,
    pub hamiltonian: PathBuf,
    pub seed: u64,
    pub shots: ShotSetting,
    pub runs: usize,
    pub optimizer: OptimizerSetting,
    #[serde(flatten)]
    pub method: Method,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(CliError::input("--runs must be at least 1"));
        }
        if self.label.is_empty() || self.label.contains(['/', '\\']) {
            return Err(CliError::input(format!("invalid label {:?}", self.label)));
        }
        if let Method::Zne {
            noise,
            trajectories,
            ..
        } = &self.method
        {
            noise.model()?;
            if *trajectories == 0 {
                return Err(CliError::input("trajectories must be at least 1"));
            }
        }
        Ok(())
    }
}

/// Default label: the file stem of the Hamiltonian.
pub fn label_from_path(path: &std::path::Path) -> String {
    path.file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("run")
        .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shot_settings_parse_and_print() {
        assert_eq!("exact".parse::<ShotSetting>().unwrap().0, Shots::Exact);
        assert_eq!("250".parse::<ShotSetting>().unwrap().0, Shots::Finite(250));
        assert!("0".parse::<ShotSetting>().is_err());
        assert_eq!(ShotSetting(Shots::Finite(7)).to_string(), "7");
    }

    #[test]
    fn noise_needs_three_values() {
        let n: NoiseSetting = "0.001,0.01,0.02".parse().unwrap();
        assert_eq!((n.p1, n.p2, n.readout), (0.001, 0.01, 0.02));
        assert!("0.1,0.2".parse::<NoiseSetting>().is_err());
        assert!("0.1,x,0".parse::<NoiseSetting>().is_err());
    }

    #[test]
    fn config_round_trips_through_json() {
        let cfg = RunConfig {
            label: "ar38_2p_gc".into(),
            hamiltonian: "hamiltonians/ar38_2p_gc.pauli".into(),
            seed: 5,
            shots: ShotSetting(Shots::Finite(10)),
            runs: 3,
            optimizer: OptimizerSetting::default(),
            method: Method::Adapt {
                pool: PoolKind::G,
                reference: 0,
                threshold: 1e-5,
                max_iterations: None,
            },
        };
        let text = serde_json::to_string_pretty(&cfg).unwrap();
        assert!(text.contains("\"method\": \"adapt\""));
        assert_eq!(serde_json::from_str::<RunConfig>(&text).unwrap(), cfg);
    }
}
