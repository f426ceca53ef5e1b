//! Run records and level tables.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::{RunConfig, SCHEMA_VERSION};
use crate::error::{CliError, Result};

/// Zero-noise extrapolation details of a `zne` run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZneSummary {
    pub params: Vec<f64>,
    pub noiseless: f64,
    pub scales: Vec<usize>,
    pub medians: Vec<f64>,
    pub mads: Vec<f64>,
    pub intercept: f64,
    pub slope: f64,
    pub stderr: f64,
}

/// Persisted result of one ensemble, reproducible from `config`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub schema_version: u32,
    pub toolkit_version: String,
    pub config: RunConfig,
    /// Energies indexed `[run][level]`.
    pub energies: Vec<Vec<f64>>,
    pub median: Vec<f64>,
    pub mad: Vec<f64>,
    /// Exact eigenvalue of each level, when the register is small enough.
    pub exact: Vec<Option<f64>>,
    /// Non-convergence flags raised by individual runs.
    pub warnings: Vec<String>,
    pub wall_time_s: f64,
    /// SHA-256 of every input file, keyed by its configured path.
    pub data_digests: BTreeMap<String, String>,
    pub zne: Option<ZneSummary>,
}

impl RunRecord {
    pub fn new(config: RunConfig) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            energies: Vec::new(),
            median: Vec::new(),
            mad: Vec::new(),
            exact: Vec::new(),
            warnings: Vec::new(),
            wall_time_s: 0.0,
            data_digests: BTreeMap::new(),
            zne: None,
        }
    }

    pub fn method(&self) -> &'static str {
        self.config.method.name()
    }

    /// One level-table row per level.
    pub fn level_rows(&self) -> Vec<LevelRow> {
        (0..self.median.len())
            .map(|k| LevelRow {
                label: self.config.label.clone(),
                method: self.method().to_string(),
                level: k,
                median: self.median[k],
                mad: self.mad[k],
                exact: self.exact.get(k).copied().flatten(),
            })
            .collect()
    }

    /// Base file name `<label>_<method>`.
    pub fn stem(&self) -> String {
        format!("{}_{}", self.config.label, self.method())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = crate::data::read_text(path)?;
        let record: Self = serde_json::from_str(&text).map_err(|e| CliError::at(path, e))?;
        if record.schema_version != SCHEMA_VERSION {
            return Err(CliError::at(
                path,
                format!(
                    "record schema {} is not supported (expected {SCHEMA_VERSION})",
                    record.schema_version
                ),
            ));
        }
        Ok(record)
    }
}

/// Row of a level table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelRow {
    pub label: String,
    pub method: String,
    pub level: usize,
    pub median: f64,
    pub mad: f64,
    pub exact: Option<f64>,
}

pub fn write_levels(path: &Path, rows: &[LevelRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| CliError::at(path, e))?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(|e| CliError::at(path, e))
}

pub fn read_levels(path: &Path) -> Result<Vec<LevelRow>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| CliError::at(path, e))?;
    r.deserialize()
        .map(|row| row.map_err(|e| CliError::at(path, e)))
        .collect()
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| CliError::at(path, e))
}

pub fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::at(dir, e))
}

/// Write `<stem>.json` and `<stem>.csv` into `dir`; returns both paths.
pub fn save(record: &RunRecord, dir: &Path) -> Result<(PathBuf, PathBuf)> {
    ensure_dir(dir)?;
    let json = dir.join(format!("{}.json", record.stem()));
    let csv = dir.join(format!("{}.csv", record.stem()));
    write_text(&json, &(serde_json::to_string_pretty(record)? + "\n"))?;
    write_levels(&csv, &record.level_rows())?;
    Ok((json, csv))
}
