//! The `nsm` experiment runner: encodes shell-model sectors, runs seeded
//! algorithm ensembles, persists reproducible run records and draws level
//! schemes.

pub mod cli;
pub mod config;
pub mod data;
pub mod encode;
pub mod error;
pub mod record;
pub mod report;
pub mod run;

pub use cli::{build_config, load_config, Cli, Command, Common};
pub use config::{Method, NoiseSetting, OptimizerSetting, RunConfig, ShotSetting};
pub use data::{data_dir, resolve, sha256_file, DATA_DIR_VAR, PINNED_DIGESTS};
pub use encode::{encode, EncodeRequest, EncodeScheme, HamiltonianSource};
pub use error::{CliError, Result};
pub use record::{read_levels, LevelRow, RunRecord, ZneSummary};
pub use report::{collect_records, level_scheme_svg, write_report};
pub use run::{execute, replay, spectrum};
