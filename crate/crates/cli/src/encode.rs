//! Qubit encoding of a shell-model sector.

use std::path::{Path, PathBuf};

use encodings::{
    build_encoding_map, decode_gc, gc_transform, jw_encode, load_encoding_map, render_mapping,
    EncodedHamiltonian, EncodingMap, Scheme,
};
use pauli_core::render_pauli_sum;
use shell_basis::{
    build_fermionic_hamiltonian, build_sector_basis, fit_two_particle_sector, load_interaction,
    FermHamiltonian, ModelSpace,
};

use crate::data::resolve;
use crate::error::{CliError, Result};
use crate::record::{ensure_dir, write_text};
use crate::run::load_hamiltonian;

/// Target encoding of `nsm encode`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum EncodeScheme {
    /// Gray code on ceil(log2 Nb) qubits.
    Gc,
    /// Jordan-Wigner on one qubit per orbital.
    Jw,
}

impl EncodeScheme {
    pub fn name(self) -> &'static str {
        match self {
            EncodeScheme::Gc => "gc",
            EncodeScheme::Jw => "jw",
        }
    }
}

/// Source of the fermionic Hamiltonian.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HamiltonianSource {
    /// J-scheme interaction file.
    Interaction(PathBuf),
    /// Gray-code table and its mapping; the decoded sector matrix is fitted
    /// with a two-body operator.
    Table { pauli: PathBuf, mapping: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodeRequest {
    pub space: PathBuf,
    pub source: HamiltonianSource,
    pub particles: Option<usize>,
    pub twice_m: Option<i32>,
    pub scheme: EncodeScheme,
    /// Explicit Gray-code assignment for the output.
    pub mapping: Option<PathBuf>,
    pub label: Option<String>,
    pub out: PathBuf,
}

/// Paths written by [`encode`].
#[derive(Debug, Clone)]
pub struct EncodeOutput {
    pub hamiltonian: PathBuf,
    pub mapping: PathBuf,
    pub encoded: EncodedHamiltonian,
}

fn fermionic_hamiltonian(
    space: &ModelSpace,
    source: &HamiltonianSource,
) -> Result<FermHamiltonian> {
    match source {
        HamiltonianSource::Interaction(path) => {
            let data = load_interaction(resolve(path))?;
            Ok(build_fermionic_hamiltonian(&data, space)?)
        }
        HamiltonianSource::Table { pauli, mapping } => {
            let map = load_encoding_map(space, resolve(mapping))?;
            let table = load_hamiltonian(&resolve(pauli))?;
            let encoded = EncodedHamiltonian::new(table, map, "input table")?;
            let m = decode_gc(&encoded)?;
            Ok(fit_two_particle_sector(&encoded.map.basis, &m)?)
        }
    }
}

fn check_sector(
    map: &EncodingMap,
    particles: Option<usize>,
    twice_m: Option<i32>,
    path: &Path,
) -> Result<()> {
    let basis = &map.basis;
    if particles.is_some_and(|p| p != basis.particle_count)
        || twice_m.is_some_and(|m| m != basis.twice_m)
    {
        return Err(CliError::at(
            path,
            format!(
                "mapping describes {} particles with 2M = {}",
                basis.particle_count, basis.twice_m
            ),
        ));
    }
    Ok(())
}

/// Encode the requested sector and write `<label>_<scheme>.pauli` and
/// `<label>_<scheme>.map` into the output directory.
pub fn encode(req: &EncodeRequest) -> Result<EncodeOutput> {
    let space = ModelSpace::load(resolve(&req.space))?;
    let h = fermionic_hamiltonian(&space, &req.source)?;
    let map = match &req.mapping {
        Some(path) if req.scheme == EncodeScheme::Jw => {
            return Err(CliError::at(
                path,
                "an explicit codeword mapping applies only to the gc scheme",
            ));
        }
        Some(path) => {
            let map = load_encoding_map(&space, resolve(path))?;
            check_sector(&map, req.particles, req.twice_m, path)?;
            Some(map)
        }
        None => None,
    };
    let encoded = match (req.scheme, map) {
        (EncodeScheme::Gc, Some(map)) => gc_transform(&h, &map)?,
        (scheme, None) => {
            let (Some(particles), Some(twice_m)) = (req.particles, req.twice_m) else {
                return Err(CliError::input(
                    "--particles and --twice-m are required without --mapping",
                ));
            };
            let basis = build_sector_basis(&space, particles, twice_m)?;
            match scheme {
                EncodeScheme::Gc => {
                    gc_transform(&h, &build_encoding_map(basis, Scheme::Gray, None)?)?
                }
                EncodeScheme::Jw => jw_encode(&h, basis)?,
            }
        }
        (EncodeScheme::Jw, Some(_)) => unreachable!("rejected above"),
    };
    let basis = &encoded.map.basis;
    let label = req.label.clone().unwrap_or_else(|| {
        format!(
            "{}_{}n_m{}",
            space.name, basis.particle_count, basis.twice_m
        )
    });
    ensure_dir(&req.out)?;
    let stem = format!("{label}_{}", req.scheme.name());
    let hamiltonian = req.out.join(format!("{stem}.pauli"));
    let mapping = req.out.join(format!("{stem}.map"));
    let header = format!(
        "{}\n{} states on {} qubits",
        encoded.label,
        basis.len(),
        encoded.qubit_count()
    );
    write_text(
        &hamiltonian,
        &render_pauli_sum(&encoded.pauli, Some(&header))?,
    )?;
    write_text(&mapping, &render_mapping(&encoded.map))?;
    Ok(EncodeOutput {
        hamiltonian,
        mapping,
        encoded,
    })
}
