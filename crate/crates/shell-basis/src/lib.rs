//! Shell-model spaces, m-scheme bases, J-scheme interactions and the
//! second-quantized Hamiltonian with its sector-matrix oracle.
//!
//! Orbital `i` of a [`ModelSpace`] is bit `i` of an occupation state and
//! qubit `i` under one-hot encoding. Fermionic signs follow
//! `c†_i |f⟩ = (−1)^{Σ_{k<i} f_k} |f + e_i⟩`.

pub mod cg;
pub mod error;
pub mod hamiltonian;
pub mod interaction;
pub mod model_space;

pub use cg::{clebsch_gordan, triangle};
pub use error::{Result, ShellError};
pub use hamiltonian::{
    annihilate, apply_one_body, apply_two_body, build_fermionic_hamiltonian, create,
    fit_two_particle_sector, matrix_in_basis, matrix_in_states, pair_normalization, tbme_m_scheme,
    FermHamiltonian,
};
pub use interaction::{load_interaction, InteractionData, TbmeKey};
pub use model_space::{build_sector_basis, ChargedShell, ModelSpace, Orbital, SectorBasis, Shell};
