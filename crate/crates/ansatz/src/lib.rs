//! Circuit families: reduced-gate excitation blocks, the particle-conserving
//! state-preparation ansatz, hardware-efficient layered ansätze, ADAPT
//! operator pools and Pauli-evolution circuits.

pub mod blocks;
pub mod decompose;
pub mod error;
pub mod family;
pub mod pools;

pub use blocks::{
    angles_from_amplitudes, double_excitation, excitation_chain, particle_conserving_ansatz,
    single_excitation, AngleSolution, ExcitationBlock, ExcitationKind, AMPLITUDE_NORM_TOLERANCE,
};
pub use decompose::{decompose, gate_counts, Decomposition, GateCounts};
pub use error::{AnsatzError, Result};
pub use family::{hardware_efficient, linear_entangler, load_ansatz, AnsatzCircuit, Family};
pub use pools::{append_pauli_evolution, pauli_evolution, pool_g, pool_v, OperatorPool, PoolKind};
