//! Variational algorithms on top of the statevector simulator: SPSA, VQE,
//! qubit-ADAPT-VQE, VQD, zero-noise extrapolation and ensemble statistics.

pub mod adapt;
pub mod error;
pub mod polish;
pub mod seeds;
pub mod spsa;
pub mod stats;
pub mod vqd;
pub mod vqe;
pub mod zne;

pub use adapt::{
    adapt_circuit, adapt_vqe, gradient_operators, reference_circuit, AdaptConfig, AdaptIteration,
    AdaptState, Termination,
};
pub use error::{AlgoError, Result};
pub use seeds::{derive_seed, derive_seed2};
pub use spsa::{spsa_minimize, SpsaConfig, SpsaResult};
pub use stats::{ensemble_stats, run_ensemble, spearman};
pub use vqd::{default_beta, vqd, VqdConfig, VqdResult};
pub use vqe::{vqe, EnergyObjective, VqeResult};
pub use zne::{linear_fit, zne, ZneConfig, ZneResult};
