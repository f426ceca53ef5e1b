//! Statevector simulation of gate circuits.
//!
//! Basis state `b` has qubit `q` equal to bit `q` of `b`. Supports exact and
//! finite-shot expectations, stochastic Pauli noise trajectories with readout
//! flips, and unitary folding for zero-noise extrapolation.

pub mod circuit;
pub mod error;
pub mod gate;
pub mod measure;
pub mod noise;
pub mod state;

pub use circuit::Circuit;
pub use error::{Result, SimError};
pub use gate::{Angle, Gate, GateKind};
pub use measure::{expectation, expectation_shots, Estimate, Shots};
pub use noise::{noisy_expectation, noisy_trajectory, trajectory_rng, NoiseModel};
pub use state::{apply, circuit_unitary, expectation_exact, run, Statevector, MAX_QUBITS};
