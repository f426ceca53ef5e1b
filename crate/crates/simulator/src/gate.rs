//! Gate set and rotation angles.

use std::fmt;

use crate::error::{Result, SimError};

/// Gate kinds. Rotations are `Ry(θ) = exp(−iθY/2)` and `Rz(θ) = exp(−iθZ/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    X,
    H,
    S,
    Sdg,
    Ry,
    Rz,
    /// Controlled X with exactly one control.
    Cnot,
    /// Controlled Ry with exactly one control.
    CRy,
    /// Ry conditioned on one or more controls.
    MCRy,
    /// X conditioned on one or more controls.
    MCX,
}

impl GateKind {
    pub fn is_rotation(self) -> bool {
        matches!(
            self,
            GateKind::Ry | GateKind::Rz | GateKind::CRy | GateKind::MCRy
        )
    }

    /// Mnemonic used in the circuit text format.
    pub fn mnemonic(self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::Sdg => "SDG",
            GateKind::Ry => "RY",
            GateKind::Rz => "RZ",
            GateKind::Cnot => "CX",
            GateKind::CRy => "CRY",
            GateKind::MCRy => "MCRY",
            GateKind::MCX => "MCX",
        }
    }

    fn control_count_ok(self, controls: usize) -> bool {
        match self {
            GateKind::X
            | GateKind::H
            | GateKind::S
            | GateKind::Sdg
            | GateKind::Ry
            | GateKind::Rz => controls == 0,
            GateKind::Cnot | GateKind::CRy => controls == 1,
            GateKind::MCRy | GateKind::MCX => controls >= 1,
        }
    }
}

/// Rotation angle: a constant or a scaled circuit parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Angle {
    Fixed(f64),
    Param { index: usize, scale: f64 },
}

impl Angle {
    pub fn param(index: usize) -> Self {
        Angle::Param { index, scale: 1.0 }
    }

    /// Value under the given parameter bindings.
    pub fn resolve(&self, params: &[f64]) -> f64 {
        match *self {
            Angle::Fixed(v) => v,
            Angle::Param { index, scale } => scale * params[index],
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        match *self {
            Angle::Fixed(v) => Angle::Fixed(factor * v),
            Angle::Param { index, scale } => Angle::Param {
                index,
                scale: factor * scale,
            },
        }
    }

    pub fn negated(&self) -> Self {
        self.scaled(-1.0)
    }

    pub fn param_index(&self) -> Option<usize> {
        match *self {
            Angle::Fixed(_) => None,
            Angle::Param { index, .. } => Some(index),
        }
    }
}

/// One gate acting on `target`, conditioned on every qubit in `controls`.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub target: usize,
    pub controls: Vec<usize>,
    pub angle: Option<Angle>,
}

impl Gate {
    /// Build and check control count, angle presence and distinct qubits.
    pub fn new(
        kind: GateKind,
        target: usize,
        controls: Vec<usize>,
        angle: Option<Angle>,
    ) -> Result<Self> {
        let gate = Self {
            kind,
            target,
            controls,
            angle,
        };
        if !kind.control_count_ok(gate.controls.len()) || kind.is_rotation() != gate.angle.is_some()
        {
            return Err(SimError::MalformedGate(gate.to_string()));
        }
        let qubits = gate.qubits();
        if (1..qubits.len()).any(|i| qubits[..i].contains(&qubits[i])) {
            return Err(SimError::OverlappingQubits(gate.to_string()));
        }
        Ok(gate)
    }

    /// Target followed by controls.
    pub fn qubits(&self) -> Vec<usize> {
        std::iter::once(self.target)
            .chain(self.controls.iter().copied())
            .collect()
    }

    /// Number of qubits the gate touches.
    pub fn arity(&self) -> usize {
        1 + self.controls.len()
    }

    /// Adjoint gate.
    pub fn inverse(&self) -> Self {
        let kind = match self.kind {
            GateKind::S => GateKind::Sdg,
            GateKind::Sdg => GateKind::S,
            k => k,
        };
        Self {
            kind,
            target: self.target,
            controls: self.controls.clone(),
            angle: self.angle.map(|a| a.negated()),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.mnemonic())
    }
}
