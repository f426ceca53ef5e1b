//! Ansatz circuits tagged with their family, and the ansatz spec file format.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use simulator::{Angle, Circuit};

use crate::error::{AnsatzError, Result};

/// Circuit family of an ansatz.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    ParticleConserving,
    HardwareEfficient,
    Adapt,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::ParticleConserving => "particle_conserving",
            Family::HardwareEfficient => "hardware_efficient",
            Family::Adapt => "adapt",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "particle_conserving" => Ok(Family::ParticleConserving),
            "hardware_efficient" => Ok(Family::HardwareEfficient),
            "adapt" => Ok(Family::Adapt),
            other => Err(format!("unknown ansatz family {other:?}")),
        }
    }
}

/// Parameterized circuit of a known family.
#[derive(Debug, Clone, PartialEq)]
pub struct AnsatzCircuit {
    pub circuit: Circuit,
    pub family: Family,
}

impl AnsatzCircuit {
    pub fn new(circuit: Circuit, family: Family) -> Self {
        Self { circuit, family }
    }

    pub fn parameter_names(&self) -> &[String] {
        self.circuit.parameters()
    }

    pub fn parameter_count(&self) -> usize {
        self.circuit.parameter_count()
    }

    pub fn qubit_count(&self) -> usize {
        self.circuit.qubit_count()
    }

    /// Parse an ansatz spec: `FAMILY <name>` and `QUBITS <n>` header lines
    /// followed by one gate per line in the circuit text grammar. `#` starts
    /// a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut family = None;
        let mut circuit: Option<Circuit> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            let parse_err = |message: String| AnsatzError::Parse {
                line: i + 1,
                message,
            };
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            match words.next() {
                Some("FAMILY") => {
                    let name = words
                        .next()
                        .ok_or_else(|| parse_err("FAMILY needs a name".into()))?;
                    family = Some(name.parse::<Family>().map_err(parse_err)?);
                }
                Some("QUBITS") => {
                    let n = words
                        .next()
                        .and_then(|w| w.parse::<usize>().ok())
                        .filter(|&n| (1..=simulator::MAX_QUBITS).contains(&n))
                        .ok_or_else(|| parse_err("QUBITS needs a positive qubit count".into()))?;
                    if circuit.is_some() {
                        return Err(parse_err("QUBITS given twice".into()));
                    }
                    circuit = Some(Circuit::new(n));
                }
                Some(_) => {
                    let c = circuit
                        .as_mut()
                        .ok_or_else(|| parse_err("gate before QUBITS".into()))?;
                    c.push_text(line).map_err(parse_err)?;
                }
                None => unreachable!("line is not empty"),
            }
        }
        let line = text.lines().count();
        let family = family.ok_or(AnsatzError::Parse {
            line,
            message: "missing FAMILY".into(),
        })?;
        let circuit = circuit.ok_or(AnsatzError::Parse {
            line,
            message: "missing QUBITS".into(),
        })?;
        Ok(Self { circuit, family })
    }

    /// Spec file text for this ansatz.
    pub fn render(&self) -> String {
        format!(
            "FAMILY {}\nQUBITS {}\n{}",
            self.family,
            self.qubit_count(),
            self.circuit
        )
    }
}

/// Read an ansatz spec file.
pub fn load_ansatz(path: impl AsRef<Path>) -> Result<AnsatzCircuit> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| AnsatzError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    AnsatzCircuit::parse(&text)
}

/// Layered ansatz: `layers` layers of Ry rotations on every qubit, separated
/// by CNOTs on the `(control, target)` pairs of `entangler`.
pub fn hardware_efficient(
    qubits: usize,
    layers: usize,
    entangler: &[(usize, usize)],
) -> Result<AnsatzCircuit> {
    if qubits == 0 || layers == 0 {
        return Err(AnsatzError::Empty("hardware-efficient layout"));
    }
    if let Some(&(c, t)) = entangler
        .iter()
        .find(|(c, t)| c == t || *c >= qubits || *t >= qubits)
    {
        return Err(AnsatzError::Overlap(vec![c, t]));
    }
    let mut circuit = Circuit::new(qubits);
    for layer in 0..layers {
        if layer > 0 {
            for &(c, t) in entangler {
                circuit.cx(c, t);
            }
        }
        for q in 0..qubits {
            let p = circuit.new_parameter();
            circuit.ry(q, Angle::param(p));
        }
    }
    Ok(AnsatzCircuit::new(circuit, Family::HardwareEfficient))
}

/// Linear nearest-neighbour entangler `(0,1), (1,2), …`.
pub fn linear_entangler(qubits: usize) -> Vec<(usize, usize)> {
    (1..qubits).map(|q| (q - 1, q)).collect()
}
