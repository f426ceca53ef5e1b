//! Circuits with named parameters, their text form and unitary folding.

use std::fmt;

use crate::error::{Result, SimError};
use crate::gate::{Angle, Gate, GateKind};

/// Ordered gate list over `qubits` qubits with named parameter slots.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    qubits: usize,
    gates: Vec<Gate>,
    parameters: Vec<String>,
}

impl Circuit {
    pub fn new(qubits: usize) -> Self {
        Self {
            qubits,
            gates: Vec::new(),
            parameters: Vec::new(),
        }
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn parameters(&self) -> &[String] {
        &self.parameters
    }

    pub fn parameter_count(&self) -> usize {
        self.parameters.len()
    }

    /// Index of parameter `name`, registering it if new.
    pub fn parameter(&mut self, name: &str) -> usize {
        match self.parameters.iter().position(|p| p == name) {
            Some(i) => i,
            None => {
                self.parameters.push(name.to_string());
                self.parameters.len() - 1
            }
        }
    }

    /// Register a fresh parameter `theta_<k>` with the next free `k`.
    pub fn new_parameter(&mut self) -> usize {
        let mut k = self.parameters.len();
        while self.parameters.iter().any(|p| *p == format!("theta_{k}")) {
            k += 1;
        }
        self.parameter(&format!("theta_{k}"))
    }

    /// Append a gate after checking qubit indices and parameter slots.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        for q in gate.qubits() {
            if q >= self.qubits {
                return Err(SimError::QubitOutOfRange {
                    qubit: q,
                    qubits: self.qubits,
                });
            }
        }
        if let Some(i) = gate.angle.and_then(|a| a.param_index()) {
            if i >= self.parameters.len() {
                return Err(SimError::UnboundParameter {
                    expected: i + 1,
                    got: self.parameters.len(),
                });
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    fn add(
        &mut self,
        kind: GateKind,
        target: usize,
        controls: Vec<usize>,
        angle: Option<Angle>,
    ) -> &mut Self {
        let gate = Gate::new(kind, target, controls, angle).unwrap_or_else(|e| panic!("{e}"));
        self.push(gate).unwrap_or_else(|e| panic!("{e}"));
        self
    }

    /// # Panics
    /// The gate helpers panic on out-of-range or repeated qubits; use
    /// [`Circuit::push`] for checked insertion.
    pub fn x(&mut self, q: usize) -> &mut Self {
        self.add(GateKind::X, q, vec![], None)
    }

    pub fn h(&mut self, q: usize) -> &mut Self {
        self.add(GateKind::H, q, vec![], None)
    }

    pub fn s(&mut self, q: usize) -> &mut Self {
        self.add(GateKind::S, q, vec![], None)
    }

    pub fn sdg(&mut self, q: usize) -> &mut Self {
        self.add(GateKind::Sdg, q, vec![], None)
    }

    pub fn ry(&mut self, q: usize, angle: Angle) -> &mut Self {
        self.add(GateKind::Ry, q, vec![], Some(angle))
    }

    pub fn rz(&mut self, q: usize, angle: Angle) -> &mut Self {
        self.add(GateKind::Rz, q, vec![], Some(angle))
    }

    pub fn cx(&mut self, control: usize, target: usize) -> &mut Self {
        self.add(GateKind::Cnot, target, vec![control], None)
    }

    pub fn cry(&mut self, control: usize, target: usize, angle: Angle) -> &mut Self {
        self.add(GateKind::CRy, target, vec![control], Some(angle))
    }

    pub fn mcry(&mut self, controls: &[usize], target: usize, angle: Angle) -> &mut Self {
        self.add(GateKind::MCRy, target, controls.to_vec(), Some(angle))
    }

    pub fn mcx(&mut self, controls: &[usize], target: usize) -> &mut Self {
        self.add(GateKind::MCX, target, controls.to_vec(), None)
    }

    /// Append `other`, sharing parameters that have the same name.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        if other.qubits != self.qubits {
            return Err(SimError::SizeMismatch {
                left: self.qubits,
                right: other.qubits,
            });
        }
        let remap: Vec<usize> = other.parameters.iter().map(|p| self.parameter(p)).collect();
        for g in &other.gates {
            let mut g = g.clone();
            if let Some(Angle::Param { index, scale }) = g.angle {
                g.angle = Some(Angle::Param {
                    index: remap[index],
                    scale,
                });
            }
            self.gates.push(g);
        }
        Ok(())
    }

    /// Adjoint circuit: reversed order, every gate inverted.
    pub fn inverse(&self) -> Self {
        Self {
            qubits: self.qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            parameters: self.parameters.clone(),
        }
    }

    /// Number of gates touching exactly `arity` qubits.
    pub fn count_with_arity(&self, arity: usize) -> usize {
        self.gates.iter().filter(|g| g.arity() == arity).count()
    }

    /// Check that `params` binds every parameter.
    pub fn check_bindings(&self, params: &[f64]) -> Result<()> {
        if params.len() != self.parameters.len() {
            return Err(SimError::UnboundParameter {
                expected: self.parameters.len(),
                got: params.len(),
            });
        }
        Ok(())
    }

    /// Parse gate lines (see [`Circuit::push_text`]) into a new circuit.
    pub fn from_text(qubits: usize, text: &str) -> Result<Self> {
        let mut c = Self::new(qubits);
        for (idx, raw) in text.lines().enumerate() {
            c.push_text(raw).map_err(|message| SimError::Parse {
                line: idx + 1,
                message,
            })?;
        }
        Ok(c)
    }

    /// Append one line of the gate grammar; comments and blank lines are ignored.
    ///
    /// ```text
    /// X q2 | H q0 | S q0 | SDG q0 | RY q0 <angle> | RZ q0 <angle>
    /// CX <control> <target>
    /// CRY <target> <control> <angle> [controls=qa,qb]
    /// MCRY <target> <angle> controls=qa,qb
    /// MCX <target> controls=qa,qb
    /// ```
    ///
    /// An angle is a number, a parameter name, `-name` or `<number>*name`.
    pub fn push_text(&mut self, line: &str) -> std::result::Result<(), String> {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            return Ok(());
        }
        let mut fields: Vec<&str> = line.split_whitespace().collect();
        let extra = match fields.last().and_then(|f| f.strip_prefix("controls=")) {
            Some(list) => {
                let qs = list
                    .split(',')
                    .map(qubit)
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                fields.pop();
                qs
            }
            None => Vec::new(),
        };
        let kind = match fields[0].to_ascii_uppercase().as_str() {
            "X" => GateKind::X,
            "H" => GateKind::H,
            "S" => GateKind::S,
            "SDG" => GateKind::Sdg,
            "RY" => GateKind::Ry,
            "RZ" => GateKind::Rz,
            "CX" | "CNOT" => GateKind::Cnot,
            "CRY" => GateKind::CRy,
            "MCRY" => GateKind::MCRy,
            "MCX" => GateKind::MCX,
            other => return Err(format!("unknown gate {other:?}")),
        };
        let args = &fields[1..];
        let expected = match kind {
            GateKind::X | GateKind::H | GateKind::S | GateKind::Sdg | GateKind::MCX => 1,
            GateKind::Ry | GateKind::Rz | GateKind::Cnot | GateKind::MCRy => 2,
            GateKind::CRy => 3,
        };
        if args.len() != expected {
            return Err(format!(
                "{} expects {expected} arguments, found {}",
                kind.mnemonic(),
                args.len()
            ));
        }
        let (target, mut controls, angle) = match kind {
            GateKind::Cnot => (qubit(args[1])?, vec![qubit(args[0])?], None),
            GateKind::CRy => (
                qubit(args[0])?,
                vec![qubit(args[1])?],
                Some(self.angle(args[2])?),
            ),
            GateKind::Ry | GateKind::Rz | GateKind::MCRy => {
                (qubit(args[0])?, vec![], Some(self.angle(args[1])?))
            }
            _ => (qubit(args[0])?, vec![], None),
        };
        controls.extend(extra);
        let kind = match (kind, controls.len()) {
            (GateKind::CRy, n) if n > 1 => GateKind::MCRy,
            (k, _) => k,
        };
        let gate = Gate::new(kind, target, controls, angle).map_err(|e| e.to_string())?;
        self.push(gate).map_err(|e| e.to_string())
    }

    fn angle(&mut self, s: &str) -> std::result::Result<Angle, String> {
        if let Ok(v) = s.parse::<f64>() {
            return Ok(Angle::Fixed(v));
        }
        let (scale, name) = match s.split_once('*') {
            Some((k, name)) => (
                k.parse::<f64>()
                    .map_err(|_| format!("invalid angle {s:?}"))?,
                name,
            ),
            None => match s.strip_prefix('-') {
                Some(name) => (-1.0, name),
                None => (1.0, s),
            },
        };
        let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(format!("invalid angle {s:?}"));
        }
        Ok(Angle::Param {
            index: self.parameter(name),
            scale,
        })
    }

    fn render_angle(&self, a: &Angle) -> String {
        match *a {
            Angle::Fixed(v) => format!("{v}"),
            Angle::Param { index, scale: 1.0 } => self.parameters[index].clone(),
            Angle::Param { index, scale: -1.0 } => {
                format!("-{}", self.parameters[index])
            }
            Angle::Param { index, scale } => format!("{scale}*{}", self.parameters[index]),
        }
    }

    /// Folded circuit for noise amplification by `scale`.
    ///
    /// Odd scales replace every gate `G` by `G (G† G)^{(scale−1)/2}`. Even
    /// scales fold the whole circuit `(scale−2)/2` times and give one extra
    /// `G† G` to the first `⌈n/2⌉` gates, so the depth is close to `scale · n`.
    ///
    /// # Panics
    /// If `scale` is 0.
    pub fn fold(&self, scale: usize) -> Self {
        assert!(scale >= 1, "fold scale must be at least 1");
        let full = (scale - 1) / 2;
        let partial = if (scale - 1) % 2 == 1 {
            self.gates.len().div_ceil(2)
        } else {
            0
        };
        let mut gates = Vec::with_capacity(scale * self.gates.len() + 2);
        for (i, g) in self.gates.iter().enumerate() {
            gates.push(g.clone());
            let folds = full + usize::from(i < partial);
            for _ in 0..folds {
                gates.push(g.inverse());
                gates.push(g.clone());
            }
        }
        Self {
            qubits: self.qubits,
            gates,
            parameters: self.parameters.clone(),
        }
    }
}

fn qubit(s: &str) -> std::result::Result<usize, String> {
    s.strip_prefix('q')
        .and_then(|n| n.parse::<usize>().ok())
        .ok_or_else(|| format!("invalid qubit {s:?}, expected q<index>"))
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.gates {
            let angle = g.angle.as_ref().map(|a| self.render_angle(a));
            let list = |qs: &[usize]| {
                qs.iter()
                    .map(|q| format!("q{q}"))
                    .collect::<Vec<_>>()
                    .join(",")
            };
            match g.kind {
                GateKind::Cnot => writeln!(f, "CX q{} q{}", g.controls[0], g.target)?,
                GateKind::CRy => {
                    writeln!(f, "CRY q{} q{} {}", g.target, g.controls[0], angle.unwrap())?
                }
                GateKind::MCRy => writeln!(
                    f,
                    "MCRY q{} {} controls={}",
                    g.target,
                    angle.unwrap(),
                    list(&g.controls)
                )?,
                GateKind::MCX => writeln!(f, "MCX q{} controls={}", g.target, list(&g.controls))?,
                kind => match angle {
                    Some(a) => writeln!(f, "{} q{} {a}", kind.mnemonic(), g.target)?,
                    None => writeln!(f, "{} q{}", kind.mnemonic(), g.target)?,
                },
            }
        }
        Ok(())
    }
}
