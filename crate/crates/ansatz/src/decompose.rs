//! Lowering to one-qubit gates and CNOTs, and gate counting.

use std::f64::consts::FRAC_PI_4;

use simulator::{Angle, Circuit, Gate, GateKind};

use crate::error::{AnsatzError, Result};

/// How controlled rotations are lowered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Decomposition {
    /// Controlled Ry as `Ry(θ/2) CX Ry(−θ/2) CX`; multi-controlled Ry as a
    /// Gray-code chain of such blocks with angles `±θ/2^{k−1}`.
    #[default]
    Compact,
    /// As `Compact`, except that inside multi-controlled Ry chains each
    /// controlled rotation is the generic controlled-U form with three `Rz`
    /// phase slots (5 one-qubit gates and 2 CNOTs).
    GenericControlledU,
}

/// Parameter count and gate counts after lowering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GateCounts {
    pub parameters: usize,
    pub one_qubit: usize,
    pub two_qubit: usize,
}

impl std::fmt::Display for GateCounts {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}/{}/{}",
            self.parameters, self.one_qubit, self.two_qubit
        )
    }
}

fn push(
    out: &mut Circuit,
    kind: GateKind,
    target: usize,
    controls: Vec<usize>,
    angle: Option<Angle>,
) {
    out.push(Gate::new(kind, target, controls, angle).expect("lowered gates are well formed"))
        .expect("lowered gates stay on the register");
}

fn controlled_ry(out: &mut Circuit, control: usize, target: usize, angle: Angle, generic: bool) {
    let zero = || Some(Angle::Fixed(0.0));
    if generic {
        push(out, GateKind::Rz, target, vec![], zero());
    }
    push(out, GateKind::Ry, target, vec![], Some(angle.scaled(0.5)));
    push(out, GateKind::Cnot, target, vec![control], None);
    if generic {
        push(out, GateKind::Rz, target, vec![], zero());
    }
    push(out, GateKind::Ry, target, vec![], Some(angle.scaled(-0.5)));
    push(out, GateKind::Cnot, target, vec![control], None);
    if generic {
        push(out, GateKind::Rz, target, vec![], zero());
    }
}

/// `Ry(θ)` on `target` if every control is `|1⟩`, via the identity
/// `AND(c) = 2^{1−k} Σ_{s≠0} (−1)^{|s|+1} XOR_s(c)`: parities are accumulated
/// in Gray-code order on the highest control of each subset.
fn multi_controlled_ry(
    out: &mut Circuit,
    controls: &[usize],
    target: usize,
    angle: Angle,
    generic: bool,
) {
    let k = controls.len();
    let step = angle.scaled(1.0 / f64::from(1u32 << (k - 1)));
    let mut holds: Vec<u64> = (0..k).map(|i| 1 << i).collect();
    for i in 1u64..1 << k {
        let subset = i ^ (i >> 1);
        let top = 63 - subset.leading_zeros() as usize;
        let diff = holds[top] ^ subset;
        for b in (0..k).filter(|&b| diff >> b & 1 == 1) {
            push(out, GateKind::Cnot, controls[top], vec![controls[b]], None);
        }
        holds[top] = subset;
        let a = if subset.count_ones() % 2 == 1 {
            step
        } else {
            step.negated()
        };
        controlled_ry(out, controls[top], target, a, generic);
    }
}

/// Toffoli with `T`-type gates written as `Rz(±π/4)`; equal to the Toffoli
/// up to a global phase.
fn toffoli(out: &mut Circuit, a: usize, b: usize, t: usize) {
    let rz = |out: &mut Circuit, q: usize, sign: f64| {
        push(
            out,
            GateKind::Rz,
            q,
            vec![],
            Some(Angle::Fixed(sign * FRAC_PI_4)),
        )
    };
    let cx = |out: &mut Circuit, c: usize, t: usize| push(out, GateKind::Cnot, t, vec![c], None);
    push(out, GateKind::H, t, vec![], None);
    cx(out, b, t);
    rz(out, t, -1.0);
    cx(out, a, t);
    rz(out, t, 1.0);
    cx(out, b, t);
    rz(out, t, -1.0);
    cx(out, a, t);
    rz(out, b, 1.0);
    rz(out, t, 1.0);
    push(out, GateKind::H, t, vec![], None);
    cx(out, a, b);
    rz(out, a, 1.0);
    rz(out, b, -1.0);
    cx(out, a, b);
}

/// Lower `circuit` to one-qubit gates and CNOTs. Multi-controlled X with
/// two controls becomes a Toffoli network (exact up to global phase); more
/// controls are rejected.
pub fn decompose(circuit: &Circuit, style: Decomposition) -> Result<Circuit> {
    let generic = style == Decomposition::GenericControlledU;
    let mut out = Circuit::new(circuit.qubit_count());
    for name in circuit.parameters() {
        out.parameter(name);
    }
    for g in circuit.gates() {
        match g.kind {
            GateKind::CRy => controlled_ry(
                &mut out,
                g.controls[0],
                g.target,
                g.angle.expect("rotation"),
                false,
            ),
            GateKind::MCRy if g.controls.len() == 1 => controlled_ry(
                &mut out,
                g.controls[0],
                g.target,
                g.angle.expect("rotation"),
                false,
            ),
            GateKind::MCRy => multi_controlled_ry(
                &mut out,
                &g.controls,
                g.target,
                g.angle.expect("rotation"),
                generic,
            ),
            GateKind::MCX => match g.controls[..] {
                [c] => push(&mut out, GateKind::Cnot, g.target, vec![c], None),
                [a, b] => toffoli(&mut out, a, b, g.target),
                _ => {
                    return Err(AnsatzError::Unsupported(format!(
                        "{}-controlled X",
                        g.controls.len()
                    )))
                }
            },
            _ => push(&mut out, g.kind, g.target, g.controls.clone(), g.angle),
        }
    }
    Ok(out)
}

/// Parameter count and gate counts of `circuit` after [`decompose`].
pub fn gate_counts(circuit: &Circuit, style: Decomposition) -> Result<GateCounts> {
    let lowered = decompose(circuit, style)?;
    Ok(GateCounts {
        parameters: circuit.parameter_count(),
        one_qubit: lowered.count_with_arity(1),
        two_qubit: lowered.count_with_arity(2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(c: &Circuit, style: Decomposition) -> (usize, usize) {
        let g = gate_counts(c, style).unwrap();
        (g.one_qubit, g.two_qubit)
    }

    #[test]
    fn controlled_rotation_costs() {
        let mut c = Circuit::new(4);
        let p = c.parameter("t");
        c.cry(0, 1, Angle::param(p));
        assert_eq!(counts(&c, Decomposition::Compact), (2, 2));
        assert_eq!(counts(&c, Decomposition::GenericControlledU), (2, 2));
        let mut c = Circuit::new(4);
        let p = c.parameter("t");
        c.mcry(&[0, 1], 3, Angle::param(p));
        assert_eq!(counts(&c, Decomposition::Compact), (6, 8));
        assert_eq!(counts(&c, Decomposition::GenericControlledU), (15, 8));
        let mut c = Circuit::new(4);
        c.mcry(&[0, 1, 2], 3, Angle::Fixed(0.3));
        assert_eq!(counts(&c, Decomposition::Compact), (14, 20));
    }

    #[test]
    fn toffoli_cost_and_limit() {
        let mut c = Circuit::new(4);
        c.mcx(&[0, 1], 2);
        assert_eq!(counts(&c, Decomposition::Compact), (9, 6));
        c.mcx(&[0, 1, 2], 3);
        assert!(matches!(
            decompose(&c, Decomposition::Compact),
            Err(AnsatzError::Unsupported(_))
        ));
    }
}
