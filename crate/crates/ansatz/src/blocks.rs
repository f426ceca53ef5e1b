//! Reduced-gate excitation blocks and the particle-conserving ansatz.
//!
//! Occupations are bitmasks: orbital `i` occupied means qubit `i` is `|1⟩`.

use std::collections::BTreeSet;

use pauli_core::format_bitstring;
use simulator::{Angle, Circuit, Gate, GateKind};

use crate::error::{AnsatzError, Result};
use crate::family::{AnsatzCircuit, Family};

/// Single or double excitation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExcitationKind {
    Single,
    Double,
}

/// One excitation block: a (multi-)controlled Ry on the highest added
/// orbital followed by CNOTs fanning out from it to the other active qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct ExcitationBlock {
    pub kind: ExcitationKind,
    /// Orbitals empty before and occupied after the excitation.
    pub added: Vec<usize>,
    /// Orbitals occupied before and empty after the excitation.
    pub removed: Vec<usize>,
    /// Controls of the Ry gate; may include removed orbitals.
    pub controls: Vec<usize>,
    /// Extra controls on every fan-out CNOT.
    pub fanout_controls: Vec<usize>,
    pub parameter: String,
}

impl ExcitationBlock {
    fn new(
        added: Vec<usize>,
        removed: Vec<usize>,
        controls: Vec<usize>,
        fanout_controls: Vec<usize>,
        parameter: impl Into<String>,
    ) -> Result<Self> {
        let kind = match (added.len(), removed.len()) {
            (1, 1) => ExcitationKind::Single,
            (2, 2) => ExcitationKind::Double,
            _ => {
                return Err(AnsatzError::Unsupported(format!(
                    "excitation {removed:?} -> {added:?}"
                )))
            }
        };
        let mut active: Vec<usize> = added.iter().chain(&removed).copied().collect();
        active.sort_unstable();
        active.dedup();
        if active.len() != added.len() + removed.len() {
            return Err(AnsatzError::Overlap(
                added.iter().chain(&removed).copied().collect(),
            ));
        }
        let distinct = |v: &[usize]| v.iter().collect::<BTreeSet<_>>().len() == v.len();
        if !distinct(&controls)
            || !distinct(&fanout_controls)
            || controls.iter().any(|q| added.contains(q))
            || fanout_controls.iter().any(|q| active.contains(q))
        {
            return Err(AnsatzError::Overlap(
                active
                    .into_iter()
                    .chain(controls)
                    .chain(fanout_controls)
                    .collect(),
            ));
        }
        Ok(Self {
            kind,
            added,
            removed,
            controls,
            fanout_controls,
            parameter: parameter.into(),
        })
    }

    /// Qubits whose occupation the block changes.
    pub fn active(&self) -> Vec<usize> {
        self.removed.iter().chain(&self.added).copied().collect()
    }

    /// Qubit carrying the rotation.
    pub fn rotation_target(&self) -> usize {
        *self
            .added
            .iter()
            .max()
            .expect("blocks have at least one added orbital")
    }

    /// CNOT targets in emission order (descending qubit index).
    pub fn fanout_targets(&self) -> Vec<usize> {
        let t = self.rotation_target();
        let mut targets: Vec<usize> = self
            .added
            .iter()
            .chain(&self.removed)
            .copied()
            .filter(|&q| q != t)
            .collect();
        targets.sort_unstable_by(|a, b| b.cmp(a));
        targets
    }

    /// Append the block to `circuit`, registering its parameter by name.
    pub fn append_to(&self, circuit: &mut Circuit) -> Result<()> {
        let t = self.rotation_target();
        let angle = Angle::param(circuit.parameter(&self.parameter));
        let kind = match self.controls.len() {
            0 => GateKind::Ry,
            1 => GateKind::CRy,
            _ => GateKind::MCRy,
        };
        circuit.push(Gate::new(kind, t, self.controls.clone(), Some(angle))?)?;
        for q in self.fanout_targets() {
            let controls: Vec<usize> = std::iter::once(t)
                .chain(self.fanout_controls.iter().copied())
                .collect();
            let kind = if controls.len() == 1 {
                GateKind::Cnot
            } else {
                GateKind::MCX
            };
            circuit.push(Gate::new(kind, q, controls, None)?)?;
        }
        Ok(())
    }
}

fn block_circuit(qubits: usize, block: &ExcitationBlock) -> Result<Circuit> {
    let mut c = Circuit::new(qubits);
    block.append_to(&mut c)?;
    Ok(c)
}

/// Single excitation between `q_lo` (occupied) and `q_hi` (empty): a Ry on
/// `q_hi` controlled by `q_lo` and `controls`, then a CNOT from `q_hi` to
/// `q_lo`. On `|0_hi 1_lo⟩` it prepares `cos(θ/2)|0_hi 1_lo⟩ + sin(θ/2)|1_hi 0_lo⟩`.
/// The parameter is named `theta`.
pub fn single_excitation(
    qubits: usize,
    q_hi: usize,
    q_lo: usize,
    controls: &[usize],
) -> Result<Circuit> {
    let ry_controls: Vec<usize> = std::iter::once(q_lo)
        .chain(controls.iter().copied())
        .collect();
    block_circuit(
        qubits,
        &ExcitationBlock::new(vec![q_hi], vec![q_lo], ry_controls, vec![], "theta")?,
    )
}

/// Double excitation from the occupied pair `(q[0], q[1])` to the empty pair
/// `(q[2], q[3])`: a Ry on the higher of `q[2], q[3]` controlled by both
/// occupied qubits and `controls`, then three fan-out CNOTs. The parameter
/// is named `theta`.
pub fn double_excitation(qubits: usize, q: [usize; 4], controls: &[usize]) -> Result<Circuit> {
    let ry_controls: Vec<usize> = [q[0], q[1]]
        .into_iter()
        .chain(controls.iter().copied())
        .collect();
    block_circuit(
        qubits,
        &ExcitationBlock::new(
            vec![q[2], q[3]],
            vec![q[0], q[1]],
            ry_controls,
            vec![],
            "theta",
        )?,
    )
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| mask >> i & 1 == 1)
}

/// Blocks linking each state of `basis_order` to its predecessor.
///
/// Rotation controls are the occupied orbitals of the source state, minus
/// orbitals occupied in every state prepared so far. Fan-out CNOTs get the
/// remaining shared orbitals as extra controls when another prepared state
/// has the rotation target occupied.
pub fn excitation_chain(orbitals: usize, basis_order: &[u64]) -> Result<Vec<ExcitationBlock>> {
    let show = |s: u64| format_bitstring(s, orbitals);
    let first = *basis_order
        .first()
        .ok_or(AnsatzError::Empty("basis order"))?;
    let particles = first.count_ones();
    let mut seen = BTreeSet::new();
    for &s in basis_order {
        if s >> orbitals != 0 || s.count_ones() != particles {
            return Err(AnsatzError::ParticleMismatch {
                state: show(s),
                found: s.count_ones(),
                expected: particles,
            });
        }
        if !seen.insert(s) {
            return Err(AnsatzError::RepeatedState(show(s)));
        }
    }
    let mut blocks = Vec::new();
    for (k, pair) in basis_order.windows(2).enumerate() {
        let (from, to) = (pair[0], pair[1]);
        let span = &basis_order[..=k];
        let removed_mask = from & !to;
        if removed_mask.count_ones() > 2 {
            return Err(AnsatzError::NotAnExcitation {
                from: show(from),
                to: show(to),
            });
        }
        let always = span.iter().fold(u64::MAX, |acc, &s| acc & s);
        let added: Vec<usize> = bits(to & !from).collect();
        let target = *added
            .last()
            .expect("distinct states of equal weight differ");
        let controls: Vec<usize> = bits(from & !always).collect();
        let shared = from & to & !always;
        let clash = |s: &u64| *s != from && s >> target & 1 == 1;
        let fanout_controls: Vec<usize> = if span.iter().any(clash) {
            bits(shared).collect()
        } else {
            vec![]
        };
        let isolated = span
            .iter()
            .filter(|s| clash(s))
            .all(|&s| s & shared != shared);
        if !isolated {
            return Err(AnsatzError::CannotIsolate { state: show(to) });
        }
        blocks.push(ExcitationBlock::new(
            added,
            bits(removed_mask).collect(),
            controls,
            fanout_controls,
            format!("theta_{k}"),
        )?);
    }
    Ok(blocks)
}

/// State-preparation circuit whose reachable states are exactly
/// `basis_order`: X gates prepare the first state, then one excitation block
/// per further state, with parameter `theta_k` moving weight from state `k`
/// to state `k + 1`.
pub fn particle_conserving_ansatz(orbitals: usize, basis_order: &[u64]) -> Result<AnsatzCircuit> {
    let blocks = excitation_chain(orbitals, basis_order)?;
    let mut circuit = Circuit::new(orbitals);
    for q in bits(basis_order[0]) {
        circuit.x(q);
    }
    for b in &blocks {
        b.append_to(&mut circuit)?;
    }
    Ok(AnsatzCircuit::new(circuit, Family::ParticleConserving))
}

/// Rotation angles preparing `Σ c_i |basis_i⟩` with the chain ansatz.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleSolution {
    pub angles: Vec<f64>,
    /// Set when the weight was used up before the last state; the remaining
    /// angles are 0.
    pub degenerate: bool,
}

/// Squared-norm tolerance for [`angles_from_amplitudes`].
pub const AMPLITUDE_NORM_TOLERANCE: f64 = 1e-9;

/// Angles with `θ_i/2 = arccos(c_i / √(1 − Σ_{j<i} c_j²))`. The last angle
/// also fixes the sign of the final amplitude, so real amplitudes are
/// reproduced with their signs.
pub fn angles_from_amplitudes(c: &[f64]) -> Result<AngleSolution> {
    if c.is_empty() {
        return Err(AnsatzError::Empty("amplitudes"));
    }
    let norm: f64 = c.iter().map(|x| x * x).sum();
    if (norm - 1.0).abs() > AMPLITUDE_NORM_TOLERANCE {
        return Err(AnsatzError::NotNormalized(norm));
    }
    let n = c.len();
    let mut angles = vec![0.0; n - 1];
    let mut used = 0.0_f64;
    for i in 0..n.saturating_sub(1) {
        let remaining = (1.0 - used).max(0.0).sqrt();
        if remaining < 1e-12 {
            return Ok(AngleSolution {
                angles,
                degenerate: true,
            });
        }
        angles[i] = if i == n - 2 {
            2.0 * c[n - 1].atan2(c[n - 2])
        } else {
            2.0 * (c[i] / remaining).clamp(-1.0, 1.0).acos()
        };
        used += c[i] * c[i];
    }
    Ok(AngleSolution {
        angles,
        degenerate: false,
    })
}
