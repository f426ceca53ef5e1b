//! Second-quantized Hamiltonians and their matrices in occupation bases.

use std::collections::{BTreeMap, HashMap};

use pauli_core::{Complex64, DenseMatrix};

use crate::cg::clebsch_gordan;
use crate::error::{Result, ShellError};
use crate::interaction::InteractionData;
use crate::model_space::{ModelSpace, SectorBasis};

/// Coefficients below this magnitude are not stored.
pub const COEFFICIENT_TOLERANCE: f64 = 1e-14;

/// Number-conserving fermionic operator with one- and two-body terms.
///
/// A one-body entry `(i, j) → x` is `x c†_i c_j`. A two-body entry
/// `(i, j, k, l) → x` is `x c†_i c†_j c_k c_l` in this literal order. Built
/// from an interaction, the two-body part is `¼ Σ v̄_{αβγδ} c†_α c†_β c_δ c_γ`
/// with `v̄_{αβγδ} = ⟨αβ|V|γδ⟩`, so the entry at `(α, β, δ, γ)` is `v̄_{αβγδ}/4`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FermHamiltonian {
    pub orbitals: usize,
    pub one_body: BTreeMap<(usize, usize), f64>,
    pub two_body: BTreeMap<(usize, usize, usize, usize), f64>,
    pub constant: f64,
}

impl FermHamiltonian {
    pub fn new(orbitals: usize) -> Self {
        assert!(orbitals <= 64, "at most 64 orbitals are supported");
        Self {
            orbitals,
            ..Self::default()
        }
    }

    /// Add `x c†_i c_j`.
    pub fn add_one_body(&mut self, i: usize, j: usize, x: f64) {
        assert!(
            i < self.orbitals && j < self.orbitals,
            "orbital index out of range"
        );
        *self.one_body.entry((i, j)).or_default() += x;
    }

    /// Add `x c†_i c†_j c_k c_l`.
    pub fn add_two_body(&mut self, i: usize, j: usize, k: usize, l: usize, x: f64) {
        assert!(
            [i, j, k, l].iter().all(|&q| q < self.orbitals),
            "orbital index out of range"
        );
        *self.two_body.entry((i, j, k, l)).or_default() += x;
    }

    /// Antisymmetrized element `v̄_{αβγδ}` recovered from storage.
    pub fn vbar(&self, a: usize, b: usize, c: usize, d: usize) -> f64 {
        4.0 * self.two_body.get(&(a, b, d, c)).copied().unwrap_or(0.0)
    }

    /// Hermitian conjugate (real coefficients).
    pub fn adjoint(&self) -> Self {
        Self {
            orbitals: self.orbitals,
            one_body: self
                .one_body
                .iter()
                .map(|(&(i, j), &x)| ((j, i), x))
                .collect(),
            two_body: self
                .two_body
                .iter()
                .map(|(&(i, j, k, l), &x)| ((l, k, j, i), x))
                .collect(),
            constant: self.constant,
        }
    }

    /// Whether the operator equals its adjoint term by term within `tol`.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        let adj = self.adjoint();
        let one = self
            .one_body
            .iter()
            .all(|(k, v)| (v - adj.one_body.get(k).copied().unwrap_or(0.0)).abs() <= tol);
        let two = self
            .two_body
            .iter()
            .all(|(k, v)| (v - adj.two_body.get(k).copied().unwrap_or(0.0)).abs() <= tol);
        one && two
    }
}

/// Sign `(−1)^{number of occupied orbitals below i}`.
fn jw_sign(state: u64, i: usize) -> f64 {
    if (state & ((1u64 << i) - 1)).count_ones() % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `c_i |state⟩ = sign |state'⟩`, or `None` when orbital `i` is empty.
pub fn annihilate(state: u64, i: usize) -> Option<(f64, u64)> {
    (state >> i & 1 == 1).then(|| (jw_sign(state, i), state & !(1u64 << i)))
}

/// `c†_i |state⟩ = sign |state'⟩`, or `None` when orbital `i` is occupied.
pub fn create(state: u64, i: usize) -> Option<(f64, u64)> {
    (state >> i & 1 == 0).then(|| (jw_sign(state, i), state | 1u64 << i))
}

/// Apply `c†_i c_j` to a basis state.
pub fn apply_one_body(state: u64, i: usize, j: usize) -> Option<(f64, u64)> {
    let (s1, st) = annihilate(state, j)?;
    let (s2, st) = create(st, i)?;
    Some((s1 * s2, st))
}

/// Apply `c†_i c†_j c_k c_l` to a basis state.
pub fn apply_two_body(state: u64, i: usize, j: usize, k: usize, l: usize) -> Option<(f64, u64)> {
    let (s1, st) = annihilate(state, l)?;
    let (s2, st) = annihilate(st, k)?;
    let (s3, st) = create(st, j)?;
    let (s4, st) = create(st, i)?;
    Some((s1 * s2 * s3 * s4, st))
}

/// Matrix elements `⟨s'|H|s⟩` over an explicit list of occupation states.
///
/// Components leaving the list are dropped; for a number- and M-conserving
/// `H` and a complete sector nothing is lost.
pub fn matrix_in_states(h: &FermHamiltonian, states: &[u64]) -> DenseMatrix {
    let index: HashMap<u64, usize> = states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let k = states.len();
    let mut m = DenseMatrix::zeros(k, k);
    for (col, &s) in states.iter().enumerate() {
        m[(col, col)] += Complex64::new(h.constant, 0.0);
        for (&(i, j), &x) in &h.one_body {
            if let Some((sign, out)) = apply_one_body(s, i, j) {
                if let Some(&row) = index.get(&out) {
                    m[(row, col)] += Complex64::new(sign * x, 0.0);
                }
            }
        }
        for (&(i, j, kk, l), &x) in &h.two_body {
            if let Some((sign, out)) = apply_two_body(s, i, j, kk, l) {
                if let Some(&row) = index.get(&out) {
                    m[(row, col)] += Complex64::new(sign * x, 0.0);
                }
            }
        }
    }
    m
}

/// Sector matrix of `h` in the basis ordering of `basis`.
pub fn matrix_in_basis(h: &FermHamiltonian, basis: &SectorBasis) -> DenseMatrix {
    matrix_in_states(h, basis.states())
}

/// Normalization factor `N_ab(JT) = √(1 − δ_ab(−1)^{J+T}) / (1 + δ_ab)`.
pub fn pair_normalization(same_shell: bool, j: u32, t: u32) -> f64 {
    if !same_shell {
        1.0
    } else if (j + t) % 2 == 0 {
        0.0
    } else {
        2f64.sqrt() / 2.0
    }
}

/// Antisymmetrized m-scheme element `v̄_{αβγδ} = ⟨αβ|V|γδ⟩`.
///
/// The uncoupled pair `c†_α c†_β|0⟩` is expanded in coupled states
/// `|ab; JM TM_T⟩` with Clebsch-Gordan coefficients in j and isospin; pairs on
/// the same shell with `J + T` even vanish.
pub fn tbme_m_scheme(
    data: &InteractionData,
    space: &ModelSpace,
    alpha: usize,
    beta: usize,
    gamma: usize,
    delta: usize,
) -> f64 {
    let [oa, ob, oc, od] = [alpha, beta, gamma, delta].map(|i| *space.orbital(i));
    let twice_m = oa.twice_jz + ob.twice_jz;
    let twice_mt = oa.twice_tz + ob.twice_tz;
    if alpha == beta || gamma == delta {
        return 0.0;
    }
    if twice_m != oc.twice_jz + od.twice_jz || twice_mt != oc.twice_tz + od.twice_tz {
        return 0.0;
    }
    let (sa, sb, sc, sd) = (oa.shell(), ob.shell(), oc.shell(), od.shell());
    let j_min = ((sa.twice_j as i32 - sb.twice_j as i32).abs())
        .max((sc.twice_j as i32 - sd.twice_j as i32).abs())
        .max(twice_m.abs());
    let j_max = (sa.twice_j + sb.twice_j).min(sc.twice_j + sd.twice_j) as i32;
    let mut total = 0.0;
    for twice_j in (j_min..=j_max).step_by(2) {
        let cg_j_bra = clebsch_gordan(
            sa.twice_j as i32,
            oa.twice_jz,
            sb.twice_j as i32,
            ob.twice_jz,
            twice_j,
            twice_m,
        );
        let cg_j_ket = clebsch_gordan(
            sc.twice_j as i32,
            oc.twice_jz,
            sd.twice_j as i32,
            od.twice_jz,
            twice_j,
            twice_m,
        );
        if cg_j_bra == 0.0 || cg_j_ket == 0.0 {
            continue;
        }
        let j = (twice_j / 2) as u32;
        for t in 0..=1u32 {
            let cg_t_bra = clebsch_gordan(1, oa.twice_tz, 1, ob.twice_tz, 2 * t as i32, twice_mt);
            let cg_t_ket = clebsch_gordan(1, oc.twice_tz, 1, od.twice_tz, 2 * t as i32, twice_mt);
            if cg_t_bra == 0.0 || cg_t_ket == 0.0 {
                continue;
            }
            let n_ab = pair_normalization(sa == sb, j, t);
            let n_cd = pair_normalization(sc == sd, j, t);
            if n_ab == 0.0 || n_cd == 0.0 {
                continue;
            }
            let v = data.tbme(sa, sb, sc, sd, j, t);
            total += cg_j_bra * cg_j_ket * cg_t_bra * cg_t_ket * v / (n_ab * n_cd);
        }
    }
    total
}

/// Fermionic Hamiltonian `Σ ε_α c†_α c_α + ¼ Σ v̄ c†c†cc + core` on a model space.
pub fn build_fermionic_hamiltonian(
    data: &InteractionData,
    space: &ModelSpace,
) -> Result<FermHamiltonian> {
    let n = space.len();
    let mut h = FermHamiltonian::new(n);
    h.constant = data.core_energy;
    for (i, o) in space.orbitals().iter().enumerate() {
        let e = data
            .spe
            .get(&o.charged_shell())
            .copied()
            .ok_or(ShellError::MissingSpe {
                n: o.n,
                l: o.l,
                twice_j: o.twice_j,
                twice_tz: o.twice_tz,
            })?;
        if e != 0.0 {
            h.add_one_body(i, i, e);
        }
    }
    if data.tbme_len() == 0 {
        return Ok(h);
    }
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            for c in 0..n {
                for d in 0..n {
                    if c == d {
                        continue;
                    }
                    let v = tbme_m_scheme(data, space, a, b, c, d);
                    if v.abs() > COEFFICIENT_TOLERANCE {
                        h.add_two_body(a, b, d, c, 0.25 * v);
                    }
                }
            }
        }
    }
    Ok(h)
}

/// Two-body operator whose matrix on a two-particle basis equals `m`.
///
/// Each entry `m[r][c]` with row state `{a < b}` and column state `{p < q}`
/// becomes `m[r][c] c†_a c†_b c_q c_p`, which maps the column state onto the
/// row state with sign +1 and annihilates every other two-particle state.
pub fn fit_two_particle_sector(basis: &SectorBasis, m: &DenseMatrix) -> Result<FermHamiltonian> {
    if basis.particle_count != 2 {
        return Err(ShellError::Unsupported(
            "sector fit requires two-particle states".into(),
        ));
    }
    if m.nrows() != basis.len() || m.ncols() != basis.len() {
        return Err(ShellError::SizeMismatch {
            expected: basis.len(),
            got: m.nrows(),
        });
    }
    let pair = |s: u64| {
        let lo = s.trailing_zeros() as usize;
        let hi = 63 - s.leading_zeros() as usize;
        (lo, hi)
    };
    let mut h = FermHamiltonian::new(basis.model_space.len());
    for (r, &row) in basis.states().iter().enumerate() {
        for (c, &col) in basis.states().iter().enumerate() {
            let x = m[(r, c)];
            if x.im.abs() > 1e-12 {
                return Err(ShellError::Unsupported(
                    "complex sector matrices cannot be fitted".into(),
                ));
            }
            if x.re.abs() <= COEFFICIENT_TOLERANCE {
                continue;
            }
            let (a, b) = pair(row);
            let (p, q) = pair(col);
            h.add_two_body(a, b, q, p, x.re);
        }
    }
    Ok(h)
}
