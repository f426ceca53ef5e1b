//! Weighted sums of Pauli strings.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{PauliError, Result};
use crate::string::{Pauli, PauliString};

/// Terms with magnitude below this are dropped by [`PauliSum::simplify`].
pub const SIMPLIFY_TOLERANCE: f64 = 1e-12;

/// Tolerance on imaginary parts for [`PauliSum::is_hermitian`].
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

/// Linear combination `Σ x_i P_i` of Pauli strings on a fixed qubit count.
///
/// Terms are kept in a sorted map so iteration order and rendering are
/// deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSum {
    qubits: usize,
    terms: BTreeMap<PauliString, Complex64>,
}

impl PauliSum {
    /// The zero operator.
    pub fn zero(qubits: usize) -> Self {
        Self {
            qubits,
            terms: BTreeMap::new(),
        }
    }

    /// `c · I`.
    pub fn identity(qubits: usize, c: impl Into<Complex64>) -> Self {
        Self::from_term(PauliString::identity(qubits), c)
    }

    /// A single term.
    pub fn from_term(p: PauliString, c: impl Into<Complex64>) -> Self {
        let mut s = Self::zero(p.qubit_count());
        s.add_term(p, c);
        s
    }

    /// Build from `(string, coefficient)` pairs, accumulating repeats.
    pub fn from_terms<I, C>(qubits: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PauliString, C)>,
        C: Into<Complex64>,
    {
        let mut s = Self::zero(qubits);
        for (p, c) in terms {
            if p.qubit_count() != qubits {
                return Err(PauliError::QubitMismatch {
                    left: qubits,
                    right: p.qubit_count(),
                });
            }
            s.add_term(p, c);
        }
        Ok(s.simplified())
    }

    /// σ⁺ = |0⟩⟨1| = (X + iY)/2 on qubit `q`.
    pub fn sigma_plus(qubits: usize, q: usize) -> Self {
        Self::two_term(
            qubits,
            q,
            (Pauli::X, 0.5.into()),
            (Pauli::Y, Complex64::new(0.0, 0.5)),
        )
    }

    /// σ⁻ = |1⟩⟨0| = (X − iY)/2 on qubit `q`.
    pub fn sigma_minus(qubits: usize, q: usize) -> Self {
        Self::two_term(
            qubits,
            q,
            (Pauli::X, 0.5.into()),
            (Pauli::Y, Complex64::new(0.0, -0.5)),
        )
    }

    /// P⁽⁰⁾ = |0⟩⟨0| = (I + Z)/2 on qubit `q`.
    pub fn projector_zero(qubits: usize, q: usize) -> Self {
        Self::two_term(qubits, q, (Pauli::I, 0.5.into()), (Pauli::Z, 0.5.into()))
    }

    /// P⁽¹⁾ = |1⟩⟨1| = (I − Z)/2 on qubit `q`.
    pub fn projector_one(qubits: usize, q: usize) -> Self {
        Self::two_term(qubits, q, (Pauli::I, 0.5.into()), (Pauli::Z, (-0.5).into()))
    }

    /// Single-qubit transition `|to⟩⟨from|` on qubit `q`.
    pub fn transition(qubits: usize, q: usize, to: bool, from: bool) -> Self {
        match (to, from) {
            (false, false) => Self::projector_zero(qubits, q),
            (true, true) => Self::projector_one(qubits, q),
            (false, true) => Self::sigma_plus(qubits, q),
            (true, false) => Self::sigma_minus(qubits, q),
        }
    }

    fn two_term(qubits: usize, q: usize, a: (Pauli, Complex64), b: (Pauli, Complex64)) -> Self {
        let mut s = Self::zero(qubits);
        s.add_term(PauliString::single(qubits, q, a.0), a.1);
        s.add_term(PauliString::single(qubits, q, b.0), b.1);
        s
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in deterministic order.
    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    /// Coefficient of `p` (zero when absent).
    pub fn coefficient(&self, p: &PauliString) -> Complex64 {
        self.terms.get(p).copied().unwrap_or_default()
    }

    /// Accumulate `c · p` without simplifying.
    pub fn add_term(&mut self, p: PauliString, c: impl Into<Complex64>) {
        assert_eq!(
            p.qubit_count(),
            self.qubits,
            "term qubit count differs from sum"
        );
        *self.terms.entry(p).or_default() += c.into();
    }

    /// Drop terms with magnitude below `tol`.
    pub fn simplify(&mut self, tol: f64) {
        self.terms.retain(|_, c| c.norm() >= tol);
    }

    /// Copy with negligible terms removed at the default tolerance.
    pub fn simplified(mut self) -> Self {
        self.simplify(SIMPLIFY_TOLERANCE);
        self
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: impl Into<Complex64>) -> Self {
        let c = c.into();
        Self {
            qubits: self.qubits,
            terms: self.terms.iter().map(|(p, v)| (*p, v * c)).collect(),
        }
        .simplified()
    }

    /// Hermitian conjugate.
    pub fn adjoint(&self) -> Self {
        Self {
            qubits: self.qubits,
            terms: self.terms.iter().map(|(p, v)| (*p, v.conj())).collect(),
        }
    }

    /// Whether every coefficient is real within `tol`.
    pub fn is_hermitian_within(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.im.abs() <= tol)
    }

    /// Whether every coefficient is real within [`HERMITIAN_TOLERANCE`].
    pub fn is_hermitian(&self) -> bool {
        self.is_hermitian_within(HERMITIAN_TOLERANCE)
    }

    /// Largest imaginary part among the coefficients.
    pub fn max_imaginary(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.im.abs()))
    }

    /// Sum of coefficient magnitudes, a bound on the spectral radius.
    pub fn one_norm(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).sum()
    }

    /// Coefficient of the identity string.
    pub fn identity_coefficient(&self) -> Complex64 {
        self.coefficient(&PauliString::identity(self.qubits))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.qubits == other.qubits {
            Ok(())
        } else {
            Err(PauliError::QubitMismatch {
                left: self.qubits,
                right: other.qubits,
            })
        }
    }

    /// `self + other`, simplified.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(*p, *c);
        }
        Ok(out.simplified())
    }

    /// `self · other`, simplified.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.qubits);
        for (pa, ca) in &self.terms {
            for (pb, cb) in &other.terms {
                let (phase, prod) = pa.multiply(pb)?;
                out.add_term(prod, phase * ca * cb);
            }
        }
        Ok(out.simplified())
    }

    /// Commutator `[self, other] = self·other − other·self`, simplified.
    ///
    /// Commuting string pairs cancel exactly and are skipped; each
    /// anticommuting pair contributes twice its product.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.qubits);
        for (pa, ca) in &self.terms {
            for (pb, cb) in &other.terms {
                if pa.commutes_with(pb) {
                    continue;
                }
                let (phase, prod) = pa.multiply(pb)?;
                out.add_term(prod, 2.0 * phase * ca * cb);
            }
        }
        Ok(out.simplified())
    }

    /// Tensor product `self ⊗ low`, where `low` occupies the low qubits.
    pub fn tensor(&self, low: &Self) -> Self {
        let n = self.qubits + low.qubits;
        let mut out = Self::zero(n);
        for (ph, ch) in &self.terms {
            for (pl, cl) in &low.terms {
                let x = ph.x_mask() << low.qubits | pl.x_mask();
                let z = ph.z_mask() << low.qubits | pl.z_mask();
                out.add_term(PauliString::from_masks(n, x, z), ch * cl);
            }
        }
        out.simplified()
    }

    /// Maximum coefficient-wise distance to `other`.
    pub fn max_distance(&self, other: &Self) -> f64 {
        let mut d: f64 = 0.0;
        for (p, c) in &self.terms {
            d = d.max((c - other.coefficient(p)).norm());
        }
        for (p, c) in &other.terms {
            if !self.terms.contains_key(p) {
                d = d.max(c.norm());
            }
        }
        d
    }
}

/// Free-function form of [`PauliSum::commutator`].
pub fn commutator(a: &PauliSum, b: &PauliSum) -> Result<PauliSum> {
    a.commutator(b)
}

impl Add for &PauliSum {
    type Output = PauliSum;

    fn add(self, rhs: &PauliSum) -> PauliSum {
        self.try_add(rhs)
            .expect("qubit count mismatch in PauliSum addition")
    }
}

impl Sub for &PauliSum {
    type Output = PauliSum;

    fn sub(self, rhs: &PauliSum) -> PauliSum {
        self + &(-rhs)
    }
}

impl Neg for &PauliSum {
    type Output = PauliSum;

    fn neg(self) -> PauliSum {
        self.scale(-1.0)
    }
}

impl Mul for &PauliSum {
    type Output = PauliSum;

    fn mul(self, rhs: &PauliSum) -> PauliSum {
        self.try_mul(rhs)
            .expect("qubit count mismatch in PauliSum product")
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.im == 0.0 {
                write!(f, "{}·{}", c.re, p)?;
            } else {
                write!(f, "({}{:+}i)·{}", c.re, c.im, p)?;
            }
        }
        Ok(())
    }
}
