//! Single Pauli strings in symplectic (x, z) bit form.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{PauliError, Result};

/// Largest number of qubits a [`PauliString`] can address.
pub const MAX_STRING_QUBITS: usize = 64;

/// One-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

impl TryFrom<char> for Pauli {
    type Error = PauliError;

    fn try_from(c: char) -> Result<Self> {
        match c {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            other => Err(PauliError::InvalidLetter(other)),
        }
    }
}

/// Tensor product of one-qubit Paulis on a fixed number of qubits.
///
/// Bit `q` of `x` / `z` describes qubit `q`; qubit 0 is the least significant
/// qubit and the rightmost character of the text form. A `Y` is stored as
/// `x = z = 1` and means the Hermitian matrix Y, not `XZ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    qubits: usize,
    x: u64,
    z: u64,
}

fn phase_from_exponent(e: u32) -> Complex64 {
    match e % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

impl PauliString {
    /// Identity on `qubits` qubits.
    pub fn identity(qubits: usize) -> Self {
        assert!(
            qubits <= MAX_STRING_QUBITS,
            "too many qubits for a Pauli string"
        );
        Self { qubits, x: 0, z: 0 }
    }

    /// Build from raw symplectic masks, discarding bits above `qubits`.
    pub fn from_masks(qubits: usize, x: u64, z: u64) -> Self {
        assert!(
            qubits <= MAX_STRING_QUBITS,
            "too many qubits for a Pauli string"
        );
        let mask = Self::mask(qubits);
        Self {
            qubits,
            x: x & mask,
            z: z & mask,
        }
    }

    /// A single letter on qubit `q`, identity elsewhere.
    pub fn single(qubits: usize, q: usize, p: Pauli) -> Self {
        Self::identity(qubits).with(q, p)
    }

    /// Build from `(qubit, letter)` pairs; later pairs overwrite earlier ones.
    pub fn from_letters(qubits: usize, letters: &[(usize, Pauli)]) -> Self {
        letters
            .iter()
            .fold(Self::identity(qubits), |s, &(q, p)| s.with(q, p))
    }

    fn mask(qubits: usize) -> u64 {
        if qubits == 64 {
            u64::MAX
        } else {
            (1u64 << qubits) - 1
        }
    }

    /// Copy with qubit `q` set to `p`.
    pub fn with(mut self, q: usize, p: Pauli) -> Self {
        assert!(
            q < self.qubits,
            "qubit {q} out of range for {} qubits",
            self.qubits
        );
        let (xb, zb) = p.bits();
        let bit = 1u64 << q;
        self.x = if xb { self.x | bit } else { self.x & !bit };
        self.z = if zb { self.z | bit } else { self.z & !bit };
        self
    }

    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    /// Letter acting on qubit `q`.
    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x >> q & 1 == 1, self.z >> q & 1 == 1)
    }

    /// Letters ordered by qubit index (qubit 0 first).
    pub fn letters(&self) -> Vec<Pauli> {
        (0..self.qubits).map(|q| self.get(q)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    /// Number of `Y` letters.
    pub fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    /// Qubits carrying a non-identity letter, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.qubits)
            .filter(|&q| self.get(q) != Pauli::I)
            .collect()
    }

    /// Whether the two strings commute.
    pub fn commutes_with(&self, other: &Self) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()) % 2 == 0
    }

    /// Action on a computational basis state: `P|b> = phase |b'>`.
    pub fn apply_to_basis(&self, b: u64) -> (Complex64, u64) {
        let e = self.y_count() + 2 * (b & self.z).count_ones();
        (phase_from_exponent(e), b ^ self.x)
    }

    /// Eigenvalue sign (+1 or -1) of the Z-type string with the same support
    /// on basis state `b`, used after rotating into the measurement basis.
    pub fn parity_sign(&self, b: u64) -> f64 {
        if (b & (self.x | self.z)).count_ones() % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Product `self * other = phase * product`, with `phase` in {±1, ±i}.
    pub fn multiply(&self, other: &Self) -> Result<(Complex64, PauliString)> {
        if self.qubits != other.qubits {
            return Err(PauliError::QubitMismatch {
                left: self.qubits,
                right: other.qubits,
            });
        }
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        let product = PauliString {
            qubits: self.qubits,
            x,
            z,
        };
        let e = self.y_count()
            + other.y_count()
            + 3 * product.y_count()
            + 2 * (self.z & other.x).count_ones();
        Ok((phase_from_exponent(e), product))
    }
}

/// Free-function form of [`PauliString::multiply`].
pub fn multiply(a: &PauliString, b: &PauliString) -> Result<(Complex64, PauliString)> {
    a.multiply(b)
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in (0..self.qubits).rev() {
            write!(f, "{}", self.get(q).as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = PauliError;

    /// Parse a word whose leftmost character is the highest qubit.
    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.trim().chars().collect();
        if chars.is_empty() {
            return Err(PauliError::Empty);
        }
        if chars.len() > MAX_STRING_QUBITS {
            return Err(PauliError::TooManyQubits {
                qubits: chars.len(),
                max: MAX_STRING_QUBITS,
            });
        }
        let n = chars.len();
        chars
            .iter()
            .enumerate()
            .try_fold(Self::identity(n), |s, (pos, &c)| {
                Ok(s.with(n - 1 - pos, Pauli::try_from(c)?))
            })
    }
}
