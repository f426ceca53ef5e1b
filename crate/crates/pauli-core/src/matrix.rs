//! Dense reference matrices: assembly, Pauli expansion and hermitian spectra.

use std::collections::HashSet;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{PauliError, Result};
use crate::string::PauliString;
use crate::sum::PauliSum;

/// Complex dense matrix in the computational basis (row = output state).
pub type DenseMatrix = DMatrix<Complex64>;

/// Largest qubit count accepted by dense conversions.
pub const MAX_DENSE_QUBITS: usize = 12;

/// Default hermiticity tolerance for [`eig_sym`].
pub const EIG_HERMITIAN_TOLERANCE: f64 = 1e-8;

fn check_dense(qubits: usize) -> Result<()> {
    if qubits > MAX_DENSE_QUBITS {
        Err(PauliError::TooManyQubits {
            qubits,
            max: MAX_DENSE_QUBITS,
        })
    } else {
        Ok(())
    }
}

/// Dense matrix `Σ x_i P_i` of a Pauli sum on at most 12 qubits.
pub fn to_matrix(s: &PauliSum) -> Result<DenseMatrix> {
    let n = s.qubit_count();
    check_dense(n)?;
    let dim = 1usize << n;
    let mut m = DenseMatrix::zeros(dim, dim);
    for (p, c) in s.terms() {
        for col in 0..dim as u64 {
            let (phase, row) = p.apply_to_basis(col);
            m[(row as usize, col as usize)] += phase * c;
        }
    }
    Ok(m)
}

/// Unique expansion of a `2^n × 2^n` matrix in the Pauli basis.
///
/// The coefficient of `P` is `Tr(P M) / 2^n`. Cost is `8^n`, intended for
/// the small encoded sectors (n ≤ 8).
pub fn from_matrix(m: &DenseMatrix) -> Result<PauliSum> {
    let (rows, cols) = m.shape();
    if rows != cols || !rows.is_power_of_two() {
        return Err(PauliError::BadDimension { rows, cols });
    }
    let n = rows.trailing_zeros() as usize;
    check_dense(n)?;
    let dim = rows as u64;
    let norm = 1.0 / rows as f64;
    let mut out = PauliSum::zero(n);
    for x in 0..dim {
        for z in 0..dim {
            let p = PauliString::from_masks(n, x, z);
            let mut tr = Complex64::default();
            for c in 0..dim {
                let (phase, r) = p.apply_to_basis(c);
                tr += phase * m[(c as usize, r as usize)];
            }
            if tr.norm() * norm >= crate::sum::SIMPLIFY_TOLERANCE {
                out.add_term(p, tr * norm);
            }
        }
    }
    Ok(out)
}

/// Largest entrywise deviation `|M − M†|`.
pub fn hermitian_deviation(m: &DenseMatrix) -> f64 {
    let n = m.nrows().min(m.ncols());
    let mut d: f64 = 0.0;
    for i in 0..n {
        for j in 0..=i {
            d = d.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    d
}

fn check_hermitian(m: &DenseMatrix) -> Result<()> {
    let (rows, cols) = m.shape();
    if rows != cols {
        return Err(PauliError::BadDimension { rows, cols });
    }
    let scale = m.iter().fold(1.0f64, |a, c| a.max(c.norm()));
    let deviation = hermitian_deviation(m);
    if deviation > EIG_HERMITIAN_TOLERANCE * scale {
        return Err(PauliError::NotHermitian { deviation });
    }
    Ok(())
}

/// Hermitian eigendecomposition with eigenvalues ascending.
///
/// Column `k` of the returned matrix is the normalized eigenvector for
/// eigenvalue `k`.
pub fn eigh(m: &DenseMatrix) -> Result<(Vec<f64>, DenseMatrix)> {
    check_hermitian(m)?;
    let sym = (m + m.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let columns: Vec<DVector<Complex64>> = order
        .iter()
        .map(|&k| eig.eigenvectors.column(k).into_owned())
        .collect();
    Ok((values, DenseMatrix::from_columns(&columns)))
}

/// Ascending eigenvalues of a hermitian matrix.
pub fn eig_sym(m: &DenseMatrix) -> Result<Vec<f64>> {
    eigh(m).map(|(values, _)| values)
}

/// Matrix elements `⟨b_i| s |b_j⟩` over the listed computational states.
///
/// States are integers whose bit `q` is the value of qubit `q`.
pub fn restrict_to_subspace(s: &PauliSum, states: &[u64]) -> Result<DenseMatrix> {
    let n = s.qubit_count();
    let mut seen = HashSet::new();
    for &b in states {
        if n < 64 && b >> n != 0 {
            return Err(PauliError::StateOutOfRange {
                state: b,
                qubits: n,
            });
        }
        if !seen.insert(b) {
            return Err(PauliError::DuplicateState(b));
        }
    }
    let index: std::collections::HashMap<u64, usize> =
        states.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let k = states.len();
    let mut m = DenseMatrix::zeros(k, k);
    for (j, &b) in states.iter().enumerate() {
        for (p, c) in s.terms() {
            let (phase, out) = p.apply_to_basis(b);
            if let Some(&i) = index.get(&out) {
                m[(i, j)] += phase * c;
            }
        }
    }
    Ok(m)
}

/// Parse a bitstring whose leftmost character is the highest qubit.
pub fn parse_bitstring(s: &str) -> Result<(usize, u64)> {
    let s = s.trim();
    if s.is_empty() || s.len() > 64 {
        return Err(PauliError::InvalidBitstring(s.to_string()));
    }
    let mut v = 0u64;
    for c in s.chars() {
        v <<= 1;
        match c {
            '0' => {}
            '1' => v |= 1,
            _ => return Err(PauliError::InvalidBitstring(s.to_string())),
        }
    }
    Ok((s.len(), v))
}

/// Render `value` as a bitstring of `width` characters, highest bit first.
pub fn format_bitstring(value: u64, width: usize) -> String {
    (0..width)
        .rev()
        .map(|q| if value >> q & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Largest entrywise distance between two matrices of equal shape.
pub fn max_abs_diff(a: &DenseMatrix, b: &DenseMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "matrix shapes differ");
    a.iter()
        .zip(b.iter())
        .fold(0.0, |m, (x, y)| m.max((x - y).norm()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn sum(terms: &[(&str, f64)]) -> PauliSum {
        let n = terms[0].0.len();
        PauliSum::from_terms(n, terms.iter().map(|(w, c)| (w.parse().unwrap(), *c))).unwrap()
    }

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn z_matrix_is_diag() {
        let m = to_matrix(&sum(&[("Z", 1.0)])).unwrap();
        assert_eq!(
            m,
            DenseMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)])
        );
    }

    #[test]
    fn two_plus_sector_matrix() {
        let h = sum(&[("I", -150.396728), ("X", 0.279234), ("Z", 0.638015)]);
        let m = to_matrix(&h).unwrap();
        assert_abs_diff_eq!(m[(0, 0)].re, -149.758713, epsilon = 1e-9);
        assert_abs_diff_eq!(m[(1, 1)].re, -151.034743, epsilon = 1e-9);
        assert_abs_diff_eq!(m[(0, 1)].re, 0.279234, epsilon = 1e-12);
        assert_abs_diff_eq!(m[(1, 0)].re, 0.279234, epsilon = 1e-12);
    }

    #[test]
    fn sigma_plus_is_zero_one_ketbra() {
        let m = to_matrix(&PauliSum::sigma_plus(1, 0)).unwrap();
        let expect = DenseMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(0.0), c(0.0)]);
        assert_eq!(m, expect);
    }

    #[test]
    fn too_many_qubits_rejected() {
        let s = PauliSum::identity(13, 1.0);
        assert!(matches!(
            to_matrix(&s),
            Err(PauliError::TooManyQubits { .. })
        ));
    }

    #[test]
    fn diag_eigenvalues() {
        let m = DenseMatrix::from_diagonal(&DVector::from_vec(vec![c(3.0), c(1.0), c(2.0)]));
        assert_eq!(eig_sym(&m).unwrap(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn non_hermitian_rejected() {
        let m = DenseMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(0.0), c(0.0)]);
        assert!(matches!(eig_sym(&m), Err(PauliError::NotHermitian { .. })));
    }

    #[test]
    fn three_plus_lithium_block() {
        let h = sum(&[("I", -2.5045), ("Z", -2.5045)]);
        let e = eig_sym(&to_matrix(&h).unwrap()).unwrap();
        assert_abs_diff_eq!(e[0], -5.009, epsilon = 1e-12);
        assert_abs_diff_eq!(e[1], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn restriction_of_z() {
        let m = restrict_to_subspace(&sum(&[("Z", 1.0)]), &[0, 1]).unwrap();
        assert_eq!(m, to_matrix(&sum(&[("Z", 1.0)])).unwrap());
    }

    #[test]
    fn duplicate_states_rejected() {
        let r = restrict_to_subspace(&sum(&[("Z", 1.0)]), &[1, 1]);
        assert_eq!(r, Err(PauliError::DuplicateState(1)));
    }

    #[test]
    fn bitstring_round_trip() {
        assert_eq!(parse_bitstring("110000").unwrap(), (6, 0b110000));
        assert_eq!(format_bitstring(0b101000, 6), "101000");
        assert!(parse_bitstring("10a").is_err());
    }
}
