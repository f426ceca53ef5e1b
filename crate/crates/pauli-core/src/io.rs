//! Text format for Pauli Hamiltonians.
//!
//! One term per line, `<coefficient> <word>`, with `#` starting a comment.
//! The word's leftmost character acts on the highest qubit.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{PauliError, Result};
use crate::string::PauliString;
use crate::sum::PauliSum;

/// Parse the Pauli file format. Repeated words accumulate.
pub fn parse_pauli_sum(text: &str) -> Result<PauliSum> {
    let mut qubits = None;
    let mut terms = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |message: String| PauliError::Parse {
            line: line_no,
            message,
        };
        let mut fields = line.split_whitespace();
        let (Some(coef), Some(word), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(parse_err(format!(
                "expected `<coefficient> <word>`, got {line:?}"
            )));
        };
        let coef: f64 = coef
            .parse()
            .map_err(|_| parse_err(format!("invalid coefficient {coef:?}")))?;
        let p: PauliString = word.parse().map_err(|e| parse_err(format!("{e}")))?;
        match qubits {
            None => qubits = Some(p.qubit_count()),
            Some(n) if n != p.qubit_count() => {
                return Err(parse_err(format!(
                    "word {word} has {} qubits, expected {n}",
                    p.qubit_count()
                )))
            }
            Some(_) => {}
        }
        terms.push((p, coef));
    }
    let n = qubits.ok_or(PauliError::Empty)?;
    let mut sum = PauliSum::zero(n);
    for (p, c) in terms {
        sum.add_term(p, c);
    }
    Ok(sum)
}

/// Read a Pauli file from disk.
pub fn read_pauli_file(path: impl AsRef<Path>) -> std::io::Result<PauliSum> {
    let text = std::fs::read_to_string(path)?;
    parse_pauli_sum(&text).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))
}

/// Render a real-coefficient sum in the Pauli file format.
///
/// Coefficients are written with the shortest representation that parses
/// back to the same `f64`, so `parse(render(s)) == s` holds exactly.
pub fn render_pauli_sum(s: &PauliSum, header: Option<&str>) -> Result<String> {
    let mut out = String::new();
    if let Some(h) = header {
        for line in h.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    for (p, c) in s.terms() {
        if c.im.abs() > crate::sum::HERMITIAN_TOLERANCE {
            return Err(PauliError::ComplexCoefficient {
                word: p.to_string(),
                imag: c.im,
            });
        }
        let _ = writeln!(out, "{} {}", c.re, p);
    }
    Ok(out)
}

/// Round every coefficient to `decimals` places, mirroring printed tables.
pub fn round_coefficients(s: &PauliSum, decimals: i32) -> PauliSum {
    let f = 10f64.powi(decimals);
    let terms = s.terms().map(|(p, c)| {
        (
            *p,
            Complex64::new((c.re * f).round() / f, (c.im * f).round() / f),
        )
    });
    PauliSum::from_terms(s.qubit_count(), terms).expect("qubit counts are uniform")
}
