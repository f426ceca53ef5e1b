//! Bijections from sector basis states to qubit codewords.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use pauli_core::{format_bitstring, parse_bitstring};
use shell_basis::{ModelSpace, SectorBasis};

use crate::error::{EncodingError, Result};
use crate::gray::{gray_qubits, gray_sequence, is_unit_distance_path, MAX_GRAY_QUBITS};

/// Encoding scheme of a map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// One qubit per orbital; the codeword is the occupation bitstring.
    OneHot,
    /// `ceil(log2 Nb)` qubits along a unit-Hamming-distance path.
    Gray,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::OneHot => "one-hot",
            Scheme::Gray => "gray",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sector basis together with one codeword per basis state.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodingMap {
    pub basis: SectorBasis,
    pub scheme: Scheme,
    qubits: usize,
    codewords: Vec<u64>,
}

impl EncodingMap {
    pub fn qubit_count(&self) -> usize {
        self.qubits
    }

    pub fn codewords(&self) -> &[u64] {
        &self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    /// Codeword of basis state `i`.
    pub fn codeword(&self, i: usize) -> u64 {
        self.codewords[i]
    }

    /// Basis index whose codeword is `code`.
    pub fn index_of_code(&self, code: u64) -> Option<usize> {
        self.codewords.iter().position(|&c| c == code)
    }

    /// Codeword `i` as a bitstring, highest qubit first.
    pub fn code_bitstring(&self, i: usize) -> String {
        format_bitstring(self.codewords[i], self.qubits)
    }
}

/// Assign codewords to `basis`.
///
/// With `explicit_codes == None` the one-hot scheme uses the occupation
/// bitstrings and the Gray scheme takes the first `Nb` entries of the
/// reflected sequence. Explicit Gray codes must be distinct, fit in
/// `ceil(log2 Nb)` qubits and form a unit-distance path. Explicit one-hot
/// codes must equal the occupation bitstrings.
pub fn build_encoding_map(
    basis: SectorBasis,
    scheme: Scheme,
    explicit_codes: Option<&[u64]>,
) -> Result<EncodingMap> {
    let nb = basis.len();
    let (qubits, default_codes) = match scheme {
        Scheme::OneHot => (basis.model_space.len(), basis.states().to_vec()),
        Scheme::Gray => {
            let q = gray_qubits(nb);
            if q > MAX_GRAY_QUBITS {
                return Err(EncodingError::InvalidCodes(format!(
                    "{nb} states need {q} qubits, above the maximum {MAX_GRAY_QUBITS}"
                )));
            }
            (q, gray_sequence(q)[..nb].to_vec())
        }
    };
    let codewords = match explicit_codes {
        None => default_codes,
        Some(codes) => {
            if codes.len() != nb {
                return Err(EncodingError::InvalidCodes(format!(
                    "{} codewords for {nb} basis states",
                    codes.len()
                )));
            }
            if let Some(&c) = codes.iter().find(|&&c| qubits < 64 && c >> qubits != 0) {
                return Err(EncodingError::InvalidCodes(format!(
                    "codeword {c:b} does not fit in {qubits} qubits"
                )));
            }
            let mut seen = HashSet::new();
            if let Some(&c) = codes.iter().find(|&&c| !seen.insert(c)) {
                return Err(EncodingError::InvalidCodes(format!(
                    "codeword {} is repeated",
                    format_bitstring(c, qubits)
                )));
            }
            match scheme {
                Scheme::Gray if !is_unit_distance_path(codes) => {
                    return Err(EncodingError::InvalidCodes(
                        "consecutive codewords must differ in exactly one bit".into(),
                    ));
                }
                Scheme::OneHot if codes != default_codes.as_slice() => {
                    return Err(EncodingError::InvalidCodes(
                        "one-hot codewords must equal the occupation bitstrings".into(),
                    ));
                }
                _ => {}
            }
            codes.to_vec()
        }
    };
    Ok(EncodingMap {
        basis,
        scheme,
        qubits,
        codewords,
    })
}

/// One `<occupation> <codeword>` line of a mapping file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MappingEntry {
    pub occupation: u64,
    pub codeword: u64,
    pub code_width: usize,
}

/// Parse a mapping file; every line must use the same bitstring widths.
pub fn parse_mapping(text: &str, orbitals: usize) -> Result<Vec<MappingEntry>> {
    let mut entries = Vec::new();
    let mut width = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| EncodingError::Parse {
            line: idx + 1,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [occ, code] = fields[..] else {
            return Err(err(format!("expected 2 fields, found {}", fields.len())));
        };
        let (ow, occupation) = parse_bitstring(occ).map_err(|e| err(e.to_string()))?;
        if ow != orbitals {
            return Err(err(format!(
                "occupation {occ:?} has {ow} digits, expected {orbitals}"
            )));
        }
        let (cw, codeword) = parse_bitstring(code).map_err(|e| err(e.to_string()))?;
        if *width.get_or_insert(cw) != cw {
            return Err(err(format!(
                "codeword {code:?} width differs from earlier lines"
            )));
        }
        entries.push(MappingEntry {
            occupation,
            codeword,
            code_width: cw,
        });
    }
    if entries.is_empty() {
        return Err(EncodingError::Parse {
            line: 0,
            message: "mapping file has no entries".into(),
        });
    }
    Ok(entries)
}

/// Build a Gray map from mapping-file text. Basis order follows the file;
/// particle number and 2M are taken from the first entry.
pub fn encoding_map_from_text(space: &ModelSpace, text: &str) -> Result<EncodingMap> {
    let entries = parse_mapping(text, space.len())?;
    let first = entries[0].occupation;
    let states: Vec<u64> = entries.iter().map(|e| e.occupation).collect();
    let codes: Vec<u64> = entries.iter().map(|e| e.codeword).collect();
    let basis = SectorBasis::from_states(
        space.clone(),
        first.count_ones() as usize,
        space.twice_m(first),
        states,
    )?;
    let expected = gray_qubits(basis.len());
    if entries[0].code_width != expected {
        return Err(EncodingError::InvalidCodes(format!(
            "codewords have {} digits, {} states need {expected}",
            entries[0].code_width,
            basis.len()
        )));
    }
    build_encoding_map(basis, Scheme::Gray, Some(&codes))
}

/// Read a mapping file for `space`.
pub fn load_encoding_map(space: &ModelSpace, path: impl AsRef<Path>) -> Result<EncodingMap> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| EncodingError::Io {
        path: path.display().to_string(),
        source,
    })?;
    encoding_map_from_text(space, &text)
}

/// Render a map in the mapping-file format.
pub fn render_mapping(map: &EncodingMap) -> String {
    let mut out = format!(
        "# {} particles, 2M = {}, {} scheme\n# occupation codeword\n",
        map.basis.particle_count, map.basis.twice_m, map.scheme
    );
    for i in 0..map.len() {
        out.push_str(&format!(
            "{} {}\n",
            map.basis.bitstring(i),
            map.code_bitstring(i)
        ));
    }
    out
}
