//! Effective interactions: single-particle energies and J-scheme TBMEs.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use crate::error::{Result, ShellError};
use crate::model_space::{ChargedShell, Shell};

/// Deviation above which a non-symmetric TBME pair triggers a warning.
pub const TBME_SYMMETRY_TOLERANCE: f64 = 1e-6;

/// Key of a coupled matrix element ⟨ab; JT|V|cd; JT⟩.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TbmeKey {
    pub a: Shell,
    pub b: Shell,
    pub c: Shell,
    pub d: Shell,
    pub j: u32,
    pub t: u32,
}

impl TbmeKey {
    fn flipped(&self) -> Self {
        Self {
            a: self.c,
            b: self.d,
            c: self.a,
            d: self.b,
            ..*self
        }
    }
}

/// Single-particle energies, two-body matrix elements and a constant offset.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct InteractionData {
    pub core_energy: f64,
    pub spe: BTreeMap<ChargedShell, f64>,
    tbme: BTreeMap<TbmeKey, f64>,
    /// Keys whose transposed partner disagreed beyond tolerance and were averaged.
    pub symmetry_warnings: Vec<TbmeKey>,
}

fn exchange_phase(a: Shell, b: Shell, j: u32, t: u32) -> f64 {
    if ((a.twice_j + b.twice_j) / 2 + j + t) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

impl InteractionData {
    pub fn new(core_energy: f64) -> Self {
        Self {
            core_energy,
            ..Self::default()
        }
    }

    pub fn set_spe(&mut self, shell: ChargedShell, value: f64) {
        self.spe.insert(shell, value);
    }

    /// Insert ⟨ab; JT|V|cd; JT⟩ as given; call [`Self::symmetrize`] afterwards.
    pub fn set_tbme(&mut self, key: TbmeKey, value: f64) {
        self.tbme.insert(key, value);
    }

    /// Stored elements in key order.
    pub fn tbme_entries(&self) -> impl Iterator<Item = (&TbmeKey, &f64)> {
        self.tbme.iter()
    }

    pub fn tbme_len(&self) -> usize {
        self.tbme.len()
    }

    /// Enforce ⟨ab|V|cd⟩ = ⟨cd|V|ab⟩, filling missing partners and averaging
    /// (with a warning) pairs that disagree by more than the tolerance.
    pub fn symmetrize(&mut self) {
        let keys: Vec<TbmeKey> = self.tbme.keys().copied().collect();
        for key in keys {
            let flipped = key.flipped();
            let v = self.tbme[&key];
            match self.tbme.get(&flipped).copied() {
                None => {
                    self.tbme.insert(flipped, v);
                }
                Some(w) if (v - w).abs() > TBME_SYMMETRY_TOLERANCE => {
                    if key < flipped {
                        log::warn!("TBME {key:?} = {v} but transposed element = {w}; averaging");
                        self.symmetry_warnings.push(key);
                    }
                    let avg = 0.5 * (v + w);
                    self.tbme.insert(key, avg);
                    self.tbme.insert(flipped, avg);
                }
                Some(_) => {}
            }
        }
    }

    /// ⟨ab; JT|V|cd; JT⟩ using stored elements and the exchange symmetries
    /// |ba; JT⟩ = (−1)^{ja+jb+J+T} |ab; JT⟩ and bra-ket transposition.
    pub fn tbme(&self, a: Shell, b: Shell, c: Shell, d: Shell, j: u32, t: u32) -> f64 {
        let bra = [(a, b, 1.0), (b, a, exchange_phase(a, b, j, t))];
        let ket = [(c, d, 1.0), (d, c, exchange_phase(c, d, j, t))];
        for &(p, q, s1) in &bra {
            for &(r, u, s2) in &ket {
                let key = TbmeKey {
                    a: p,
                    b: q,
                    c: r,
                    d: u,
                    j,
                    t,
                };
                if let Some(v) = self.tbme.get(&key) {
                    return s1 * s2 * v;
                }
                if let Some(v) = self.tbme.get(&key.flipped()) {
                    return s1 * s2 * v;
                }
            }
        }
        0.0
    }

    /// Parse the interaction text format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut data = Self::default();
        let mut labels: HashMap<String, ChargedShell> = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| ShellError::Parse {
                line: line_no,
                message,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            let int = |s: &str| -> Result<i64> {
                s.parse::<i64>()
                    .map_err(|_| err(format!("invalid integer {s:?}")))
            };
            let float = |s: &str| -> Result<f64> {
                s.parse::<f64>()
                    .map_err(|_| err(format!("invalid number {s:?}")))
            };
            let shell = |n: &str, l: &str, j: &str, tz: &str| -> Result<ChargedShell> {
                let (n, l, j, tz) = (int(n)?, int(l)?, int(j)?, int(tz)?);
                if n < 0 || l < 0 || j <= 0 || j % 2 == 0 || tz.abs() != 1 {
                    return Err(err("invalid shell quantum numbers".into()));
                }
                Ok(ChargedShell {
                    shell: Shell {
                        n: n as u32,
                        l: l as u32,
                        twice_j: j as u32,
                    },
                    twice_tz: tz as i32,
                })
            };
            match (fields[0], fields.len()) {
                ("CORE", 2) => data.core_energy = float(fields[1])?,
                ("ORBIT", 6) => {
                    let cs = shell(fields[2], fields[3], fields[4], fields[5])?;
                    labels.insert(fields[1].to_string(), cs);
                }
                ("SPE", 6) => {
                    let cs = shell(fields[1], fields[2], fields[3], fields[4])?;
                    data.spe.insert(cs, float(fields[5])?);
                }
                ("TBME", 8) => {
                    let look = |s: &str| -> Result<Shell> {
                        labels
                            .get(s)
                            .map(|cs| cs.shell)
                            .ok_or_else(|| err(format!("unknown orbital label {s:?}")))
                    };
                    let (j, t) = (int(fields[5])?, int(fields[6])?);
                    if j < 0 || !(0..=1).contains(&t) {
                        return Err(err("J must be >= 0 and T must be 0 or 1".into()));
                    }
                    let key = TbmeKey {
                        a: look(fields[1])?,
                        b: look(fields[2])?,
                        c: look(fields[3])?,
                        d: look(fields[4])?,
                        j: j as u32,
                        t: t as u32,
                    };
                    data.tbme.insert(key, float(fields[7])?);
                }
                (kw @ ("CORE" | "ORBIT" | "SPE" | "TBME"), n) => {
                    return Err(err(format!("{kw} line has {n} fields")));
                }
                (kw, _) => return Err(err(format!("unknown keyword {kw:?}"))),
            }
        }
        data.symmetrize();
        Ok(data)
    }
}

/// Read and symmetrize an interaction file.
pub fn load_interaction(path: impl AsRef<Path>) -> Result<InteractionData> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ShellError::Io {
        path: path.display().to_string(),
        source,
    })?;
    InteractionData::parse(&text)
}
