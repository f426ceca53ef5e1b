//! Single-particle orbitals, model spaces and m-scheme sector bases.

use std::fmt;
use std::path::Path;

use pauli_core::{format_bitstring, parse_bitstring};

use crate::error::{Result, ShellError};

/// Spatial shell `(n, l, 2j)`, shared by protons and neutrons.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shell {
    pub n: u32,
    pub l: u32,
    pub twice_j: u32,
}

/// Shell together with its isospin projection, the key of single-particle energies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChargedShell {
    pub shell: Shell,
    pub twice_tz: i32,
}

/// m-scheme single-particle orbital `|n l j jz tz⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Orbital {
    pub n: u32,
    pub l: u32,
    pub twice_j: u32,
    pub twice_jz: i32,
    pub twice_tz: i32,
}

impl Orbital {
    /// Validated constructor.
    pub fn new(n: u32, l: u32, twice_j: u32, twice_jz: i32, twice_tz: i32) -> Result<Self> {
        let o = Self {
            n,
            l,
            twice_j,
            twice_jz,
            twice_tz,
        };
        o.validate()?;
        Ok(o)
    }

    fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(ShellError::InvalidOrbital(format!("{self}: {why}")));
        if self.twice_j % 2 == 0 {
            return bad("2j must be odd");
        }
        if self.twice_jz.unsigned_abs() > self.twice_j {
            return bad("|2jz| exceeds 2j");
        }
        if (self.twice_jz - self.twice_j as i32) % 2 != 0 {
            return bad("2jz parity differs from 2j");
        }
        if self.twice_tz.abs() != 1 {
            return bad("2tz must be +1 or -1");
        }
        if 2 * self.l + 1 != self.twice_j && 2 * self.l != self.twice_j + 1 {
            return bad("j must equal l ± 1/2");
        }
        Ok(())
    }

    pub fn shell(&self) -> Shell {
        Shell {
            n: self.n,
            l: self.l,
            twice_j: self.twice_j,
        }
    }

    pub fn charged_shell(&self) -> ChargedShell {
        ChargedShell {
            shell: self.shell(),
            twice_tz: self.twice_tz,
        }
    }
}

impl fmt::Display for Orbital {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(n={} l={} 2j={} 2jz={} 2tz={})",
            self.n, self.l, self.twice_j, self.twice_jz, self.twice_tz
        )
    }
}

/// Ordered list of orbitals; position `i` is qubit `i` under one-hot encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSpace {
    pub name: String,
    orbitals: Vec<Orbital>,
}

impl ModelSpace {
    /// Build a model space, rejecting repeated orbitals and more than 64 entries.
    pub fn new(name: impl Into<String>, orbitals: Vec<Orbital>) -> Result<Self> {
        if orbitals.len() > 64 {
            return Err(ShellError::Unsupported("more than 64 orbitals".into()));
        }
        for (i, a) in orbitals.iter().enumerate() {
            a.validate()?;
            if orbitals[..i].contains(a) {
                return Err(ShellError::InvalidOrbital(format!("{a} listed twice")));
            }
        }
        Ok(Self {
            name: name.into(),
            orbitals,
        })
    }

    /// All `2j+1` projections of each `(shell, 2tz)`, in the given order,
    /// with `2jz` ascending inside each shell.
    pub fn from_shells(name: impl Into<String>, shells: &[ChargedShell]) -> Result<Self> {
        let mut orbitals = Vec::new();
        for cs in shells {
            let j = cs.shell.twice_j as i32;
            for twice_jz in (-j..=j).step_by(2) {
                orbitals.push(Orbital::new(
                    cs.shell.n,
                    cs.shell.l,
                    cs.shell.twice_j,
                    twice_jz,
                    cs.twice_tz,
                )?);
            }
        }
        Self::new(name, orbitals)
    }

    /// Parse `QUBIT <index> <n> <l> <2j> <2jz> <2tz>` lines.
    pub fn parse(name: impl Into<String>, text: &str) -> Result<Self> {
        let mut entries: Vec<(usize, Orbital)> = Vec::new();
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
            if fields.len() != 7 || fields[0] != "QUBIT" {
                return Err(err(format!(
                    "expected `QUBIT index n l 2j 2jz 2tz`, got {line:?}"
                )));
            }
            let num = |i: usize| -> Result<i64> {
                fields[i]
                    .parse::<i64>()
                    .map_err(|_| err(format!("invalid integer {:?}", fields[i])))
            };
            let index = num(1)?;
            let (n, l, j, jz, tz) = (num(2)?, num(3)?, num(4)?, num(5)?, num(6)?);
            if index < 0 || n < 0 || l < 0 || j < 0 {
                return Err(err("negative index or quantum number".into()));
            }
            let orbital = Orbital::new(n as u32, l as u32, j as u32, jz as i32, tz as i32)
                .map_err(|e| err(e.to_string()))?;
            entries.push((index as usize, orbital));
        }
        entries.sort_by_key(|(i, _)| *i);
        for (pos, (i, _)) in entries.iter().enumerate() {
            if *i != pos {
                return Err(ShellError::Parse {
                    line: 0,
                    message: format!("qubit indices must be 0..{} without gaps", entries.len()),
                });
            }
        }
        Self::new(name, entries.into_iter().map(|(_, o)| o).collect())
    }

    /// Read a model-space file; the file stem becomes the name.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| ShellError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        Self::parse(name, &text)
    }

    pub fn len(&self) -> usize {
        self.orbitals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbitals.is_empty()
    }

    pub fn orbitals(&self) -> &[Orbital] {
        &self.orbitals
    }

    pub fn orbital(&self, i: usize) -> &Orbital {
        &self.orbitals[i]
    }

    /// Distinct charged shells in order of first appearance.
    pub fn charged_shells(&self) -> Vec<ChargedShell> {
        let mut out: Vec<ChargedShell> = Vec::new();
        for o in &self.orbitals {
            if !out.contains(&o.charged_shell()) {
                out.push(o.charged_shell());
            }
        }
        out
    }

    /// Total 2M of an occupation bitstring.
    pub fn twice_m(&self, state: u64) -> i32 {
        self.occupied(state)
            .map(|i| self.orbitals[i].twice_jz)
            .sum()
    }

    /// Total 2Tz of an occupation bitstring.
    pub fn twice_tz(&self, state: u64) -> i32 {
        self.occupied(state)
            .map(|i| self.orbitals[i].twice_tz)
            .sum()
    }

    /// Occupied orbital indices, ascending.
    pub fn occupied(&self, state: u64) -> impl Iterator<Item = usize> + '_ {
        (0..self.orbitals.len()).filter(move |&i| state >> i & 1 == 1)
    }

    /// All states with `particles` occupied orbitals, in descending bitstring order.
    pub fn particle_states(&self, particles: usize) -> Result<Vec<u64>> {
        let n = self.orbitals.len();
        if particles == 0 || particles > n {
            return Err(ShellError::BadParticleCount {
                particles,
                orbitals: n,
            });
        }
        let top = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut states = Vec::new();
        // Gosper's hack enumerates fixed-popcount masks in ascending order.
        let mut s: u64 = if particles == 64 {
            u64::MAX
        } else {
            (1u64 << particles) - 1
        };
        while s <= top {
            states.push(s);
            let c = s & s.wrapping_neg();
            let r = s.wrapping_add(c);
            if r == 0 {
                break;
            }
            s = (((r ^ s) >> 2) / c) | r;
        }
        states.reverse();
        Ok(states)
    }
}

/// Fixed particle number and 2M sector with an ordered list of states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorBasis {
    pub model_space: ModelSpace,
    pub particle_count: usize,
    pub twice_m: i32,
    states: Vec<u64>,
}

impl SectorBasis {
    /// Wrap an explicit ordering, checking particle number, 2M and uniqueness.
    pub fn from_states(
        model_space: ModelSpace,
        particle_count: usize,
        twice_m: i32,
        states: Vec<u64>,
    ) -> Result<Self> {
        let n = model_space.len();
        if states.is_empty() {
            return Err(ShellError::EmptySector {
                particles: particle_count,
                twice_m,
            });
        }
        for (i, &s) in states.iter().enumerate() {
            let foreign = |reason: String| ShellError::ForeignState {
                state: format_bitstring(s, n),
                reason,
            };
            if n < 64 && s >> n != 0 {
                return Err(foreign("occupies orbitals outside the model space".into()));
            }
            if s.count_ones() as usize != particle_count {
                return Err(foreign(format!("has {} particles", s.count_ones())));
            }
            if model_space.twice_m(s) != twice_m {
                return Err(foreign(format!("has 2M = {}", model_space.twice_m(s))));
            }
            if states[..i].contains(&s) {
                return Err(foreign("listed twice".into()));
            }
        }
        Ok(Self {
            model_space,
            particle_count,
            twice_m,
            states,
        })
    }

    /// Parse bitstrings (highest orbital first) into an explicit ordering.
    pub fn from_bitstrings(
        model_space: ModelSpace,
        particle_count: usize,
        twice_m: i32,
        bitstrings: &[&str],
    ) -> Result<Self> {
        let n = model_space.len();
        let states = bitstrings
            .iter()
            .map(|b| match parse_bitstring(b) {
                Ok((w, v)) if w == n => Ok(v),
                _ => Err(ShellError::ForeignState {
                    state: b.to_string(),
                    reason: format!("expected {n} binary digits"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_states(model_space, particle_count, twice_m, states)
    }

    pub fn states(&self) -> &[u64] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Position of `state` in the ordering.
    pub fn index_of(&self, state: u64) -> Option<usize> {
        self.states.iter().position(|&s| s == state)
    }

    /// State `i` as a bitstring, highest orbital first.
    pub fn bitstring(&self, i: usize) -> String {
        format_bitstring(self.states[i], self.model_space.len())
    }
}

/// All states with the given particle number and 2M, in descending bitstring
/// order (most significant orbital compared first).
pub fn build_sector_basis(
    space: &ModelSpace,
    particles: usize,
    twice_m: i32,
) -> Result<SectorBasis> {
    let states: Vec<u64> = space
        .particle_states(particles)?
        .into_iter()
        .filter(|&s| space.twice_m(s) == twice_m)
        .collect();
    if states.is_empty() {
        return Err(ShellError::EmptySector { particles, twice_m });
    }
    SectorBasis::from_states(space.clone(), particles, twice_m, states)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argon() -> ModelSpace {
        ModelSpace::parse(
            "ar38",
            "QUBIT 0 0 2 3 -1 -1\nQUBIT 1 1 0 1 -1 -1\nQUBIT 2 0 2 3 -3 -1\n\
             QUBIT 3 0 2 3 1 -1\nQUBIT 4 1 0 1 1 -1\nQUBIT 5 0 2 3 3 -1\n",
        )
        .unwrap()
    }

    fn bits(b: &SectorBasis) -> Vec<String> {
        (0..b.len()).map(|i| b.bitstring(i)).collect()
    }

    #[test]
    fn argon_sectors_match_tables() {
        let space = argon();
        assert_eq!(
            bits(&build_sector_basis(&space, 2, 4).unwrap()),
            ["110000", "101000"]
        );
        assert_eq!(
            bits(&build_sector_basis(&space, 2, 2).unwrap()),
            ["100010", "100001", "011000"]
        );
        let zero = build_sector_basis(&space, 2, 0).unwrap();
        assert_eq!(zero.len(), 5);
        assert!(bits(&zero).contains(&"100100".to_string()));
    }

    #[test]
    fn empty_sector_is_an_error() {
        assert!(matches!(
            build_sector_basis(&argon(), 2, 10),
            Err(ShellError::EmptySector { .. })
        ));
    }

    #[test]
    fn invalid_orbitals_rejected() {
        assert!(Orbital::new(0, 2, 3, 2, -1).is_err());
        assert!(Orbital::new(0, 2, 3, 5, -1).is_err());
        assert!(Orbital::new(0, 2, 7, 1, -1).is_err());
        assert!(ModelSpace::parse("x", "QUBIT 0 0 2 3 1 -1\nQUBIT 2 0 2 3 3 -1\n").is_err());
    }

    #[test]
    fn explicit_order_is_checked() {
        let space = argon();
        let ok = SectorBasis::from_bitstrings(space.clone(), 2, 4, &["101000", "110000"]).unwrap();
        assert_eq!(ok.index_of(0b110000), Some(1));
        assert!(SectorBasis::from_bitstrings(space, 2, 4, &["100010"]).is_err());
    }

    #[test]
    fn particle_states_count() {
        let space = argon();
        assert_eq!(space.particle_states(2).unwrap().len(), 15);
        assert_eq!(space.particle_states(6).unwrap(), vec![0b111111]);
    }
}
