//! TOML description of a system.
//!
//! ```toml
//! name = "E1"
//! dim = 2
//! kind = "grid"          # or "general"
//! n = 4                  # grid only
//! digits = [[0, 0], [0, 1], [3, 0], [3, 1]]
//! # optional, one per digit
//! syms = [{ perm = [0, 1], signs = [1, 1] }, ...]
//!
//! # general systems
//! [[maps]]
//! ratio = "1/4"
//! shift = ["0", "1/2"]
//! sym = { perm = [1, 0], signs = [-1, 1] }   # optional
//! ```

use serde::{Deserialize, Serialize};

use super::{AffineMap, GridIFS, IFSystem, NamedSystem, Symmetry};
use crate::error::{Error, Result};
use crate::numeric::{RPoint, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymConfig {
    pub perm: Vec<usize>,
    /// `1` keeps the axis, `-1` reflects it.
    pub signs: Vec<i8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapConfig {
    pub ratio: Rational,
    pub shift: Vec<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sym: Option<SymConfig>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SystemKind {
    Grid,
    General,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemConfig {
    #[serde(default)]
    pub name: String,
    pub dim: usize,
    pub kind: SystemKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub digits: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub syms: Vec<SymConfig>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub maps: Vec<MapConfig>,
}

impl SymConfig {
    fn build(&self) -> Result<Symmetry> {
        let flip = self
            .signs
            .iter()
            .map(|&s| match s {
                1 => Ok(false),
                -1 => Ok(true),
                _ => Err(Error::Parse(format!("symmetry sign {s} is not ±1"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Symmetry::new(&self.perm, &flip)
    }

    fn from_sym(s: &Symmetry) -> Self {
        SymConfig {
            perm: s.perm().iter().map(|&p| p as usize).collect(),
            signs: s.flips().iter().map(|&f| if f { -1 } else { 1 }).collect(),
        }
    }
}

impl SystemConfig {
    pub fn build(&self) -> Result<NamedSystem> {
        match self.kind {
            SystemKind::Grid => {
                let n = self
                    .n
                    .ok_or_else(|| Error::Parse("grid system without n".into()))?;
                if !self.maps.is_empty() {
                    return Err(Error::Parse("grid system must not list maps".into()));
                }
                let g = if self.syms.is_empty() {
                    GridIFS::new(self.dim, n, self.digits.clone())?
                } else {
                    let syms = self.syms.iter().map(SymConfig::build).collect::<Result<_>>()?;
                    GridIFS::with_symmetries(self.dim, n, self.digits.clone(), syms)?
                };
                Ok(NamedSystem::Grid(g))
            }
            SystemKind::General => {
                if self.maps.is_empty() {
                    return Err(Error::Parse("general system without maps".into()));
                }
                let mut maps = Vec::with_capacity(self.maps.len());
                for m in &self.maps {
                    let sym = match &m.sym {
                        Some(s) => s.build()?,
                        None => Symmetry::identity(self.dim.clamp(1, 3)),
                    };
                    let shift = RPoint::new(m.shift.clone())?;
                    if shift.dim() != self.dim {
                        return Err(Error::Parse(format!(
                            "shift {shift} is not of dimension {}",
                            self.dim
                        )));
                    }
                    maps.push(AffineMap::new(m.ratio.clone(), sym, shift)?);
                }
                Ok(NamedSystem::General(IFSystem::new(maps)?))
            }
        }
    }
}

pub fn parse_system(text: &str) -> Result<SystemConfig> {
    toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn load_system(path: &std::path::Path) -> Result<NamedSystem> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::NotFound(format!("{}: {e}", path.display())))?;
    parse_system(&text)?.build()
}

pub fn system_to_config(name: &str, sys: &NamedSystem) -> SystemConfig {
    match sys {
        NamedSystem::Grid(g) => SystemConfig {
            name: name.to_string(),
            dim: g.dim(),
            kind: SystemKind::Grid,
            n: Some(g.base()),
            digits: g.digits().iter().map(|d| d[..g.dim()].to_vec()).collect(),
            syms: if g.has_symmetries() {
                g.syms().iter().map(SymConfig::from_sym).collect()
            } else {
                Vec::new()
            },
            maps: Vec::new(),
        },
        NamedSystem::General(s) => SystemConfig {
            name: name.to_string(),
            dim: s.dim(),
            kind: SystemKind::General,
            n: None,
            digits: Vec::new(),
            syms: Vec::new(),
            maps: s
                .maps()
                .iter()
                .map(|m| MapConfig {
                    ratio: m.ratio().clone(),
                    shift: m.shift().coords().to_vec(),
                    sym: (!m.sym().is_identity()).then(|| SymConfig::from_sym(m.sym())),
                })
                .collect(),
        },
    }
}

impl std::str::FromStr for SystemConfig {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_system(s)
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::ifs::{build_corpus, CORPUS};

    #[test]
    fn grid_from_text() {
        let cfg = parse_system(
            "name = \"t\"\ndim = 2\nkind = \"grid\"\nn = 2\ndigits = [[0,0],[1,1]]\n",
        )
        .unwrap();
        let g = cfg.build().unwrap();
        assert_eq!(g.as_grid().unwrap().len(), 2);
    }

    #[test]
    fn general_from_text() {
        let text = r#"
dim = 1
kind = "general"
[[maps]]
ratio = "1/4"
shift = ["0"]
[[maps]]
ratio = "1/2"
shift = ["1/2"]
sym = { perm = [0], signs = [-1] }
"#;
        let s = parse_system(text).unwrap().build().unwrap().to_ifs();
        assert_eq!(s.len(), 2);
        assert!(!s.maps()[1].sym().is_identity());
    }

    #[test]
    fn bad_inputs() {
        assert!(parse_system("dim = 2\nkind = \"grid\"\ndigits=[[0,0],[1,1]]").unwrap().build().is_err());
        assert!(parse_system("dim = 2\nkind = \"blob\"").is_err());
        let bad_sign = "dim=2\nkind=\"grid\"\nn=2\ndigits=[[0,0],[1,1]]\nsyms=[{perm=[0,1],signs=[1,2]},{perm=[0,1],signs=[1,1]}]";
        assert!(parse_system(bad_sign).unwrap().build().is_err());
        let ratio_one = "dim=1\nkind=\"general\"\n[[maps]]\nratio=\"1\"\nshift=[\"0\"]";
        assert!(parse_system(ratio_one).unwrap().build().is_err());
    }

    #[test]
    fn corpus_round_trips_through_toml() {
        for info in CORPUS {
            if info.name == "G" {
                continue;
            }
            let sys = build_corpus(info.name).unwrap();
            let text = toml::to_string(&system_to_config(info.name, &sys)).unwrap();
            let back = parse_system(&text).unwrap().build().unwrap();
            assert_eq!(back, sys, "{}", info.name);
        }
    }
}
