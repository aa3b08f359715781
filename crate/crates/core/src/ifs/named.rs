//! Named systems reproducing the worked constructions.

use serde::Serialize;

use super::{AffineMap, GridIFS, IFSystem, Symmetry};
use crate::error::{Error, Result};
use crate::numeric::{q, RPoint, Rational};

/// A corpus system, either a grid digit system or a general rational IFS.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedSystem {
    Grid(GridIFS),
    General(IFSystem),
}

impl NamedSystem {
    pub fn to_ifs(&self) -> IFSystem {
        match self {
            NamedSystem::Grid(g) => g.to_ifs(),
            NamedSystem::General(s) => s.clone(),
        }
    }

    pub fn as_grid(&self) -> Option<&GridIFS> {
        match self {
            NamedSystem::Grid(g) => Some(g),
            NamedSystem::General(_) => None,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            NamedSystem::Grid(g) => g.dim(),
            NamedSystem::General(s) => s.dim(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusInfo {
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub summary: &'static str,
    /// True when the maps are a reconstruction rather than given data.
    pub interpretation: bool,
}

pub const CORPUS: &[CorpusInfo] = &[
    CorpusInfo {
        name: "E1",
        aliases: &["cantor-strips"],
        summary: "quarter Cantor set times [0,1]; base 4, digits {0,3}x{0..3}",
        interpretation: false,
    },
    CorpusInfo {
        name: "E2",
        aliases: &["rotated-comb"],
        summary: "E1 plus two quarter-turned pieces on the top row (reconstructed maps)",
        interpretation: true,
    },
    CorpusInfo {
        name: "F3",
        aliases: &["leaves"],
        summary: "twelve quarter-size pieces with digits reaching x = 7; violates the open set condition",
        interpretation: false,
    },
    CorpusInfo {
        name: "E4",
        aliases: &["comb-cube"],
        summary: "fractal cube in base 3 with a Cantor-comb section at z = 1/3",
        interpretation: false,
    },
    CorpusInfo {
        name: "E4-proj",
        aliases: &["comb-cube-shadow", "E4-projection"],
        summary: "projection of E4 to the yz-plane: base 3, digits (0,0),(1,0),(2,0),(2,1),(0,2)",
        interpretation: false,
    },
    CorpusInfo {
        name: "carpet",
        aliases: &["sierpinski-carpet"],
        summary: "Sierpinski carpet, base 3 without the centre",
        interpretation: false,
    },
    CorpusInfo {
        name: "K",
        aliases: &["cantor-quarter"],
        summary: "quarter Cantor set {x/4, (x+3)/4}",
        interpretation: false,
    },
    CorpusInfo {
        name: "E-int",
        aliases: &["dyadic-e"],
        summary: "interval set E = E/4 ∪ (E/4 + 1/2) ∪ (E/2 + 1/2)",
        interpretation: false,
    },
    CorpusInfo {
        name: "F-int",
        aliases: &["dyadic-f"],
        summary: "interval set F = F/16 ∪ ((F/2 ∪ F/4 ∪ F/8 ∪ F/16) + 1/4)",
        interpretation: false,
    },
    CorpusInfo {
        name: "X",
        aliases: &["strip-x"],
        summary: "E x [0,1] as a ten-map planar system of similarity dimension 2",
        interpretation: false,
    },
    CorpusInfo {
        name: "G",
        aliases: &["path-split-cube"],
        summary: "space system with a component that is connected but not path connected",
        interpretation: false,
    },
];

fn resolve(name: &str) -> Option<&'static CorpusInfo> {
    CORPUS.iter().find(|c| {
        c.name.eq_ignore_ascii_case(name) || c.aliases.iter().any(|a| a.eq_ignore_ascii_case(name))
    })
}

pub fn corpus_info(name: &str) -> Result<&'static CorpusInfo> {
    resolve(name).ok_or_else(|| Error::NotFound(format!("no corpus system named {name:?}")))
}

pub fn build_corpus(name: &str) -> Result<NamedSystem> {
    let info = corpus_info(name)?;
    Ok(match info.name {
        "E1" => NamedSystem::Grid(e1()),
        "E2" => NamedSystem::Grid(e2()),
        "F3" => NamedSystem::Grid(f3()),
        "E4" => NamedSystem::Grid(e4()),
        "E4-proj" => NamedSystem::Grid(e4_projection()),
        "carpet" => NamedSystem::Grid(carpet()),
        "K" => NamedSystem::Grid(GridIFS::new(1, 4, vec![vec![0], vec![3]])?),
        "E-int" => NamedSystem::General(e_interval()),
        "F-int" => NamedSystem::General(f_interval()),
        "X" => NamedSystem::General(x_strip()),
        "G" => NamedSystem::General(g_cube()?),
        _ => unreachable!(),
    })
}

fn e1_digits() -> Vec<Vec<i64>> {
    let mut d = Vec::new();
    for a in [0, 3] {
        for b in 0..4 {
            d.push(vec![a, b]);
        }
    }
    d
}

pub fn e1() -> GridIFS {
    GridIFS::new(2, 4, e1_digits()).unwrap()
}

pub fn e2() -> GridIFS {
    let mut digits = e1_digits();
    let mut syms = vec![Symmetry::identity(2); digits.len()];
    for top in [vec![1, 3], vec![2, 3]] {
        digits.push(top);
        syms.push(Symmetry::quarter_turn());
    }
    GridIFS::with_symmetries(2, 4, digits, syms).unwrap()
}

/// Digits `0, i, 2i, 3i, 3, 3+i, 3+2i, 3+3i, 4+3i, 5+3i, 6+3i, 7+3i` in base 4.
pub fn f3() -> GridIFS {
    let digits = vec![
        vec![0, 0],
        vec![0, 1],
        vec![0, 2],
        vec![0, 3],
        vec![3, 0],
        vec![3, 1],
        vec![3, 2],
        vec![3, 3],
        vec![4, 3],
        vec![5, 3],
        vec![6, 3],
        vec![7, 3],
    ];
    GridIFS::new(2, 4, digits).unwrap()
}

pub fn e4() -> GridIFS {
    let mut d = Vec::new();
    for i in 0..3 {
        d.push(vec![i, 0, 2]);
    }
    for i in [0, 2] {
        for j in 0..3 {
            d.push(vec![i, j, 0]);
        }
    }
    d.push(vec![0, 2, 1]);
    GridIFS::new(3, 3, d).unwrap()
}

pub fn e4_projection() -> GridIFS {
    GridIFS::new(
        2,
        3,
        vec![vec![0, 0], vec![1, 0], vec![2, 0], vec![2, 1], vec![0, 2]],
    )
    .unwrap()
}

pub fn carpet() -> GridIFS {
    let mut d = Vec::new();
    for x in 0..3 {
        for y in 0..3 {
            if (x, y) != (1, 1) {
                d.push(vec![x, y]);
            }
        }
    }
    GridIFS::new(2, 3, d).unwrap()
}

fn line_map(ratio: Rational, shift: Rational) -> AffineMap {
    AffineMap::homothety(ratio, RPoint::new(vec![shift]).unwrap()).unwrap()
}

pub fn e_interval() -> IFSystem {
    IFSystem::new(vec![
        line_map(q(1, 4), q(0, 1)),
        line_map(q(1, 4), q(1, 2)),
        line_map(q(1, 2), q(1, 2)),
    ])
    .unwrap()
}

pub fn f_interval() -> IFSystem {
    IFSystem::new(vec![
        line_map(q(1, 16), q(0, 1)),
        line_map(q(1, 2), q(1, 4)),
        line_map(q(1, 4), q(1, 4)),
        line_map(q(1, 8), q(1, 4)),
        line_map(q(1, 16), q(1, 4)),
    ])
    .unwrap()
}

fn plane_map(ratio: Rational, x: Rational, y: Rational) -> AffineMap {
    AffineMap::homothety(ratio, RPoint::new(vec![x, y]).unwrap()).unwrap()
}

/// Each map of the interval system for E extended by the full digit column
/// in y, giving `E x [0,1]`.
pub fn x_strip() -> IFSystem {
    let mut maps = Vec::new();
    for j in 0..4 {
        maps.push(plane_map(q(1, 4), q(0, 1), q(j, 4)));
    }
    for j in 0..4 {
        maps.push(plane_map(q(1, 4), q(2, 4), q(j, 4)));
    }
    for j in 0..2 {
        maps.push(plane_map(q(1, 2), q(1, 2), q(j, 2)));
    }
    IFSystem::new(maps).unwrap()
}

fn space_map(ratio: Rational, x: Rational, y: Rational, z: Rational) -> AffineMap {
    AffineMap::homothety(ratio, RPoint::new(vec![x, y, z]).unwrap()).unwrap()
}

/// Ratio cap applied to every part of G before lifting.
pub fn g_ratio_cap() -> Rational {
    q(1, 5)
}

/// The three parts of G: lifts of the systems for F and F/4 onto the top
/// face, the lift of X onto the bottom face, and the three connectors.
pub struct GParts {
    pub top: IFSystem,
    pub bottom: IFSystem,
    pub connectors: IFSystem,
}

pub fn g_parts() -> Result<GParts> {
    let cap = g_ratio_cap();
    let f1 = f_interval().refine_to_ratio(&cap)?;
    let one = Rational::one();
    let mut top = Vec::new();
    for m in f1.maps() {
        let lam = m.ratio().clone();
        let a = m.shift().coord(0).clone();
        top.push(space_map(lam.clone(), a, &one - &lam, &one - &lam));
    }
    // F/4 is generated by the conjugates x ↦ λx + a/4.
    for m in f1.maps() {
        let lam = m.ratio().clone();
        let a = m.shift().coord(0) * &q(1, 4);
        top.push(space_map(lam.clone(), a, Rational::zero(), &one - &lam));
    }
    let g2 = x_strip().refine_to_ratio(&cap)?;
    let bottom = g2
        .maps()
        .iter()
        .map(|m| {
            space_map(
                m.ratio().clone(),
                m.shift().coord(0).clone(),
                m.shift().coord(1).clone(),
                Rational::zero(),
            )
        })
        .collect();
    let connectors = vec![
        space_map(q(1, 5), q(2, 5), q(2, 5), q(2, 5)),
        space_map(q(1, 5), q(2, 5), q(4, 5), q(2, 5)),
        space_map(q(1, 5), q(2, 5), q(3, 5), q(3, 5)),
    ];
    Ok(GParts {
        top: IFSystem::new(top)?,
        bottom: IFSystem::new(bottom)?,
        connectors: IFSystem::new(connectors)?,
    })
}

pub fn g_cube() -> Result<IFSystem> {
    let p = g_parts()?;
    let g = p.top.union(&p.bottom)?.union(&p.connectors)?;
    let quarter = q(1, 4);
    if let Some(m) = g.maps().iter().find(|m| m.ratio() >= &quarter) {
        return Err(Error::invalid(format!("refined map {m:?} has ratio ≥ 1/4")));
    }
    Ok(g)
}
