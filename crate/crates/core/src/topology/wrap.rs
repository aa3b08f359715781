//! Complement of `H_k = F_k + Z^d` on the unit torus, labeled with lifted
//! offsets. A face-connected cycle whose lift closes up with a nonzero
//! period proves that the complement of `F + Z^d` has an unbounded component,
//! because `H ⊆ H_k`.

use serde::Serialize;

use super::label::{for_each_edge, span_bound, Adjacency, ComponentLabeling, ComponentStats};
use super::threshold::{threshold_value, Sqrt2Multiple};
use super::unionfind::OffsetUnionFind;
use crate::cellset::{iterate_hull, Cell, CellSet};
use crate::error::{Error, Result};
use crate::exec::Engine;
use crate::ifs::GridIFS;
use crate::numeric::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WrapReport {
    /// `(component label, primitive offsets)` for every wrapping component.
    pub wrapping: Vec<(u32, Vec<Cell>)>,
    /// Largest diameter lower bound among components that do not wrap.
    pub max_bounded_diameter: Rational,
    pub threshold: Sqrt2Multiple,
    pub threshold_exceeded: bool,
    pub unbounded_complement_certified: bool,
}

impl WrapReport {
    /// Sorted, deduplicated offsets over all wrapping components.
    pub fn directions(&self) -> Vec<Cell> {
        let mut v: Vec<Cell> = self.wrapping.iter().flat_map(|(_, o)| o.clone()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// The common direction of all wrap offsets, when they are all parallel.
    pub fn common_direction(&self) -> Option<Cell> {
        let dirs = self.directions();
        (dirs.len() == 1).then(|| dirs[0])
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Divides by the gcd and makes the first nonzero entry positive.
pub fn primitive(v: &Cell) -> Cell {
    let g = v.iter().fold(0, |g, &x| gcd(g, x));
    if g == 0 {
        return *v;
    }
    let mut out = [v[0] / g, v[1] / g, v[2] / g];
    if out.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        out = [-out[0], -out[1], -out[2]];
    }
    out
}

/// Labels a torus cell set with face adjacency and offset tracking. Returns
/// the labeling (bounding boxes taken on lifted coordinates) and, per
/// component, the primitive wrap offsets in units of the torus period.
pub fn label_torus_offsets(
    c: &CellSet,
    engine: &Engine,
) -> Result<(ComponentLabeling, Vec<Vec<Cell>>)> {
    let period = c
        .torus_cells()
        .ok_or_else(|| Error::invalid("offset labeling needs a torus"))?;
    let dim = c.dim();
    let index = c.index();
    let mut uf = OffsetUnionFind::new(c.len());
    let mut cycles: Vec<(usize, Cell)> = Vec::new();
    let cells = c.cells();
    for_each_edge(c, &index, Adjacency::Background, engine, |i, j, s| {
        let mut w = [0; 3];
        for a in 0..dim {
            let raw = cells[i][a] + s[a];
            w[a] = (raw - cells[j][a]) / period[a];
        }
        if let Some(d) = uf.union(i, j, &w) {
            cycles.push((i, d));
        }
    });
    let mut roots = Vec::with_capacity(c.len());
    let mut lifted = Vec::with_capacity(c.len());
    for (i, cell) in cells.iter().enumerate() {
        let (r, phi) = uf.find(i);
        roots.push(r);
        let mut l = *cell;
        for a in 0..dim {
            l[a] += phi[a] * period[a];
        }
        lifted.push(l);
    }
    let mut map = rustc_hash::FxHashMap::default();
    let mut labels = Vec::with_capacity(c.len());
    for r in &roots {
        let next = map.len() as u32;
        labels.push(*map.entry(*r).or_insert(next));
    }
    let count = map.len();
    let mut offsets = vec![Vec::new(); count];
    for (i, d) in cycles {
        let l = labels[i] as usize;
        let p = primitive(&d);
        if !offsets[l].contains(&p) {
            offsets[l].push(p);
        }
    }
    for o in &mut offsets {
        o.sort();
    }
    let side = c.side();
    let mut acc: Vec<Option<(usize, Cell, Cell)>> = vec![None; count];
    for (l, p) in labels.iter().zip(&lifted) {
        let e = acc[*l as usize].get_or_insert((0, *p, *p));
        e.0 += 1;
        for a in 0..dim {
            e.1[a] = e.1[a].min(p[a]);
            e.2[a] = e.2[a].max(p[a]);
        }
    }
    let components = acc
        .into_iter()
        .map(|e| {
            let (n, lo, hi) = e.unwrap();
            ComponentStats {
                cells: n,
                lo,
                hi,
                diameter_lb: span_bound(&lo, &hi, dim, side),
            }
        })
        .collect();
    Ok((
        ComponentLabeling {
            adjacency: Adjacency::Background,
            labels,
            count,
            components,
        },
        offsets,
    ))
}

/// Background components of `H_k^c` on the unit torus, and the wrap report.
/// Uses the hull-seeded `F_k`, which contains the attractor for every grid
/// system.
pub fn complement_analysis(
    g: &GridIFS,
    k: u32,
    engine: &Engine,
) -> Result<(CellSet, ComponentLabeling, WrapReport)> {
    if k < 1 {
        return Err(Error::invalid("complement analysis needs k ≥ 1"));
    }
    let side = crate::cellset::pow_side(g.base(), k)?;
    engine.check("torus complement", (side as u128).pow(g.dim() as u32))?;
    let mut unit = [0; 3];
    unit[..g.dim()].fill(1);
    let h = iterate_hull(g, k, engine)?.to_torus(unit, engine)?;
    let comp = h.complement_cells(engine)?;
    let (labeling, offsets) = label_torus_offsets(&comp, engine)?;
    let threshold = threshold_value(g.base())?;
    let wrapping: Vec<(u32, Vec<Cell>)> = offsets
        .iter()
        .enumerate()
        .filter(|(_, o)| !o.is_empty())
        .map(|(l, o)| (l as u32, o.clone()))
        .collect();
    let max_bounded_diameter = labeling
        .components
        .iter()
        .zip(&offsets)
        .filter(|(_, o)| o.is_empty())
        .map(|(s, _)| s.diameter_lb.clone())
        .max()
        .unwrap_or_else(Rational::zero);
    let threshold_exceeded = threshold.is_exceeded_by(&max_bounded_diameter);
    let report = WrapReport {
        unbounded_complement_certified: !wrapping.is_empty() || threshold_exceeded,
        wrapping,
        max_bounded_diameter,
        threshold,
        threshold_exceeded,
    };
    Ok((comp, labeling, report))
}
