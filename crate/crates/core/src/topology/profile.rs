//! Component counts of `F_k` for `k = 1..kmax`.
//!
//! For distinct digits in range, the copies `σ_d(F_k) + d n^k` occupy
//! disjoint subtiles and can only touch through cells on their subtile
//! boundaries. It is then enough to carry, from one level to the next, the
//! number of components that avoid the tile boundary and the boundary cells
//! with their component labels.

use rustc_hash::FxHashMap;

use super::label::{label_components, Adjacency};
use super::unionfind::UnionFind;
use crate::cellset::{iterate_hull, Cell};
use crate::error::{Error, Result};
use crate::exec::{map_range, sort_dedup, Engine};
use crate::ifs::GridIFS;

#[derive(Clone, Debug)]
struct Skeleton {
    side: i64,
    total: u128,
    interior: u128,
    /// Boundary cells of the tile, sorted, with border-component labels.
    border: Vec<(Cell, u32)>,
    labels: u32,
}

/// True when the boundary recursion applies: distinct digits, all in range.
pub fn skeleton_applies(g: &GridIFS) -> bool {
    let mut d = g.digits().to_vec();
    d.sort();
    d.dedup();
    g.digits_in_range() && d.len() == g.len()
}

fn on_border(c: &Cell, side: i64, dim: usize) -> bool {
    (0..dim).any(|a| c[a] == 0 || c[a] == side - 1)
}

fn step(g: &GridIFS, sk: &Skeleton, engine: &Engine) -> Result<Skeleton> {
    let dim = g.dim();
    let n = g.base();
    let side = sk.side;
    let new_side = side
        .checked_mul(n)
        .ok_or_else(|| Error::invalid("grid side overflow"))?;
    let copies = g.len();
    engine.check("boundary skeleton", (copies * sk.border.len()) as u128)?;
    let nodes = copies * sk.labels as usize;
    // Transformed boundary cells of every copy, tagged with their node.
    let parts: Vec<Vec<(Cell, u32)>> = map_range(engine.exec, copies, |i| {
        let d = g.digits()[i];
        let sym = g.syms()[i];
        sk.border
            .iter()
            .map(|(c, l)| {
                let mut t = if sym.is_identity() { *c } else { sym.apply_cell(c, side) };
                for a in 0..dim {
                    t[a] += d[a] * side;
                }
                (t, i as u32 * sk.labels + l)
            })
            .collect()
    });
    let cells: Vec<(Cell, u32)> = parts.into_iter().flatten().collect();
    let mut at: FxHashMap<Cell, u32> = FxHashMap::default();
    at.reserve(cells.len());
    for (c, node) in &cells {
        at.insert(*c, *node);
    }
    let steps = Adjacency::Foreground.half_steps(dim);
    let edges: Vec<Vec<(u32, u32)>> = map_range(engine.exec, cells.len().div_ceil(4096), |b| {
        let lo = b * 4096;
        let hi = (lo + 4096).min(cells.len());
        let mut out = Vec::new();
        for (c, node) in &cells[lo..hi] {
            for s in &steps {
                let nb = [c[0] + s[0], c[1] + s[1], c[2] + s[2]];
                if let Some(&m) = at.get(&nb) {
                    if m != *node {
                        out.push((*node, m));
                    }
                }
            }
        }
        out
    });
    let mut uf = UnionFind::new(nodes);
    for e in edges.into_iter().flatten() {
        uf.union(e.0 as usize, e.1 as usize);
    }
    let mut roots: Vec<usize> = (0..nodes).map(|v| uf.find(v)).collect();
    sort_dedup(engine.exec, &mut roots);
    let groups = roots.len() as u128;

    let mut border: Vec<(Cell, u32)> = cells
        .into_iter()
        .filter(|(c, _)| on_border(c, new_side, dim))
        .collect();
    border.sort_unstable();
    let mut relabel: FxHashMap<usize, u32> = FxHashMap::default();
    for (_, l) in border.iter_mut() {
        let r = uf.find(*l as usize);
        let next = relabel.len() as u32;
        *l = *relabel.entry(r).or_insert(next);
    }
    let touching = relabel.len() as u128;
    let carried = copies as u128 * sk.interior;
    Ok(Skeleton {
        side: new_side,
        total: carried + groups,
        interior: carried + groups - touching,
        border,
        labels: touching as u32,
    })
}

fn skeleton_profile(g: &GridIFS, kmax: u32, engine: &Engine) -> Result<Vec<u128>> {
    let mut sk = Skeleton {
        side: 1,
        total: 1,
        interior: 0,
        border: vec![([0; 3], 0)],
        labels: 1,
    };
    let mut out = Vec::with_capacity(kmax as usize);
    for _ in 0..kmax {
        sk = step(g, &sk, engine)?;
        out.push(sk.total);
    }
    Ok(out)
}

/// Counts by labeling each hull-seeded `F_k` directly.
pub fn direct_profile(g: &GridIFS, kmax: u32, engine: &Engine) -> Result<Vec<u128>> {
    (1..=kmax)
        .map(|k| {
            let s = iterate_hull(g, k, engine)?;
            Ok(label_components(&s, Adjacency::Foreground, engine).count as u128)
        })
        .collect()
}

/// Foreground component counts of `F_1, …, F_kmax`.
pub fn component_count_profile(g: &GridIFS, kmax: u32, engine: &Engine) -> Result<Vec<u128>> {
    if kmax < 1 {
        return Err(Error::invalid("profile needs kmax ≥ 1"));
    }
    if skeleton_applies(g) {
        skeleton_profile(g, kmax, engine)
    } else {
        direct_profile(g, kmax, engine)
    }
}
