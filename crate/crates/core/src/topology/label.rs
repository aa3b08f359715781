use serde::{Deserialize, Serialize};

use super::unionfind::UnionFind;
use crate::cellset::{Cell, CellIndex, CellSet};
use crate::exec::{map_range, Engine};
use crate::numeric::Rational;

/// Foreground cells touch when their closed boxes meet (Chebyshev distance
/// one); background cells of the open complement touch only across a face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Adjacency {
    Foreground,
    Background,
}

impl Adjacency {
    /// Neighbour steps whose first nonzero coordinate is positive, so each
    /// undirected edge is visited once.
    pub fn half_steps(self, dim: usize) -> Vec<Cell> {
        let mut out = Vec::new();
        let r = |a: usize| if a < dim { -1..=1 } else { 0..=0 };
        for x in r(0) {
            for y in r(1) {
                for z in r(2) {
                    let s = [x, y, z];
                    let first = s.iter().find(|&&v| v != 0);
                    if first != Some(&1) {
                        continue;
                    }
                    let nonzero = s.iter().filter(|&&v| v != 0).count();
                    if self == Adjacency::Foreground || nonzero == 1 {
                        out.push(s);
                    }
                }
            }
        }
        out
    }

    pub fn steps(self, dim: usize) -> Vec<Cell> {
        let mut out = self.half_steps(dim);
        let neg: Vec<Cell> = out.iter().map(|s| [-s[0], -s[1], -s[2]]).collect();
        out.extend(neg);
        out.sort();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentStats {
    pub cells: usize,
    pub lo: Cell,
    pub hi: Cell,
    /// `(span - 1) / n^k` where `span` is the widest extent in cells, or 0
    /// for spans below 2.
    pub diameter_lb: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentLabeling {
    pub adjacency: Adjacency,
    pub labels: Vec<u32>,
    pub count: usize,
    pub components: Vec<ComponentStats>,
}

impl ComponentLabeling {
    /// Cell positions of each component, in cell order.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (i, &l) in self.labels.iter().enumerate() {
            out[l as usize].push(i);
        }
        out
    }
}

pub(crate) fn neighbour(c: &Cell, s: &Cell, period: Option<&Cell>, dim: usize) -> Cell {
    let mut o = [0; 3];
    for a in 0..dim {
        o[a] = c[a] + s[a];
        if let Some(p) = period {
            o[a] = o[a].rem_euclid(p[a]);
        }
    }
    o
}

const CHUNK: usize = 1 << 14;
const BATCH: usize = 64;

/// Edges `(i, j)` between cells that touch under `adj`, streamed in
/// batches to `sink`.
pub(crate) fn for_each_edge(
    c: &CellSet,
    index: &CellIndex,
    adj: Adjacency,
    engine: &Engine,
    mut sink: impl FnMut(usize, usize, &Cell),
) {
    let dim = c.dim();
    let steps = adj.half_steps(dim);
    let period = c.torus_cells();
    let cells = c.cells();
    let chunks = cells.len().div_ceil(CHUNK);
    let mut start = 0;
    while start < chunks {
        let end = (start + BATCH).min(chunks);
        let batch: Vec<Vec<(u32, u32, u8)>> = map_range(engine.exec, end - start, |b| {
            let lo = (start + b) * CHUNK;
            let hi = (lo + CHUNK).min(cells.len());
            let mut edges = Vec::new();
            for (i, cell) in cells[lo..hi].iter().enumerate() {
                for (si, s) in steps.iter().enumerate() {
                    let nb = neighbour(cell, s, period.as_ref(), dim);
                    if let Some(j) = index.get(&nb) {
                        edges.push(((lo + i) as u32, j as u32, si as u8));
                    }
                }
            }
            edges
        });
        for edges in batch {
            for (i, j, si) in edges {
                sink(i as usize, j as usize, &steps[si as usize]);
            }
        }
        start = end;
    }
}

/// Components of `c` under `adj`. On a torus the neighbours wrap. Labels are
/// numbered by the first cell of each component in sorted order.
pub fn label_components(c: &CellSet, adj: Adjacency, engine: &Engine) -> ComponentLabeling {
    let index = c.index();
    let mut uf = UnionFind::new(c.len());
    for_each_edge(c, &index, adj, engine, |i, j, _| {
        uf.union(i, j);
    });
    let (labels, count) = uf.labels();
    let components = stats(c, &labels, count);
    ComponentLabeling {
        adjacency: adj,
        labels,
        count,
        components,
    }
}

pub(crate) fn stats(c: &CellSet, labels: &[u32], count: usize) -> Vec<ComponentStats> {
    let dim = c.dim();
    let mut acc: Vec<Option<(usize, Cell, Cell)>> = vec![None; count];
    for (cell, &l) in c.cells().iter().zip(labels) {
        let e = acc[l as usize].get_or_insert((0, *cell, *cell));
        e.0 += 1;
        for a in 0..dim {
            e.1[a] = e.1[a].min(cell[a]);
            e.2[a] = e.2[a].max(cell[a]);
        }
    }
    let side = c.side();
    acc.into_iter()
        .map(|e| {
            let (cells, lo, hi) = e.expect("every label has a cell");
            ComponentStats {
                cells,
                lo,
                hi,
                diameter_lb: span_bound(&lo, &hi, dim, side),
            }
        })
        .collect()
}

pub(crate) fn span_bound(lo: &Cell, hi: &Cell, dim: usize, side: i64) -> Rational {
    let span = (0..dim).map(|a| hi[a] - lo[a] + 1).max().unwrap_or(1);
    if span >= 2 {
        Rational::new(span - 1, side)
    } else {
        Rational::zero()
    }
}
