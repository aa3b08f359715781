//! Neighbour automaton of a fractal square or cube.
//!
//! `F ∩ (F + δ) ≠ ∅` for `δ ∈ {-1,0,1}^d` exactly when `δ` starts an
//! infinite path under `δ → nδ + d₂ - d₁`; the surviving states are the
//! greatest fixed point of "has a successor that survives".

use serde::Serialize;

use crate::cellset::Cell;
use crate::error::{Error, Result};
use crate::ifs::GridIFS;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NeighborAutomaton {
    pub dim: usize,
    /// All of `{-1,0,1}^d`, sorted.
    pub states: Vec<Cell>,
    pub transitions: Vec<(Cell, Cell)>,
    pub survivors: Vec<Cell>,
}

fn require_standard(g: &GridIFS) -> Result<()> {
    if !g.is_standard() {
        return Err(Error::Unsupported(
            "the neighbour automaton needs digits in range and no symmetries; use levelwise analysis"
                .into(),
        ));
    }
    Ok(())
}

fn unit_states(dim: usize) -> Vec<Cell> {
    let r = |a: usize| if a < dim { -1..=1 } else { 0..=0 };
    let mut out = Vec::new();
    for x in r(0) {
        for y in r(1) {
            for z in r(2) {
                out.push([x, y, z]);
            }
        }
    }
    out
}

fn in_unit(c: &Cell) -> bool {
    c.iter().all(|v| (-1..=1).contains(v))
}

pub fn neighbor_automaton(g: &GridIFS) -> Result<NeighborAutomaton> {
    require_standard(g)?;
    let dim = g.dim();
    let n = g.base();
    let states = unit_states(dim);
    let mut transitions = Vec::new();
    for s in &states {
        for d1 in g.digits() {
            for d2 in g.digits() {
                let t = [
                    n * s[0] + d2[0] - d1[0],
                    n * s[1] + d2[1] - d1[1],
                    n * s[2] + d2[2] - d1[2],
                ];
                if in_unit(&t) {
                    transitions.push((*s, t));
                }
            }
        }
    }
    transitions.sort();
    transitions.dedup();
    let mut alive: Vec<Cell> = states.clone();
    loop {
        let next: Vec<Cell> = alive
            .iter()
            .filter(|s| {
                transitions
                    .iter()
                    .any(|(a, b)| a == *s && alive.binary_search(b).is_ok())
            })
            .copied()
            .collect();
        if next.len() == alive.len() {
            break;
        }
        alive = next;
    }
    Ok(NeighborAutomaton {
        dim,
        states,
        transitions,
        survivors: alive,
    })
}

impl NeighborAutomaton {
    pub fn intersects(&self, delta: &Cell) -> bool {
        self.survivors.binary_search(delta).is_ok()
    }
}

/// Whether `F ∩ (F + δ)` is nonempty.
pub fn piece_intersection(g: &GridIFS, delta: &Cell) -> Result<bool> {
    if !in_unit(delta) || delta[g.dim().min(3)..].iter().any(|&v| v != 0) {
        return Err(Error::invalid(format!("offset {delta:?} outside {{-1,0,1}}^d")));
    }
    Ok(neighbor_automaton(g)?.intersects(delta))
}

/// Digit pairs whose pieces `(F + d)/n` meet.
pub fn piece_graph(g: &GridIFS) -> Result<Vec<(usize, usize)>> {
    let aut = neighbor_automaton(g)?;
    let d = g.digits();
    let mut edges = Vec::new();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let delta = [d[j][0] - d[i][0], d[j][1] - d[i][1], d[j][2] - d[i][2]];
            if in_unit(&delta) && aut.intersects(&delta) {
                edges.push((i, j));
            }
        }
    }
    Ok(edges)
}

/// Connectedness of the attractor: the piece graph must be connected.
pub fn is_connected_exact(g: &GridIFS) -> Result<bool> {
    let edges = piece_graph(g)?;
    let mut uf = super::unionfind::UnionFind::new(g.len());
    for (a, b) in edges {
        uf.union(a, b);
    }
    Ok(uf.labels().1 == 1)
}
