use std::collections::BTreeSet;

use serde::Serialize;

use super::{Certificate, CertificateKind, Status, Witness};
use crate::cellset::{cover_boxes, iterate_hull, Cell, CellSet};
use crate::error::{Error, Result};
use crate::exec::Engine;
use crate::ifs::{GridIFS, IFSystem};
use crate::numeric::{RBox, Rational};
use crate::topology::{label_components, Adjacency};

/// How the level-`k` section is compared with the expected cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SectionMode {
    /// The slice of `F_k` itself.
    Exact,
    /// The components of the section of `F_k`, labelled within the
    /// section, that meet the expected cells. Proves that the expected set
    /// is a union of components of the section when other pieces share the
    /// same height.
    Component,
}

/// Right-hand side of a section equation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExpectedSection {
    /// `⋃ f_i(section at height z1)` over pairs `(i, z1)`, built from
    /// `F_{k-1}`.
    Images(Vec<(usize, Rational)>),
    /// Closed boxes in section coordinates, realized as the level-`k` cells
    /// of the section's unit cube that meet them.
    Boxes(Vec<RBox>),
}

fn aligned_layer(z: &Rational, side: i64, what: &str) -> Result<i64> {
    let t = z * &Rational::int(side);
    if !t.is_integer() || z.is_negative() || z > &Rational::one() {
        return Err(Error::invalid(format!("{what} height {z} is not a grid line at side {side}")));
    }
    Ok(t.floor_i64().expect("small"))
}

/// Cells of `F_k` (hull-seeded) whose closed range along `axis` contains
/// the given grid line, kept in full dimension.
fn layer_cells(f: &CellSet, axis: usize, line: i64) -> Vec<Cell> {
    f.cells()
        .iter()
        .filter(|c| c[axis] == line || c[axis] == line - 1)
        .copied()
        .collect()
}

fn box_cells(dim: usize, side: i64, boxes: &[RBox]) -> Result<Vec<Cell>> {
    let n = Rational::int(side);
    let mut out = BTreeSet::new();
    for b in boxes {
        if b.dim() != dim {
            return Err(Error::invalid(format!("expected box of dimension {dim}")));
        }
        let ranges: Vec<(i64, i64)> = (0..dim)
            .map(|a| {
                let lo = (b.lo().coord(a) * &n).ceil() - 1;
                let hi = (b.hi().coord(a) * &n).floor();
                let lo = i64::try_from(lo).unwrap_or(i64::MIN).max(0);
                let hi = i64::try_from(hi).unwrap_or(i64::MAX).min(side - 1);
                (lo, hi)
            })
            .collect();
        if ranges.iter().any(|(l, h)| l > h) {
            continue;
        }
        let mut c = [0i64; 3];
        for (a, r) in ranges.iter().enumerate() {
            c[a] = r.0;
        }
        'cells: loop {
            out.insert(c);
            for (a, r) in ranges.iter().enumerate() {
                if c[a] < r.1 {
                    c[a] += 1;
                    continue 'cells;
                }
                c[a] = r.0;
            }
            break;
        }
    }
    Ok(out.into_iter().collect())
}

/// Compares the level-`k` section of a grid system at height `z0` along
/// `axis` with the cells of an expected expression.
///
/// `z0` must be a level-`k` grid line. In component mode the witness
/// records whether the expected cells lie in `F_k` and share one component
/// of it.
pub fn section_equation(
    g: &GridIFS,
    axis: usize,
    z0: &Rational,
    expected: &ExpectedSection,
    k: u32,
    mode: SectionMode,
    engine: &Engine,
) -> Result<Certificate> {
    if axis >= g.dim() || g.dim() < 2 {
        return Err(Error::invalid(format!("axis {axis} invalid for dimension {}", g.dim())));
    }
    let fk = iterate_hull(g, k, engine)?;
    let side = fk.side();
    aligned_layer(z0, side, "section")?;
    let (expected_full, target) = match expected {
        ExpectedSection::Images(terms) => {
            if k == 0 {
                return Err(Error::invalid("image expressions need level k ≥ 1"));
            }
            let prev = iterate_hull(g, k - 1, engine)?;
            let m = prev.side();
            let mut cells = Vec::new();
            for (i, z1) in terms {
                if *i >= g.len() {
                    return Err(Error::invalid(format!("map index {i} out of range")));
                }
                let line = aligned_layer(z1, m, "operand")?;
                let d = g.digits()[*i];
                let sym = &g.syms()[*i];
                for c in layer_cells(&prev, axis, line) {
                    let mut e = sym.apply_cell(&c, m);
                    for a in 0..g.dim() {
                        e[a] += d[a] * m;
                    }
                    cells.push(e);
                }
            }
            let full = CellSet::new(g.dim(), g.base(), k, cells)?;
            let target = full.slice_section(axis, z0)?;
            (Some(full), target)
        }
        ExpectedSection::Boxes(boxes) => {
            let cells = box_cells(g.dim() - 1, side, boxes)?;
            (None, CellSet::new(g.dim() - 1, g.base(), k, cells)?)
        }
    };
    let mut actual = fk.slice_section(axis, z0)?;
    let mut single = None;
    if let (SectionMode::Component, Some(full)) = (mode, &expected_full) {
        let lab = label_components(&fk, Adjacency::Foreground, engine);
        let labels: BTreeSet<u32> = full
            .cells()
            .iter()
            .filter_map(|c| fk.position(c))
            .map(|p| lab.labels[p])
            .collect();
        let all_in = full.cells().iter().all(|c| fk.contains(c));
        single = Some(all_in && labels.len() == 1);
        let flat = label_components(&actual, Adjacency::Foreground, engine);
        let hit: BTreeSet<u32> = target
            .cells()
            .iter()
            .filter_map(|c| actual.position(c))
            .map(|p| flat.labels[p])
            .collect();
        actual = actual.filter(|c| actual.position(c).is_some_and(|p| hit.contains(&flat.labels[p])));
    }
    let missing = target.cells().iter().filter(|c| !actual.contains(c)).count();
    let extra = actual.cells().iter().filter(|c| !target.contains(c)).count();
    let status = if missing == 0 && extra == 0 {
        Status::Proved
    } else {
        Status::Refuted
    };
    Ok(Certificate::new(
        CertificateKind::SectionEquation,
        status,
        Witness::Section {
            level: k,
            expected: target.len(),
            actual: actual.len(),
            missing,
            extra,
            single_component: single,
        },
    ))
}

/// Compares the section at `z0` of a resolution-`delta` box cover of `s`
/// with the cover of a lower-dimensional system `expected`, box for box.
///
/// With initial boxes related by `init = init2 × [a, b]` along `axis`, the
/// equality says that exactly the words of the expected system produce
/// boxes touching the section.
pub fn section_equation_cover(
    s: &IFSystem,
    axis: usize,
    z0: &Rational,
    expected: &IFSystem,
    delta: &Rational,
    init: Option<&RBox>,
    expected_init: Option<&RBox>,
    engine: &Engine,
) -> Result<Certificate> {
    if expected.dim() + 1 != s.dim() || axis >= s.dim() {
        return Err(Error::invalid("expected system must have one dimension less"));
    }
    let cover = cover_boxes(s, delta, init, engine)?;
    let reference = cover_boxes(expected, delta, expected_init, engine)?;
    let actual = cover.slice(axis, z0);
    let status = if actual.as_slice() == reference.boxes() {
        Status::Proved
    } else {
        Status::Refuted
    };
    Ok(Certificate::new(
        CertificateKind::SectionEquation,
        status,
        Witness::SectionCover {
            delta: delta.clone(),
            expected: reference.len(),
            actual: actual.len(),
        },
    ))
}
