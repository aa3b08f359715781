use serde::Serialize;

use super::label::{label_components, Adjacency};
use crate::cellset::iterate_region;
use crate::error::{Error, Result};
use crate::exec::Engine;
use crate::ifs::GridIFS;
use crate::numeric::{RBox, RPoint, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub level: u32,
    /// Cells of `F_k` lying inside `V`.
    pub cells: usize,
    /// Components of those cells.
    pub components: usize,
    /// Components with a cell meeting the open ball `B(x0, r)`.
    pub near: usize,
}

/// Counts the components of `F_k ∩ V` (the cells inside `V`) that come
/// within `r` of `x0`. Unbounded growth in `k` points to a failure of local
/// connectedness at `x0`.
pub fn local_component_census(
    g: &GridIFS,
    x0: &RPoint,
    v: &RBox,
    r: &Rational,
    k: u32,
    engine: &Engine,
) -> Result<Census> {
    if !v.contains_point(x0) {
        return Err(Error::invalid(format!("{x0} is not in the census box")));
    }
    if !r.is_positive() {
        return Err(Error::invalid("census radius must be positive"));
    }
    let cells = iterate_region(g, k, v, engine)?.cells_inside(v);
    let lab = label_components(&cells, Adjacency::Foreground, engine);
    let r2 = r * r;
    let mut near = vec![false; lab.count];
    for (c, &l) in cells.cells().iter().zip(&lab.labels) {
        if !near[l as usize] && cells.cell_box(c).dist2_to_point(x0) < r2 {
            near[l as usize] = true;
        }
    }
    Ok(Census {
        level: k,
        cells: cells.len(),
        components: lab.count,
        near: near.iter().filter(|&&b| b).count(),
    })
}
