//! Cell approximations on the `n^-k` grid, periodic extensions, box covers
//! for general systems, sections and projections.

mod build;
mod cover;
mod dump;
mod index;
mod ops;

pub use build::{iterate_from, iterate_grid, iterate_hull, iterate_region, pow_side};
pub use cover::{cover_boxes, cover_level, BoxCover};
pub use dump::parse_dump;
pub use index::CellIndex;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{RBox, RPoint, Rational};

/// Integer cell coordinates; unused trailing axes are zero.
pub type Cell = [i64; 3];

/// A finite set of closed grid cells `Π [c_i / n^k, (c_i + 1) / n^k]`.
///
/// `torus` holds a period `m` (in unit lengths): coordinates then live in
/// `[0, m_i n^k)` and opposite faces are identified. `window` is a half-open
/// box of cell coordinates that bounds the set when it represents a finite
/// piece of an unbounded set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellSet {
    dim: usize,
    base: i64,
    level: u32,
    cells: Vec<Cell>,
    torus: Option<Cell>,
    window: Option<(Cell, Cell)>,
}

impl CellSet {
    /// Sorts and deduplicates `cells`.
    pub fn new(dim: usize, base: i64, level: u32, mut cells: Vec<Cell>) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::invalid(format!("cell dimension {dim} outside 1..=3")));
        }
        if base < 2 {
            return Err(Error::invalid(format!("cell base {base} < 2")));
        }
        pow_side(base, level)?;
        if let Some(c) = cells.iter().find(|c| c[dim..].iter().any(|&x| x != 0)) {
            return Err(Error::invalid(format!("cell {c:?} has nonzero unused axes")));
        }
        cells.sort_unstable();
        cells.dedup();
        Ok(CellSet {
            dim,
            base,
            level,
            cells,
            torus: None,
            window: None,
        })
    }

    pub(crate) fn from_sorted(dim: usize, base: i64, level: u32, cells: Vec<Cell>) -> Self {
        debug_assert!(cells.windows(2).all(|w| w[0] < w[1]));
        CellSet {
            dim,
            base,
            level,
            cells,
            torus: None,
            window: None,
        }
    }

    /// Every cell of a box of whole unit lengths, `[lo, hi)` in units.
    pub fn full(dim: usize, base: i64, level: u32, lo: Cell, hi: Cell) -> Result<Self> {
        let n = pow_side(base, level)?;
        let (clo, chi) = (scale_cell(&lo, n, dim), scale_cell(&hi, n, dim));
        let mut s = CellSet::new(dim, base, level, Vec::new())?;
        s.cells = window_cells(dim, &clo, &chi);
        s.window = Some((clo, chi));
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn base(&self) -> i64 {
        self.base
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Cells per unit length, `n^k`.
    pub fn side(&self) -> i64 {
        pow_side(self.base, self.level).expect("checked at construction")
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn torus(&self) -> Option<Cell> {
        self.torus
    }

    /// Period of the torus in cells, `m n^k`.
    pub fn torus_cells(&self) -> Option<Cell> {
        self.torus.map(|m| scale_cell(&m, self.side(), self.dim))
    }

    pub fn window(&self) -> Option<(Cell, Cell)> {
        self.window
    }

    pub fn contains(&self, c: &Cell) -> bool {
        self.cells.binary_search(c).is_ok()
    }

    pub fn position(&self, c: &Cell) -> Option<usize> {
        self.cells.binary_search(c).ok()
    }

    pub fn index(&self) -> CellIndex {
        CellIndex::build(&self.cells, self.dim)
    }

    /// Component-wise `[min, max]` of the cell coordinates.
    pub fn bounds(&self) -> Option<(Cell, Cell)> {
        let first = self.cells.first()?;
        let mut lo = *first;
        let mut hi = *first;
        for c in &self.cells {
            for a in 0..self.dim {
                lo[a] = lo[a].min(c[a]);
                hi[a] = hi[a].max(c[a]);
            }
        }
        Some((lo, hi))
    }

    /// The closed box of a cell.
    pub fn cell_box(&self, c: &Cell) -> RBox {
        let n = self.side();
        let lo = RPoint::new((0..self.dim).map(|a| Rational::new(c[a], n)).collect()).unwrap();
        let hi = RPoint::new((0..self.dim).map(|a| Rational::new(c[a] + 1, n)).collect()).unwrap();
        RBox::new(lo, hi).unwrap()
    }

    pub fn cell_center(&self, c: &Cell) -> RPoint {
        let n2 = 2 * self.side();
        RPoint::new((0..self.dim).map(|a| Rational::new(2 * c[a] + 1, n2)).collect()).unwrap()
    }

    /// Same cells marked as a finite piece inside `window` (cell coordinates,
    /// half open).
    pub fn with_window(mut self, lo: Cell, hi: Cell) -> Result<Self> {
        if let Some(c) = self.cells.iter().find(|c| !in_window(c, &lo, &hi, self.dim)) {
            return Err(Error::invalid(format!("cell {c:?} outside window")));
        }
        self.window = Some((lo, hi));
        self.torus = None;
        Ok(self)
    }

    /// Keeps the cells accepted by `keep`, preserving torus and window.
    pub fn filter(&self, keep: impl Fn(&Cell) -> bool) -> CellSet {
        CellSet {
            cells: self.cells.iter().filter(|c| keep(c)).copied().collect(),
            ..self.clone()
        }
    }

    /// Cells whose closed box lies inside `b`.
    pub fn cells_inside(&self, b: &RBox) -> CellSet {
        let (lo, hi) = box_cell_range(b, self.side(), self.dim);
        self.filter(|c| in_window(c, &lo, &hi, self.dim))
    }

    /// Set union; both operands must share dimension, base and level.
    pub fn union(&self, other: &CellSet) -> Result<CellSet> {
        self.same_grid(other)?;
        let mut cells = self.cells.clone();
        cells.extend_from_slice(&other.cells);
        cells.sort_unstable();
        cells.dedup();
        Ok(CellSet {
            cells,
            ..self.clone()
        })
    }

    /// True when both sets hold the same cells on the same grid, ignoring
    /// torus and window tags.
    pub fn same_cells(&self, other: &CellSet) -> bool {
        self.dim == other.dim
            && self.base == other.base
            && self.level == other.level
            && self.cells == other.cells
    }

    pub(crate) fn same_grid(&self, other: &CellSet) -> Result<()> {
        if self.dim != other.dim || self.base != other.base || self.level != other.level {
            return Err(Error::invalid("cell sets live on different grids"));
        }
        Ok(())
    }
}

pub(crate) fn scale_cell(c: &Cell, n: i64, dim: usize) -> Cell {
    let mut out = [0; 3];
    for a in 0..dim {
        out[a] = c[a] * n;
    }
    out
}

pub(crate) fn in_window(c: &Cell, lo: &Cell, hi: &Cell, dim: usize) -> bool {
    (0..dim).all(|a| lo[a] <= c[a] && c[a] < hi[a])
}

/// Cells of `[lo, hi)` in lexicographic order.
pub(crate) fn window_cells(dim: usize, lo: &Cell, hi: &Cell) -> Vec<Cell> {
    let mut out = Vec::new();
    let ext = |a: usize| if a < dim { (lo[a], hi[a]) } else { (0, 1) };
    let (x, y, z) = (ext(0), ext(1), ext(2));
    for i in x.0..x.1 {
        for j in y.0..y.1 {
            for k in z.0..z.1 {
                out.push([i, j, k]);
            }
        }
    }
    out
}

pub(crate) fn window_volume(dim: usize, lo: &Cell, hi: &Cell) -> u128 {
    (0..dim).map(|a| (hi[a] - lo[a]).max(0) as u128).product()
}

/// Half-open range of cells whose closed boxes lie inside `b`.
fn box_cell_range(b: &RBox, n: i64, dim: usize) -> (Cell, Cell) {
    let mut lo = [0; 3];
    let mut hi = [1; 3];
    let nr = Rational::int(n);
    for a in 0..dim {
        lo[a] = (b.lo().coord(a) * &nr).ceil().try_into().expect("cell range");
        hi[a] = (b.hi().coord(a) * &nr).floor_i64().expect("cell range");
    }
    (lo, hi)
}
