use rustc_hash::FxHashMap;

use super::{window_volume, Cell};

/// Position lookup for a cell list: a dense slot array over the bounding box
/// when at least half of it is occupied, a hash map otherwise.
#[derive(Clone, Debug)]
pub struct CellIndex {
    inner: Inner,
}

#[derive(Clone, Debug)]
enum Inner {
    Dense {
        lo: Cell,
        ext: Cell,
        slots: Vec<u32>,
    },
    Sparse(FxHashMap<Cell, u32>),
}

const EMPTY: u32 = u32::MAX;

impl CellIndex {
    pub fn build(cells: &[Cell], dim: usize) -> Self {
        assert!(cells.len() < EMPTY as usize, "too many cells for a u32 index");
        if let Some((lo, hi)) = bounds(cells, dim) {
            let mut ext = [1i64; 3];
            for a in 0..dim {
                ext[a] = hi[a] - lo[a] + 1;
            }
            let mut top = [0; 3];
            for a in 0..3 {
                top[a] = lo[a] + ext[a];
            }
            let volume = window_volume(3, &lo, &top);
            if volume <= 2 * cells.len() as u128 {
                let mut slots = vec![EMPTY; volume as usize];
                for (i, c) in cells.iter().enumerate() {
                    slots[offset(c, &lo, &ext)] = i as u32;
                }
                return CellIndex {
                    inner: Inner::Dense { lo, ext, slots },
                };
            }
        }
        let mut map = FxHashMap::default();
        map.reserve(cells.len());
        for (i, c) in cells.iter().enumerate() {
            map.insert(*c, i as u32);
        }
        CellIndex {
            inner: Inner::Sparse(map),
        }
    }

    pub fn get(&self, c: &Cell) -> Option<usize> {
        match &self.inner {
            Inner::Dense { lo, ext, slots } => {
                if (0..3).any(|a| c[a] < lo[a] || c[a] >= lo[a] + ext[a]) {
                    return None;
                }
                let s = slots[offset(c, lo, ext)];
                (s != EMPTY).then_some(s as usize)
            }
            Inner::Sparse(map) => map.get(c).map(|&i| i as usize),
        }
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.inner, Inner::Dense { .. })
    }
}

fn offset(c: &Cell, lo: &Cell, ext: &Cell) -> usize {
    (((c[0] - lo[0]) * ext[1] + (c[1] - lo[1])) * ext[2] + (c[2] - lo[2])) as usize
}

fn bounds(cells: &[Cell], dim: usize) -> Option<(Cell, Cell)> {
    let mut lo = *cells.first()?;
    let mut hi = lo;
    for c in cells {
        for a in 0..dim {
            lo[a] = lo[a].min(c[a]);
            hi[a] = hi[a].max(c[a]);
        }
    }
    Some((lo, hi))
}
