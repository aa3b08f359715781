use super::{in_window, pow_side, scale_cell, window_cells, window_volume, Cell, CellSet};
use crate::error::{Error, Result};
use crate::exec::{sort_dedup, Engine};
use crate::numeric::Rational;

impl CellSet {
    /// Cells reduced modulo the unit period `n^k` on every axis.
    fn residues(&self) -> Vec<Cell> {
        let n = self.side();
        let mut r: Vec<Cell> = self
            .cells
            .iter()
            .map(|c| {
                let mut o = [0; 3];
                for a in 0..self.dim {
                    o[a] = c[a].rem_euclid(n);
                }
                o
            })
            .collect();
        r.sort_unstable();
        r.dedup();
        r
    }

    fn tiled(&self, m: &Cell, engine: &Engine) -> Result<Vec<Cell>> {
        if self.torus.is_some() {
            return Err(Error::invalid("set is already periodic"));
        }
        if (0..self.dim).any(|a| m[a] < 1) {
            return Err(Error::invalid(format!("period {m:?} must be positive")));
        }
        let n = self.side();
        let res = self.residues();
        let copies = window_volume(self.dim, &[0; 3], m);
        engine.check("periodic extension", copies * res.len() as u128)?;
        let mut out = Vec::with_capacity((copies as usize) * res.len());
        for j in window_cells(self.dim, &[0; 3], m) {
            for r in &res {
                let mut c = *r;
                for a in 0..self.dim {
                    c[a] += j[a] * n;
                }
                out.push(c);
            }
        }
        sort_dedup(engine.exec, &mut out);
        Ok(out)
    }

    /// `(F_k + Z^d) ∩ [0, m)` as a finite set with an explicit window.
    pub fn periodic_window(&self, m: Cell, engine: &Engine) -> Result<CellSet> {
        let cells = self.tiled(&m, engine)?;
        Ok(CellSet {
            cells,
            torus: None,
            window: Some(([0; 3], scale_cell(&m, self.side(), self.dim))),
            ..self.clone()
        })
    }

    /// `F_k + Z^d` on the torus `R^d / m Z^d`.
    pub fn to_torus(&self, m: Cell, engine: &Engine) -> Result<CellSet> {
        let cells = self.tiled(&m, engine)?;
        let mut period = [0; 3];
        period[..self.dim].copy_from_slice(&m[..self.dim]);
        Ok(CellSet {
            cells,
            torus: Some(period),
            window: None,
            ..self.clone()
        })
    }

    /// Every cell of the torus or window that is not in the set.
    pub fn complement_cells(&self, engine: &Engine) -> Result<CellSet> {
        let (lo, hi) = match (self.torus_cells(), self.window) {
            (Some(p), _) => ([0; 3], p),
            (None, Some(w)) => w,
            (None, None) => {
                return Err(Error::invalid(
                    "complement of an unbounded set needs a torus period or a window",
                ))
            }
        };
        engine.check("complement", window_volume(self.dim, &lo, &hi))?;
        let mut it = self.cells.iter().peekable();
        let mut out = Vec::new();
        for c in window_cells(self.dim, &lo, &hi) {
            while it.peek().is_some_and(|x| **x < c) {
                it.next();
            }
            if it.peek() != Some(&&c) {
                out.push(c);
            }
        }
        Ok(CellSet {
            cells: out,
            ..self.clone()
        })
    }

    /// Cells whose closed extent along `axis` contains `z0`, with that axis
    /// removed. On a grid plane both neighbouring layers count.
    pub fn slice_section(&self, axis: usize, z0: &Rational) -> Result<CellSet> {
        self.check_axis(axis)?;
        let n = self.side();
        let t = z0 * &Rational::int(n);
        let mut layers = vec![t.floor_i64().ok_or_else(|| Error::invalid(format!("section height {z0} out of range")))?];
        if t.is_integer() {
            layers.insert(0, layers[0] - 1);
        }
        if let Some(p) = self.torus_cells() {
            for l in &mut layers {
                *l = l.rem_euclid(p[axis]);
            }
        }
        let cells = self
            .cells
            .iter()
            .filter(|c| layers.contains(&c[axis]))
            .map(|c| drop_axis(c, axis))
            .collect();
        self.dropped(axis, cells)
    }

    /// Image under deleting the coordinate `axis`.
    pub fn project_cells(&self, axis: usize) -> Result<CellSet> {
        self.check_axis(axis)?;
        let cells = self.cells.iter().map(|c| drop_axis(c, axis)).collect();
        self.dropped(axis, cells)
    }

    fn check_axis(&self, axis: usize) -> Result<()> {
        if self.dim < 2 || axis >= self.dim {
            return Err(Error::invalid(format!(
                "cannot drop axis {axis} of a {}-dimensional set",
                self.dim
            )));
        }
        Ok(())
    }

    fn dropped(&self, axis: usize, cells: Vec<Cell>) -> Result<CellSet> {
        let mut out = CellSet::new(self.dim - 1, self.base, self.level, cells)?;
        out.torus = self.torus.map(|p| drop_axis(&p, axis));
        out.window = self.window.map(|(lo, hi)| {
            let mut h = drop_axis(&hi, axis);
            h[self.dim - 1] = 0;
            (drop_axis(&lo, axis), h)
        });
        Ok(out)
    }

    /// Cells moved by `t` cells, keeping tags.
    pub fn translate(&self, t: &Cell) -> CellSet {
        let cells = self
            .cells
            .iter()
            .map(|c| {
                let mut o = *c;
                for a in 0..self.dim {
                    o[a] += t[a];
                }
                o
            })
            .collect();
        CellSet {
            cells,
            torus: None,
            window: None,
            ..self.clone()
        }
    }

    /// The same region at level `k + j`: each cell split into `n^j` per axis.
    pub fn refine(&self, j: u32, engine: &Engine) -> Result<CellSet> {
        let f = pow_side(self.base, j)?;
        pow_side(self.base, self.level + j)?;
        let per = (f as u128).pow(self.dim as u32);
        engine.check("refinement", per * self.len() as u128)?;
        let mut hi = [1; 3];
        hi[..self.dim].fill(f);
        let sub = window_cells(self.dim, &[0; 3], &hi);
        let mut cells = Vec::with_capacity((per as usize) * self.len());
        for c in &self.cells {
            let base = scale_cell(c, f, self.dim);
            for s in &sub {
                cells.push([base[0] + s[0], base[1] + s[1], base[2] + s[2]]);
            }
        }
        sort_dedup(engine.exec, &mut cells);
        Ok(CellSet {
            cells,
            level: self.level + j,
            torus: self.torus,
            window: self.window.map(|(lo, hi)| (scale_cell(&lo, f, self.dim), scale_cell(&hi, f, self.dim))),
            ..self.clone()
        })
    }

    /// Cells inside the half-open cell window `[lo, hi)`.
    pub fn restrict(&self, lo: &Cell, hi: &Cell) -> CellSet {
        let mut out = self.filter(|c| in_window(c, lo, hi, self.dim));
        out.torus = None;
        out.window = Some((*lo, *hi));
        out
    }
}

pub(crate) fn drop_axis(c: &Cell, axis: usize) -> Cell {
    let mut out = [0; 3];
    let mut j = 0;
    for (a, &x) in c.iter().enumerate() {
        if a != axis {
            out[j] = x;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cellset::{iterate_grid, iterate_hull};
    use crate::ifs::{e1, e4, e4_projection, f3, GridIFS};
    use crate::numeric::q;

    fn eng() -> Engine {
        Engine::default()
    }

    fn full2() -> GridIFS {
        GridIFS::new(2, 2, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]).unwrap()
    }

    fn set(g: &GridIFS, k: u32) -> CellSet {
        iterate_grid(g, k, &eng()).unwrap()
    }

    #[test]
    fn periodic_window_counts() {
        let w = set(&e4_projection(), 1).periodic_window([2, 2, 0], &eng()).unwrap();
        assert_eq!(w.len(), 20);
        let f = set(&full2(), 2).periodic_window([2, 3, 0], &eng()).unwrap();
        assert_eq!(f.len(), 4 * 4 * 6);
        let t = set(&f3(), 1).to_torus([1, 1, 0], &eng()).unwrap();
        assert_eq!(t.len(), 10);
    }

    #[test]
    fn complements() {
        let full = set(&full2(), 2).to_torus([1, 1, 0], &eng()).unwrap();
        assert!(full.complement_cells(&eng()).unwrap().is_empty());
        let c = set(&e1(), 1).to_torus([1, 1, 0], &eng()).unwrap().complement_cells(&eng()).unwrap();
        assert_eq!(c.len(), 8);
        assert!(c.cells().iter().all(|x| x[0] == 1 || x[0] == 2));
        let c = set(&e4_projection(), 1)
            .to_torus([1, 1, 0], &eng())
            .unwrap()
            .complement_cells(&eng())
            .unwrap();
        assert_eq!(c.cells(), &[[0, 1, 0], [1, 1, 0], [1, 2, 0], [2, 2, 0]]);
        assert!(set(&e1(), 1).complement_cells(&eng()).is_err());
    }

    #[test]
    fn sections_of_the_comb_cube() {
        let s = set(&e4(), 1);
        let top = s.slice_section(2, &q(1, 1)).unwrap();
        assert_eq!(top.cells(), &[[0, 0, 0], [1, 0, 0], [2, 0, 0]]);
        let bottom = s.slice_section(2, &q(0, 1)).unwrap();
        assert_eq!(bottom.len(), 6);
        assert!(bottom.cells().iter().all(|c| c[0] == 0 || c[0] == 2));
        assert!(s.slice_section(2, &q(5, 1)).unwrap().is_empty());
    }

    #[test]
    fn projections_of_the_comb_cube() {
        let s = set(&e4(), 1);
        let yz = s.project_cells(0).unwrap();
        let want: Vec<Cell> = e4_projection().digits().to_vec();
        let mut want = want;
        want.sort();
        assert_eq!(yz.cells(), &want[..]);
        assert_eq!(s.project_cells(2).unwrap().len(), 7);
        let cube = GridIFS::new(
            3,
            2,
            (0..8).map(|i| vec![i & 1, i >> 1 & 1, i >> 2 & 1]).collect(),
        )
        .unwrap();
        assert_eq!(set(&cube, 2).project_cells(1).unwrap().len(), 16);
    }

    #[test]
    fn slice_and_project_commute_with_periodic_extension() {
        let s = iterate_hull(&e4(), 2, &eng()).unwrap();
        let m = [2, 1, 1];
        let a = s.to_torus(m, &eng()).unwrap().project_cells(0).unwrap();
        let b = s.project_cells(0).unwrap().to_torus([1, 1, 0], &eng()).unwrap();
        assert_eq!(a, b);
        let a = s.to_torus(m, &eng()).unwrap().slice_section(2, &q(1, 3)).unwrap();
        let b = s.slice_section(2, &q(1, 3)).unwrap().to_torus([2, 1, 0], &eng()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn refine_keeps_region() {
        let s = set(&e1(), 1).refine(1, &eng()).unwrap();
        assert_eq!(s.level(), 2);
        assert_eq!(s.len(), 8 * 16);
    }
}
