use std::collections::VecDeque;

use super::label::Adjacency;
use crate::cellset::{in_window, Cell, CellSet};
use crate::error::{Error, Result};
use crate::numeric::{RPoint, Rational};

/// A bottom-to-top path through the cells of the window `[lo, hi)` that
/// avoid `a ∪ b`, as a polyline of cell centres closed off by the midpoints
/// of the first and last cells' outer faces.
///
/// Requires closed cells of `a` and `b` to be disjoint, `a` to avoid the
/// rightmost column and `b` the leftmost one; a path then always exists.
pub fn crossing_path(
    a: &CellSet,
    b: &CellSet,
    window: (Cell, Cell),
) -> Result<Option<Vec<RPoint>>> {
    a.same_grid(b)?;
    if a.dim() != 2 {
        return Err(Error::invalid("crossing paths are planar"));
    }
    let (lo, hi) = window;
    if hi[0] <= lo[0] || hi[1] <= lo[1] {
        return Err(Error::invalid("empty window"));
    }
    for (name, s) in [("A", a), ("B", b)] {
        if let Some(c) = s.cells().iter().find(|c| !in_window(c, &lo, &hi, 2)) {
            return Err(Error::invalid(format!("{name} cell {c:?} outside the window")));
        }
    }
    if let Some(c) = a.cells().iter().find(|c| c[0] == hi[0] - 1) {
        return Err(Error::invalid(format!("A cell {c:?} touches the right edge")));
    }
    if let Some(c) = b.cells().iter().find(|c| c[0] == lo[0]) {
        return Err(Error::invalid(format!("B cell {c:?} touches the left edge")));
    }
    let bidx = b.index();
    for c in a.cells() {
        for s in Adjacency::Foreground.steps(2).iter().chain(std::iter::once(&[0, 0, 0])) {
            let nb = [c[0] + s[0], c[1] + s[1], 0];
            if bidx.get(&nb).is_some() {
                return Err(Error::invalid(format!("A cell {c:?} meets B cell {nb:?}")));
            }
        }
    }
    let (aidx, w, h) = (a.index(), (hi[0] - lo[0]) as usize, (hi[1] - lo[1]) as usize);
    let free = |c: &Cell| aidx.get(c).is_none() && bidx.get(c).is_none();
    let at = |c: &Cell| (c[1] - lo[1]) as usize * w + (c[0] - lo[0]) as usize;
    let mut prev: Vec<Option<usize>> = vec![None; w * h];
    let mut seen = vec![false; w * h];
    let mut queue = VecDeque::new();
    for x in lo[0]..hi[0] {
        let c = [x, lo[1], 0];
        if free(&c) {
            seen[at(&c)] = true;
            queue.push_back(c);
        }
    }
    let steps = Adjacency::Background.steps(2);
    let mut end = None;
    while let Some(c) = queue.pop_front() {
        if c[1] == hi[1] - 1 {
            end = Some(c);
            break;
        }
        for s in &steps {
            let nb = [c[0] + s[0], c[1] + s[1], 0];
            if in_window(&nb, &lo, &hi, 2) && free(&nb) && !seen[at(&nb)] {
                seen[at(&nb)] = true;
                prev[at(&nb)] = Some(at(&c));
                queue.push_back(nb);
            }
        }
    }
    let Some(end) = end else { return Ok(None) };
    let mut cells = vec![end];
    let mut cur = at(&end);
    while let Some(p) = prev[cur] {
        cells.push([lo[0] + (p % w) as i64, lo[1] + (p / w) as i64, 0]);
        cur = p;
    }
    cells.reverse();
    let n2 = 2 * a.side();
    let mid = |c: &Cell| Rational::new(2 * c[0] + 1, n2);
    let mut pts = vec![RPoint::new(vec![mid(&cells[0]), Rational::new(2 * lo[1], n2)]).unwrap()];
    pts.extend(cells.iter().map(|c| a.cell_center(c)));
    let last = cells.last().unwrap();
    pts.push(RPoint::new(vec![mid(last), Rational::new(2 * hi[1], n2)]).unwrap());
    Ok(Some(pts))
}

/// A left-to-right path through the unit square avoiding the closed cells of
/// `f`, entering at `(0, y0)` and leaving at `(1, y0)`: face-adjacent free
/// cells from the cell row containing `y0`, back to the same row on the
/// right edge. Returns the cells and the polyline through their centres.
///
/// The polyline crosses between free cells at face midpoints, which no
/// occupied closed cell contains.
pub fn channel_path(f: &CellSet, y0: &Rational) -> Result<Option<(Vec<Cell>, Vec<RPoint>)>> {
    if f.dim() != 2 {
        return Err(Error::invalid("channel paths are planar"));
    }
    let n = f.side();
    let t = y0 * &Rational::int(n);
    if t.is_integer() || !y0.is_positive() || y0 >= &Rational::one() {
        return Err(Error::invalid(format!("height {y0} must lie strictly inside a cell row")));
    }
    let row = t.floor_i64().expect("inside the unit interval");
    let idx = f.index();
    let w = n as usize;
    let at = |c: &Cell| c[1] as usize * w + c[0] as usize;
    let (start, goal) = ([0, row, 0], [n - 1, row, 0]);
    if idx.get(&start).is_some() || idx.get(&goal).is_some() {
        return Ok(None);
    }
    let mut prev: Vec<Option<usize>> = vec![None; w * w];
    let mut seen = vec![false; w * w];
    seen[at(&start)] = true;
    let mut queue = VecDeque::from([start]);
    let steps = Adjacency::Background.steps(2);
    let (lo, hi) = ([0; 3], [n, n, 0]);
    let mut found = false;
    while let Some(c) = queue.pop_front() {
        if c == goal {
            found = true;
            break;
        }
        for s in &steps {
            let nb = [c[0] + s[0], c[1] + s[1], 0];
            if in_window(&nb, &lo, &hi, 2) && idx.get(&nb).is_none() && !seen[at(&nb)] {
                seen[at(&nb)] = true;
                prev[at(&nb)] = Some(at(&c));
                queue.push_back(nb);
            }
        }
    }
    if !found {
        return Ok(None);
    }
    let mut cells = vec![goal];
    let mut cur = at(&goal);
    while let Some(p) = prev[cur] {
        cells.push([(p % w) as i64, (p / w) as i64, 0]);
        cur = p;
    }
    cells.reverse();
    let mut pts = vec![RPoint::new(vec![Rational::zero(), y0.clone()])?];
    pts.extend(cells.iter().map(|c| f.cell_center(c)));
    pts.push(RPoint::new(vec![Rational::one(), y0.clone()])?);
    Ok(Some((cells, pts)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::q;

    fn set(cells: &[(i64, i64)]) -> CellSet {
        CellSet::new(2, 3, 1, cells.iter().map(|&(x, y)| [x, y, 0]).collect()).unwrap()
    }

    #[test]
    fn between_two_columns() {
        let a = set(&[(0, 0), (0, 1), (0, 2)]);
        let b = set(&[(2, 0), (2, 1), (2, 2)]);
        let p = crossing_path(&a, &b, ([0; 3], [3, 3, 0])).unwrap().unwrap();
        assert!(p.iter().all(|x| x.coord(0) == &q(1, 2)));
        assert_eq!(p.first().unwrap().coord(1), &q(0, 1));
        assert_eq!(p.last().unwrap().coord(1), &q(1, 1));
        assert_eq!(p.len(), 5);
    }

    #[test]
    fn empty_obstacles() {
        let p = crossing_path(&set(&[]), &set(&[]), ([0; 3], [3, 3, 0])).unwrap().unwrap();
        assert_eq!(p.len(), 5);
    }

    #[test]
    fn channel_around_a_block() {
        let f = set(&[(1, 1)]);
        let (cells, pts) = channel_path(&f, &q(1, 2)).unwrap().unwrap();
        assert_eq!(cells.first(), Some(&[0, 1, 0]));
        assert_eq!(cells.last(), Some(&[2, 1, 0]));
        assert_eq!(cells.len(), 5);
        assert_eq!(pts.len(), 7);
        let wall = set(&[(1, 0), (1, 1), (1, 2)]);
        assert!(channel_path(&wall, &q(1, 2)).unwrap().is_none());
        assert!(channel_path(&f, &q(1, 3)).is_err());
    }

    #[test]
    fn hypothesis_violations() {
        let w = ([0; 3], [3, 3, 0]);
        assert!(crossing_path(&set(&[(2, 0)]), &set(&[]), w).is_err());
        assert!(crossing_path(&set(&[]), &set(&[(0, 1)]), w).is_err());
        assert!(crossing_path(&set(&[(0, 0)]), &set(&[(1, 1)]), w).is_err());
        assert!(crossing_path(&set(&[(5, 0)]), &set(&[]), w).is_err());
    }
}
