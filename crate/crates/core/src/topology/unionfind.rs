//! Disjoint-set forests: a plain one and one that tracks integer offsets
//! between members for lifting torus components to the plane.

use crate::cellset::Cell;

#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        assert!(n < u32::MAX as usize);
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = p;
        }
        x
    }

    /// Returns true when two classes were merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        true
    }

    /// Dense labels `0..count` numbered by first appearance.
    pub fn labels(&mut self) -> (Vec<u32>, usize) {
        let n = self.len();
        let mut map = vec![u32::MAX; n];
        let mut labels = Vec::with_capacity(n);
        let mut next = 0u32;
        for i in 0..n {
            let r = self.find(i);
            if map[r] == u32::MAX {
                map[r] = next;
                next += 1;
            }
            labels.push(map[r]);
        }
        (labels, next as usize)
    }
}

/// Union-find where each node carries a potential `φ ∈ Z^3`, stored relative
/// to its parent. Joining `a` and `b` asserts `φ(b) - φ(a) = w`; a
/// contradictory assertion inside one class yields a nonzero cycle offset.
#[derive(Clone, Debug)]
pub struct OffsetUnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
    off: Vec<Cell>,
}

fn add(a: &Cell, b: &Cell) -> Cell {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn sub(a: &Cell, b: &Cell) -> Cell {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

impl OffsetUnionFind {
    pub fn new(n: usize) -> Self {
        assert!(n < u32::MAX as usize);
        OffsetUnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            off: vec![[0; 3]; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Root of `x` and `φ(x) - φ(root)`.
    pub fn find(&mut self, x: usize) -> (usize, Cell) {
        let mut path = Vec::new();
        let mut r = x;
        while self.parent[r] as usize != r {
            path.push(r);
            r = self.parent[r] as usize;
        }
        // Rewrite the path from the top so each node points at the root.
        let mut acc = [0; 3];
        for &node in path.iter().rev() {
            acc = add(&acc, &self.off[node]);
            self.off[node] = acc;
            self.parent[node] = r as u32;
        }
        (r, if path.is_empty() { [0; 3] } else { self.off[x] })
    }

    /// Asserts `φ(b) - φ(a) = w`. Returns the discrepancy when `a` and `b`
    /// are already joined with a different offset.
    pub fn union(&mut self, a: usize, b: usize, w: &Cell) -> Option<Cell> {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            let have = sub(&pb, &pa);
            return (have != *w).then(|| sub(w, &have));
        }
        // φ(rb) - φ(ra) = pa + w - pb
        let d = sub(&add(&pa, w), &pb);
        if self.size[ra] >= self.size[rb] {
            self.parent[rb] = ra as u32;
            self.off[rb] = d;
            self.size[ra] += self.size[rb];
        } else {
            self.parent[ra] = rb as u32;
            self.off[ra] = [-d[0], -d[1], -d[2]];
            self.size[rb] += self.size[ra];
        }
        None
    }
}
