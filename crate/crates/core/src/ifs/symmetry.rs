use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{RPoint, Rational};

/// An isometry of the unit cube: a signed permutation of the axes.
///
/// Output axis `i` reads input axis `perm[i]`, reflected (`x ↦ 1 - x`) when
/// `flip[i]` is set. Composition is group multiplication; the group has
/// order 8 in the plane and 48 in space.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Symmetry {
    dim: u8,
    perm: [u8; 3],
    flip: [bool; 3],
}

impl Symmetry {
    pub fn identity(dim: usize) -> Self {
        assert!((1..=3).contains(&dim));
        Symmetry {
            dim: dim as u8,
            perm: [0, 1, 2],
            flip: [false; 3],
        }
    }

    pub fn new(perm: &[usize], flip: &[bool]) -> Result<Self> {
        let dim = perm.len();
        if !(1..=3).contains(&dim) || flip.len() != dim {
            return Err(Error::invalid("symmetry needs matching perm/flip of length 1..=3"));
        }
        let mut seen = [false; 3];
        let mut p = [0u8, 1, 2];
        let mut f = [false; 3];
        for i in 0..dim {
            if perm[i] >= dim || seen[perm[i]] {
                return Err(Error::invalid(format!("{perm:?} is not a permutation")));
            }
            seen[perm[i]] = true;
            p[i] = perm[i] as u8;
            f[i] = flip[i];
        }
        Ok(Symmetry {
            dim: dim as u8,
            perm: p,
            flip: f,
        })
    }

    /// Counter-clockwise quarter turn of the unit square.
    pub fn quarter_turn() -> Self {
        // (x, y) ↦ (1 - y, x)
        Symmetry::new(&[1, 0], &[true, false]).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn perm(&self) -> &[u8] {
        &self.perm[..self.dim()]
    }

    pub fn flips(&self) -> &[bool] {
        &self.flip[..self.dim()]
    }

    pub fn is_identity(&self) -> bool {
        *self == Symmetry::identity(self.dim())
    }

    /// Every element of the hyperoctahedral group of this dimension, sorted.
    pub fn all(dim: usize) -> Vec<Symmetry> {
        let mut perms: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..dim {
            perms = perms
                .into_iter()
                .flat_map(|p| {
                    let free: Vec<usize> = (0..dim).filter(|a| !p.contains(a)).collect();
                    free.into_iter().map(move |a| {
                        let mut q = p.clone();
                        q.push(a);
                        q
                    })
                })
                .collect();
        }
        let mut out = Vec::new();
        for p in &perms {
            for mask in 0..1u32 << dim {
                let flip: Vec<bool> = (0..dim).map(|i| mask >> i & 1 == 1).collect();
                out.push(Symmetry::new(p, &flip).unwrap());
            }
        }
        out.sort();
        out
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Symmetry) -> Symmetry {
        assert_eq!(self.dim, other.dim, "symmetry dimension mismatch");
        let mut perm = [0u8, 1, 2];
        let mut flip = [false; 3];
        for i in 0..self.dim() {
            let j = self.perm[i] as usize;
            perm[i] = other.perm[j];
            flip[i] = self.flip[i] ^ other.flip[j];
        }
        Symmetry {
            dim: self.dim,
            perm,
            flip,
        }
    }

    pub fn inverse(&self) -> Symmetry {
        let mut perm = [0u8, 1, 2];
        let mut flip = [false; 3];
        for i in 0..self.dim() {
            let j = self.perm[i] as usize;
            perm[j] = i as u8;
            flip[j] = self.flip[i];
        }
        Symmetry {
            dim: self.dim,
            perm,
            flip,
        }
    }

    pub fn apply(&self, p: &RPoint) -> RPoint {
        let c = p.coords();
        let out = (0..self.dim())
            .map(|i| {
                let x = &c[self.perm[i] as usize];
                if self.flip[i] {
                    Rational::one() - x
                } else {
                    x.clone()
                }
            })
            .collect();
        RPoint::new(out).expect("dimension checked")
    }

    /// The linear part applied to a vector (no cube re-centering).
    pub fn apply_linear(&self, v: &RPoint) -> RPoint {
        let c = v.coords();
        let out = (0..self.dim())
            .map(|i| {
                let x = &c[self.perm[i] as usize];
                if self.flip[i] {
                    -x
                } else {
                    x.clone()
                }
            })
            .collect();
        RPoint::new(out).expect("dimension checked")
    }

    /// The translation that keeps the unit cube fixed: `apply(0)`.
    pub fn offset(&self) -> RPoint {
        RPoint::new(
            (0..self.dim())
                .map(|i| if self.flip[i] { Rational::one() } else { Rational::zero() })
                .collect(),
        )
        .unwrap()
    }

    /// Action on integer cell indices of a grid with `side` cells per axis.
    pub fn apply_cell(&self, c: &[i64; 3], side: i64) -> [i64; 3] {
        let mut out = [0i64; 3];
        for i in 0..self.dim() {
            let x = c[self.perm[i] as usize];
            out[i] = if self.flip[i] { side - 1 - x } else { x };
        }
        out
    }
}

impl std::fmt::Debug for Symmetry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "σ[")?;
        for i in 0..self.dim() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}{}", if self.flip[i] { "-" } else { "+" }, self.perm[i])?;
        }
        write!(f, "]")
    }
}
