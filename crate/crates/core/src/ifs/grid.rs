use serde::{Deserialize, Serialize};

use super::{AffineMap, IFSystem, Symmetry};
use crate::error::{Error, Result};
use crate::numeric::{RBox, RPoint, Rational};

/// Integer cell coordinates; unused trailing axes are zero.
pub type Digit = [i64; 3];

/// Grid digit system `{ x ↦ (σ_d(x) + d) / n }`.
///
/// Digits may leave `{0..n-1}^dim`, which admits systems whose pieces spill
/// outside the unit cube. With every digit in range and no symmetries the
/// attractor is a fractal square (or cube).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridIFS {
    dim: usize,
    base: i64,
    digits: Vec<Digit>,
    syms: Vec<Symmetry>,
}

impl GridIFS {
    pub fn new(dim: usize, base: i64, digits: Vec<Vec<i64>>) -> Result<Self> {
        let syms = vec![Symmetry::identity(dim.clamp(1, 3)); digits.len()];
        GridIFS::with_symmetries(dim, base, digits, syms)
    }

    pub fn with_symmetries(
        dim: usize,
        base: i64,
        digits: Vec<Vec<i64>>,
        syms: Vec<Symmetry>,
    ) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::invalid(format!("grid dimension {dim} outside 1..=3")));
        }
        if base < 2 {
            return Err(Error::invalid(format!("grid base {base} < 2")));
        }
        if digits.len() < 2 {
            return Err(Error::invalid("a grid system needs at least two digits"));
        }
        if syms.len() != digits.len() {
            return Err(Error::invalid("one symmetry per digit required"));
        }
        let mut packed = Vec::with_capacity(digits.len());
        for d in &digits {
            if d.len() != dim {
                return Err(Error::invalid(format!("digit {d:?} is not of dimension {dim}")));
            }
            let mut p = [0i64; 3];
            p[..dim].copy_from_slice(d);
            packed.push(p);
        }
        if let Some(s) = syms.iter().find(|s| s.dim() != dim) {
            return Err(Error::invalid(format!("symmetry {s:?} has the wrong dimension")));
        }
        Ok(GridIFS {
            dim,
            base,
            digits: packed,
            syms,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn base(&self) -> i64 {
        self.base
    }

    pub fn digits(&self) -> &[Digit] {
        &self.digits
    }

    pub fn syms(&self) -> &[Symmetry] {
        &self.syms
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn has_symmetries(&self) -> bool {
        self.syms.iter().any(|s| !s.is_identity())
    }

    /// Every digit lies in `{0..n-1}^dim`.
    pub fn digits_in_range(&self) -> bool {
        self.digits
            .iter()
            .all(|d| d[..self.dim].iter().all(|&c| (0..self.base).contains(&c)))
    }

    /// A fractal square or cube: digits in range and no symmetries.
    pub fn is_standard(&self) -> bool {
        self.digits_in_range() && !self.has_symmetries()
    }

    pub fn map(&self, i: usize) -> AffineMap {
        let n = self.base;
        let shift = RPoint::new(
            self.digits[i][..self.dim]
                .iter()
                .map(|&c| Rational::new(c, n))
                .collect(),
        )
        .unwrap();
        AffineMap::new(Rational::new(1, n), self.syms[i], shift).unwrap()
    }

    pub fn to_ifs(&self) -> IFSystem {
        IFSystem::new((0..self.len()).map(|i| self.map(i)).collect()).unwrap()
    }

    /// Smallest box of whole unit cells containing the attractor; this is
    /// the seed tile whose iterates are nested. It is the unit cube for
    /// digits in range.
    pub fn hull_tile(&self) -> (Digit, Digit) {
        if self.digits_in_range() {
            let mut hi = [0i64; 3];
            hi[..self.dim].fill(1);
            return ([0; 3], hi);
        }
        let ifs = self.to_ifs();
        let round_out = |b: &RBox| {
            let mut lo = [0i64; 3];
            let mut hi = [0i64; 3];
            for a in 0..self.dim {
                lo[a] = b.lo().coord(a).floor_i64().expect("small box");
                hi[a] = b.hi().coord(a).ceil().try_into().expect("small box");
            }
            (lo, hi)
        };
        let (mut lo, mut hi) = round_out(&ifs.invariant_box());
        // Rounding out can break invariance; grow by images until stable.
        loop {
            let b = RBox::new(
                RPoint::from_ints(&lo[..self.dim]),
                RPoint::from_ints(&hi[..self.dim]),
            )
            .unwrap();
            let grown = ifs
                .maps()
                .iter()
                .fold(b.clone(), |acc, f| acc.hull(&f.image_box(&b)));
            if grown == b {
                break;
            }
            (lo, hi) = round_out(&grown);
        }
        (lo, hi)
    }

    pub fn hull_box(&self) -> RBox {
        let (lo, hi) = self.hull_tile();
        RBox::new(
            RPoint::from_ints(&lo[..self.dim]),
            RPoint::from_ints(&hi[..self.dim]),
        )
        .unwrap()
    }

    /// Component-wise range of the digits.
    pub fn digit_range(&self) -> (Digit, Digit) {
        let mut lo = [i64::MAX; 3];
        let mut hi = [i64::MIN; 3];
        for d in &self.digits {
            for a in 0..3 {
                lo[a] = lo[a].min(d[a]);
                hi[a] = hi[a].max(d[a]);
            }
        }
        (lo, hi)
    }

    /// Drops one axis from every digit, merging duplicates. Only valid for
    /// systems without symmetries.
    pub fn project_digits(&self, axis: usize) -> Result<Vec<Vec<i64>>> {
        if self.has_symmetries() {
            return Err(Error::Unsupported("projection of a system with symmetries".into()));
        }
        if axis >= self.dim || self.dim < 2 {
            return Err(Error::invalid(format!("cannot drop axis {axis} of a {}-dim system", self.dim)));
        }
        let mut out: Vec<Vec<i64>> = self
            .digits
            .iter()
            .map(|d| {
                (0..self.dim)
                    .filter(|&a| a != axis)
                    .map(|a| d[a])
                    .collect()
            })
            .collect();
        out.sort();
        out.dedup();
        Ok(out)
    }
}
