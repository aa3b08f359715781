use std::fmt;

use serde::{Deserialize, Serialize};

use super::Symmetry;
use crate::error::{Error, Result};
use crate::numeric::{RBox, RPoint, Rational};

/// Similitude `x ↦ ratio · σ(x) + shift` with `σ` a cube symmetry.
///
/// The image of the unit cube is the axis-aligned cube of side `ratio`
/// with lower corner `shift`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineMap {
    ratio: Rational,
    sym: Symmetry,
    shift: RPoint,
}

impl AffineMap {
    /// Ratio must lie in `(0, 1]`; one is allowed so the identity exists.
    pub fn new(ratio: Rational, sym: Symmetry, shift: RPoint) -> Result<Self> {
        if !ratio.is_positive() || ratio > Rational::one() {
            return Err(Error::invalid(format!("map ratio {ratio} outside (0, 1]")));
        }
        if sym.dim() != shift.dim() {
            return Err(Error::invalid(format!(
                "symmetry of dimension {} with shift of dimension {}",
                sym.dim(),
                shift.dim()
            )));
        }
        Ok(AffineMap { ratio, sym, shift })
    }

    pub fn homothety(ratio: Rational, shift: RPoint) -> Result<Self> {
        let dim = shift.dim();
        AffineMap::new(ratio, Symmetry::identity(dim), shift)
    }

    pub fn identity(dim: usize) -> Self {
        AffineMap {
            ratio: Rational::one(),
            sym: Symmetry::identity(dim),
            shift: RPoint::origin(dim),
        }
    }

    pub fn ratio(&self) -> &Rational {
        &self.ratio
    }

    pub fn sym(&self) -> &Symmetry {
        &self.sym
    }

    pub fn shift(&self) -> &RPoint {
        &self.shift
    }

    pub fn dim(&self) -> usize {
        self.shift.dim()
    }

    pub fn apply(&self, p: &RPoint) -> Result<RPoint> {
        if p.dim() != self.dim() {
            return Err(Error::invalid(format!(
                "point of dimension {} under a map of dimension {}",
                p.dim(),
                self.dim()
            )));
        }
        Ok(self.sym.apply(p).scale(&self.ratio).add(&self.shift))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &AffineMap) -> Result<AffineMap> {
        if self.dim() != other.dim() {
            return Err(Error::invalid("composing maps of different dimensions"));
        }
        let one_minus = Rational::one() - &other.ratio;
        let inner = self
            .sym
            .offset()
            .scale(&one_minus)
            .add(&self.sym.apply_linear(&other.shift));
        Ok(AffineMap {
            ratio: &self.ratio * &other.ratio,
            sym: self.sym.compose(&other.sym),
            shift: inner.scale(&self.ratio).add(&self.shift),
        })
    }

    /// Image of an axis-aligned box (again axis-aligned).
    pub fn image_box(&self, b: &RBox) -> RBox {
        let p = self.apply(b.lo()).expect("dimension");
        let q = self.apply(b.hi()).expect("dimension");
        let bounds: Vec<_> = (0..self.dim())
            .map(|a| {
                let (x, y) = (p.coord(a).clone(), q.coord(a).clone());
                if x <= y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        RBox::from_bounds(&bounds).expect("ordered")
    }

    pub fn fixed_point(&self) -> Option<RPoint> {
        if !self.sym.is_identity() || self.ratio == Rational::one() {
            return None;
        }
        let denom = Rational::one() - &self.ratio;
        Some(self.shift.scale(&denom.recip()))
    }

    /// Restriction to the axis `axis` when the symmetry keeps that axis in
    /// place, as a 1D map.
    pub fn project_axis(&self, axis: usize) -> Option<AffineMap> {
        if self.sym.perm()[axis] as usize != axis {
            return None;
        }
        let sym = Symmetry::new(&[0], &[self.sym.flips()[axis]]).ok()?;
        let shift = RPoint::new(vec![self.shift.coord(axis).clone()]).ok()?;
        AffineMap::new(self.ratio.clone(), sym, shift).ok()
    }

    /// Drops one coordinate when the symmetry does not mix it with the rest.
    pub fn drop_axis(&self, axis: usize) -> Option<AffineMap> {
        if self.sym.perm()[axis] as usize != axis {
            return None;
        }
        let mut perm = Vec::new();
        let mut flip = Vec::new();
        for i in 0..self.dim() {
            if i == axis {
                continue;
            }
            let p = self.sym.perm()[i] as usize;
            perm.push(if p > axis { p - 1 } else { p });
            flip.push(self.sym.flips()[i]);
        }
        let sym = Symmetry::new(&perm, &flip).ok()?;
        AffineMap::new(self.ratio.clone(), sym, self.shift.drop_axis(axis)).ok()
    }
}

impl fmt::Debug for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sym.is_identity() {
            write!(f, "x ↦ {}·x + {:?}", self.ratio, self.shift)
        } else {
            write!(f, "x ↦ {}·{:?}(x) + {:?}", self.ratio, self.sym, self.shift)
        }
    }
}
