use std::fmt;

use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

/// Exact point in dimension 1, 2 or 3.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RPoint(Vec<Rational>);

impl RPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if !(1..=3).contains(&coords.len()) {
            return Err(Error::invalid(format!(
                "point dimension {} outside 1..=3",
                coords.len()
            )));
        }
        Ok(RPoint(coords))
    }

    pub fn origin(dim: usize) -> Self {
        RPoint(vec![Rational::zero(); dim])
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RPoint(coords.iter().map(|&c| Rational::int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn coord(&self, axis: usize) -> &Rational {
        &self.0[axis]
    }

    pub fn add(&self, other: &RPoint) -> RPoint {
        RPoint(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RPoint) -> RPoint {
        RPoint(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rational) -> RPoint {
        RPoint(self.0.iter().map(|a| a * s).collect())
    }

    /// Sup-norm length.
    pub fn sup_norm(&self) -> Rational {
        self.0
            .iter()
            .map(Rational::abs)
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn drop_axis(&self, axis: usize) -> RPoint {
        let mut c = self.0.clone();
        c.remove(axis);
        RPoint(c)
    }
}

impl fmt::Debug for RPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for RPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Closed axis-aligned box `[lo, hi]`; degenerate boxes (segments, points)
/// are allowed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RBox {
    lo: RPoint,
    hi: RPoint,
}

impl RBox {
    pub fn new(lo: RPoint, hi: RPoint) -> Result<Self> {
        if lo.dim() != hi.dim() {
            return Err(Error::invalid("box corners differ in dimension"));
        }
        if lo.0.iter().zip(&hi.0).any(|(a, b)| a > b) {
            return Err(Error::invalid(format!("box corners out of order: {lo} > {hi}")));
        }
        Ok(RBox { lo, hi })
    }

    pub fn unit(dim: usize) -> Self {
        RBox {
            lo: RPoint::origin(dim),
            hi: RPoint(vec![Rational::one(); dim]),
        }
    }

    pub fn point(p: RPoint) -> Self {
        RBox { lo: p.clone(), hi: p }
    }

    pub fn from_bounds(bounds: &[(Rational, Rational)]) -> Result<Self> {
        let lo = RPoint::new(bounds.iter().map(|b| b.0.clone()).collect())?;
        let hi = RPoint::new(bounds.iter().map(|b| b.1.clone()).collect())?;
        RBox::new(lo, hi)
    }

    pub fn lo(&self) -> &RPoint {
        &self.lo
    }

    pub fn hi(&self) -> &RPoint {
        &self.hi
    }

    pub fn dim(&self) -> usize {
        self.lo.dim()
    }

    pub fn side(&self, axis: usize) -> Rational {
        &self.hi.0[axis] - &self.lo.0[axis]
    }

    /// Sup-norm diameter: the longest side.
    pub fn max_side(&self) -> Rational {
        (0..self.dim())
            .map(|a| self.side(a))
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn contains_point(&self, p: &RPoint) -> bool {
        p.dim() == self.dim()
            && (0..self.dim()).all(|a| self.lo.0[a] <= p.0[a] && p.0[a] <= self.hi.0[a])
    }

    pub fn contains_box(&self, other: &RBox) -> bool {
        other.dim() == self.dim()
            && (0..self.dim())
                .all(|a| self.lo.0[a] <= other.lo.0[a] && other.hi.0[a] <= self.hi.0[a])
    }

    /// Closed-set intersection test (touching counts).
    pub fn intersects(&self, other: &RBox) -> bool {
        other.dim() == self.dim()
            && (0..self.dim())
                .all(|a| self.lo.0[a] <= other.hi.0[a] && other.lo.0[a] <= self.hi.0[a])
    }

    pub fn intersection(&self, other: &RBox) -> Option<RBox> {
        if !self.intersects(other) {
            return None;
        }
        let lo = (0..self.dim())
            .map(|a| self.lo.0[a].clone().max(other.lo.0[a].clone()))
            .collect();
        let hi = (0..self.dim())
            .map(|a| self.hi.0[a].clone().min(other.hi.0[a].clone()))
            .collect();
        Some(RBox {
            lo: RPoint(lo),
            hi: RPoint(hi),
        })
    }

    pub fn hull(&self, other: &RBox) -> RBox {
        let lo = (0..self.dim())
            .map(|a| self.lo.0[a].clone().min(other.lo.0[a].clone()))
            .collect();
        let hi = (0..self.dim())
            .map(|a| self.hi.0[a].clone().max(other.hi.0[a].clone()))
            .collect();
        RBox {
            lo: RPoint(lo),
            hi: RPoint(hi),
        }
    }

    /// Squared Euclidean distance from `p` to the box (zero inside).
    pub fn dist2_to_point(&self, p: &RPoint) -> Rational {
        let mut acc = Rational::zero();
        for a in 0..self.dim() {
            let x = &p.0[a];
            let gap = if x < &self.lo.0[a] {
                &self.lo.0[a] - x
            } else if x > &self.hi.0[a] {
                x - &self.hi.0[a]
            } else {
                continue;
            };
            acc += &(&gap * &gap);
        }
        acc
    }

    pub fn drop_axis(&self, axis: usize) -> RBox {
        RBox {
            lo: self.lo.drop_axis(axis),
            hi: self.hi.drop_axis(axis),
        }
    }

    pub fn translate(&self, t: &RPoint) -> RBox {
        RBox {
            lo: self.lo.add(t),
            hi: self.hi.add(t),
        }
    }

    pub fn corners(&self) -> Vec<RPoint> {
        let d = self.dim();
        (0..1usize << d)
            .map(|mask| {
                RPoint(
                    (0..d)
                        .map(|a| {
                            if mask >> a & 1 == 1 {
                                self.hi.0[a].clone()
                            } else {
                                self.lo.0[a].clone()
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }
}

impl fmt::Debug for RBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?} .. {:?}]", self.lo, self.hi)
    }
}
