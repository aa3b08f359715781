//! Finite unions of closed rational intervals in canonical form.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

/// A sorted list of pairwise disjoint, non-touching closed intervals.
/// Isolated points are degenerate intervals `[a, a]`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<(Rational, Rational)>", try_from = "Vec<(Rational, Rational)>")]
pub struct IntervalUnion {
    parts: Vec<(Rational, Rational)>,
}

/// Restriction window for comparisons. The left end may be open, which is how
/// truncated self-similar sets are compared away from their accumulation
/// point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub lo: Rational,
    pub hi: Rational,
    #[serde(default)]
    pub lo_open: bool,
}

impl Window {
    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Window {
            lo,
            hi,
            lo_open: false,
        }
    }

    pub fn left_open(lo: Rational, hi: Rational) -> Self {
        Window {
            lo,
            hi,
            lo_open: true,
        }
    }
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion { parts: Vec::new() }
    }

    pub fn interval(a: Rational, b: Rational) -> Result<Self> {
        if a > b {
            return Err(Error::invalid(format!("interval [{a}, {b}] is inverted")));
        }
        Ok(IntervalUnion {
            parts: vec![(a, b)],
        })
    }

    pub fn point(a: Rational) -> Self {
        IntervalUnion {
            parts: vec![(a.clone(), a)],
        }
    }

    /// Builds the canonical form of an arbitrary list of closed intervals.
    pub fn from_intervals(list: impl IntoIterator<Item = (Rational, Rational)>) -> Result<Self> {
        let mut v: Vec<_> = list.into_iter().collect();
        if let Some((a, b)) = v.iter().find(|(a, b)| a > b) {
            return Err(Error::invalid(format!("interval [{a}, {b}] is inverted")));
        }
        v.sort();
        Ok(IntervalUnion {
            parts: merge_sorted(v),
        })
    }

    pub fn intervals(&self) -> &[(Rational, Rational)] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn measure(&self) -> Rational {
        self.parts.iter().map(|(a, b)| b - a).sum()
    }

    pub fn contains_point(&self, x: &Rational) -> bool {
        let i = self.parts.partition_point(|(_, b)| b < x);
        i < self.parts.len() && &self.parts[i].0 <= x
    }

    /// `{scale * x + shift : x in self}`.
    pub fn affine(&self, scale: &Rational, shift: &Rational) -> Result<Self> {
        if !scale.is_positive() {
            return Err(Error::invalid(format!("affine scale {scale} must be positive")));
        }
        Ok(IntervalUnion {
            parts: self
                .parts
                .iter()
                .map(|(a, b)| (a * scale + shift, b * scale + shift))
                .collect(),
        })
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut v = Vec::with_capacity(self.parts.len() + other.parts.len());
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() || j < other.parts.len() {
            let take_left = j >= other.parts.len()
                || (i < self.parts.len() && self.parts[i] <= other.parts[j]);
            if take_left {
                v.push(self.parts[i].clone());
                i += 1;
            } else {
                v.push(other.parts[j].clone());
                j += 1;
            }
        }
        IntervalUnion {
            parts: merge_sorted(v),
        }
    }

    pub fn union_all<'a>(items: impl IntoIterator<Item = &'a IntervalUnion>) -> Self {
        let v: Vec<_> = items
            .into_iter()
            .flat_map(|u| u.parts.iter().cloned())
            .collect();
        let mut v = v;
        v.sort();
        IntervalUnion {
            parts: merge_sorted(v),
        }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            let (a0, a1) = &self.parts[i];
            let (b0, b1) = &other.parts[j];
            let lo = a0.max(b0);
            let hi = a1.min(b1);
            if lo <= hi {
                out.push((lo.clone(), hi.clone()));
            }
            if a1 < b1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        // Pieces from disjoint non-touching inputs cannot touch each other.
        IntervalUnion { parts: out }
    }

    /// Restriction to a window; with an open left end, the result is the
    /// closure of `self ∩ (lo, hi]`.
    pub fn restrict(&self, w: &Window) -> Self {
        let clipped = match IntervalUnion::interval(w.lo.clone(), w.hi.clone()) {
            Ok(win) => self.intersect(&win),
            Err(_) => return IntervalUnion::empty(),
        };
        if !w.lo_open {
            return clipped;
        }
        IntervalUnion {
            parts: clipped
                .parts
                .into_iter()
                .filter(|(a, b)| !(a == b && a == &w.lo))
                .collect(),
        }
    }

    pub fn equals(&self, other: &Self, window: Option<&Window>) -> bool {
        match window {
            None => self == other,
            Some(w) => self.restrict(w) == other.restrict(w),
        }
    }

    /// True when `other ⊆ self` (within the window if given).
    pub fn contains(&self, other: &Self, window: Option<&Window>) -> bool {
        let (a, b) = match window {
            None => (self.clone(), other.clone()),
            Some(w) => (self.restrict(w), other.restrict(w)),
        };
        a.intersect(&b) == b
    }
}

/// Merges a list sorted by left endpoint into canonical form.
fn merge_sorted(v: Vec<(Rational, Rational)>) -> Vec<(Rational, Rational)> {
    let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(v.len());
    for (a, b) in v {
        match out.last_mut() {
            Some(last) if a <= last.1 => {
                if b > last.1 {
                    last.1 = b;
                }
            }
            _ => out.push((a, b)),
        }
    }
    out
}

impl From<IntervalUnion> for Vec<(Rational, Rational)> {
    fn from(u: IntervalUnion) -> Self {
        u.parts
    }
}

impl TryFrom<Vec<(Rational, Rational)>> for IntervalUnion {
    type Error = Error;
    fn try_from(v: Vec<(Rational, Rational)>) -> Result<Self> {
        IntervalUnion::from_intervals(v)
    }
}

impl fmt::Debug for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        for (i, (a, b)) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " ∪ ")?;
            }
            if a == b {
                write!(f, "{{{a}}}")?;
            } else {
                write!(f, "[{a}, {b}]")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
