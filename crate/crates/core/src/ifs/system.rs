use serde::{Deserialize, Serialize};

use super::AffineMap;
use crate::error::{Error, Result};
use crate::numeric::{RBox, RPoint, Rational};

/// A finite family of contracting similitudes of common dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IFSystem {
    dim: usize,
    maps: Vec<AffineMap>,
}

/// Cap on the number of words produced by refinement.
pub const MAX_REFINED_MAPS: usize = 1 << 22;

impl IFSystem {
    pub fn new(maps: Vec<AffineMap>) -> Result<Self> {
        let Some(first) = maps.first() else {
            return Err(Error::invalid("an IFS needs at least one map"));
        };
        let dim = first.dim();
        if let Some(m) = maps.iter().find(|m| m.dim() != dim) {
            return Err(Error::invalid(format!(
                "map {m:?} has dimension {} but the system has {dim}",
                m.dim()
            )));
        }
        if let Some(m) = maps.iter().find(|m| m.ratio() >= &Rational::one()) {
            return Err(Error::invalid(format!("map {m:?} is not a contraction")));
        }
        Ok(IFSystem { dim, maps })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn maps(&self) -> &[AffineMap] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn max_ratio(&self) -> Rational {
        self.maps.iter().map(|m| m.ratio().clone()).max().unwrap()
    }

    pub fn union(&self, other: &IFSystem) -> Result<IFSystem> {
        let mut maps = self.maps.clone();
        maps.extend(other.maps.iter().cloned());
        IFSystem::new(maps)
    }

    /// Composition `f_{w[0]} ∘ f_{w[1]} ∘ …` for a word of map indices.
    pub fn word_map(&self, word: &[usize]) -> Result<AffineMap> {
        let mut acc = AffineMap::identity(self.dim);
        for &i in word {
            let f = self
                .maps
                .get(i)
                .ok_or_else(|| Error::invalid(format!("word letter {i} out of range")))?;
            acc = acc.compose(f)?;
        }
        Ok(acc)
    }

    /// True when every map sends `b` into itself.
    pub fn is_invariant(&self, b: &RBox) -> bool {
        self.maps.iter().all(|f| b.contains_box(&f.image_box(b)))
    }

    /// A box `B` with `f(B) ⊆ B` for every map, hence containing the
    /// attractor.
    ///
    /// Without symmetries this is the bounding box of the fixed points,
    /// which is exactly the bounding box of the attractor. Otherwise the unit
    /// cube is used when invariant, else a sup-norm ball around a fixed
    /// point.
    pub fn invariant_box(&self) -> RBox {
        if self.maps.iter().all(|m| m.sym().is_identity()) {
            let fixed: Vec<RPoint> = self.maps.iter().map(|m| m.fixed_point().unwrap()).collect();
            let bounds: Vec<_> = (0..self.dim)
                .map(|a| {
                    let lo = fixed.iter().map(|p| p.coord(a).clone()).min().unwrap();
                    let hi = fixed.iter().map(|p| p.coord(a).clone()).max().unwrap();
                    (lo, hi)
                })
                .collect();
            return RBox::from_bounds(&bounds).unwrap();
        }
        let unit = RBox::unit(self.dim);
        if self.is_invariant(&unit) {
            return unit;
        }
        // Centre at the fixed point of the first map's square, which exists
        // because every symmetry has finite order.
        let centre = {
            let f = &self.maps[0];
            let mut g = f.clone();
            while !g.sym().is_identity() {
                g = g.compose(f).unwrap();
            }
            g.fixed_point().unwrap()
        };
        let radius = self
            .maps
            .iter()
            .map(|f| {
                let moved = f.apply(&centre).unwrap().sub(&centre).sup_norm();
                moved / (Rational::one() - f.ratio())
            })
            .max()
            .unwrap();
        let bounds: Vec<_> = centre
            .coords()
            .iter()
            .map(|c| (c - &radius, c + &radius))
            .collect();
        let b = RBox::from_bounds(&bounds).unwrap();
        debug_assert!(self.is_invariant(&b));
        b
    }

    /// Stopping-time refinement: every word whose ratio is at most `rmax`
    /// while its proper prefixes all exceed it. The attractor is unchanged.
    pub fn refine_to_ratio(&self, rmax: &Rational) -> Result<IFSystem> {
        if !rmax.is_positive() || rmax >= &Rational::one() {
            return Err(Error::invalid(format!("rmax {rmax} outside (0, 1)")));
        }
        let mut out = Vec::new();
        let mut stack: Vec<AffineMap> = self.maps.iter().rev().cloned().collect();
        while let Some(m) = stack.pop() {
            if m.ratio() <= rmax {
                out.push(m);
                if out.len() > MAX_REFINED_MAPS {
                    return Err(Error::ResourceLimit {
                        what: "ratio refinement".into(),
                        needed: out.len() as u128,
                        budget: MAX_REFINED_MAPS as u128,
                    });
                }
                continue;
            }
            for f in self.maps.iter().rev() {
                stack.push(m.compose(f)?);
            }
        }
        IFSystem::new(out)
    }

    /// Keeps one copy of each distinct map, in first-seen order.
    pub fn dedup(&self) -> IFSystem {
        let mut seen = std::collections::HashSet::new();
        let maps = self
            .maps
            .iter()
            .filter(|m| seen.insert((*m).clone()))
            .cloned()
            .collect();
        IFSystem {
            dim: self.dim,
            maps,
        }
    }

    /// The 1D system obtained by reading one coordinate, when every map keeps
    /// that axis in place.
    pub fn project_axis(&self, axis: usize) -> Option<IFSystem> {
        let maps: Option<Vec<_>> = self.maps.iter().map(|m| m.project_axis(axis)).collect();
        IFSystem::new(maps?).ok()
    }

    /// The system on the remaining coordinates after deleting one axis.
    pub fn drop_axis(&self, axis: usize) -> Option<IFSystem> {
        let maps: Option<Vec<_>> = self.maps.iter().map(|m| m.drop_axis(axis)).collect();
        IFSystem::new(maps?).ok()
    }
}

/// Formats a word as a composition, `f8∘f9`, with 1-based map names.
pub fn word_name(word: &[usize]) -> String {
    word.iter()
        .map(|i| format!("f{}", i + 1))
        .collect::<Vec<_>>()
        .join("∘")
}
