use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::{map_range, Engine};
use crate::ifs::{AffineMap, IFSystem};
use crate::numeric::{RBox, RPoint, Rational};

/// Images `f_α(B)` of an invariant box over a stopping-time word set; the
/// attractor lies in their union.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxCover {
    boxes: Vec<RBox>,
    delta: Rational,
    init: RBox,
}

impl BoxCover {
    /// Sorted, without duplicates.
    pub fn boxes(&self) -> &[RBox] {
        &self.boxes
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    pub fn init(&self) -> &RBox {
        &self.init
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn intersects(&self, b: &RBox) -> bool {
        self.boxes.iter().any(|x| x.intersects(b))
    }

    pub fn contains_point(&self, p: &RPoint) -> bool {
        self.boxes.iter().any(|x| x.contains_point(p))
    }

    pub fn all_inside(&self, b: &RBox) -> bool {
        self.boxes.iter().all(|x| b.contains_box(x))
    }

    /// Boxes whose closed `axis` range contains `z0`, with that axis
    /// removed; sorted and deduplicated.
    pub fn slice(&self, axis: usize, z0: &Rational) -> Vec<RBox> {
        let mut out: Vec<RBox> = self
            .boxes
            .iter()
            .filter(|b| b.lo().coord(axis) <= z0 && z0 <= b.hi().coord(axis))
            .map(|b| b.drop_axis(axis))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn project(&self, axis: usize) -> Vec<RBox> {
        let mut out: Vec<RBox> = self.boxes.iter().map(|b| b.drop_axis(axis)).collect();
        out.sort();
        out.dedup();
        out
    }
}

/// Cover whose boxes have sup-norm diameter at most `delta`. `init`
/// defaults to the system's invariant box and must be mapped into itself.
pub fn cover_boxes(
    s: &IFSystem,
    delta: &Rational,
    init: Option<&RBox>,
    engine: &Engine,
) -> Result<BoxCover> {
    if !delta.is_positive() {
        return Err(Error::invalid(format!("cover resolution {delta} must be positive")));
    }
    let init = match init {
        Some(b) => {
            if !s.is_invariant(b) {
                return Err(Error::invalid(format!("initial box {b:?} is not mapped into itself")));
            }
            b.clone()
        }
        None => s.invariant_box(),
    };
    let side = init.max_side();
    if side.is_zero() || &side <= delta {
        return Ok(BoxCover {
            boxes: vec![init.clone()],
            delta: delta.clone(),
            init,
        });
    }
    let threshold = delta / &side;
    let produced = AtomicU64::new(0);
    let budget = engine.max_cells.min(u64::MAX as u128) as u64;
    let parts: Vec<Result<Vec<RBox>>> = map_range(engine.exec, s.len(), |i| {
        let mut out = Vec::new();
        let mut stack: Vec<AffineMap> = vec![s.maps()[i].clone()];
        while let Some(m) = stack.pop() {
            if m.ratio() <= &threshold {
                out.push(m.image_box(&init));
                if produced.fetch_add(1, Ordering::Relaxed) >= budget {
                    return Err(Error::ResourceLimit {
                        what: "box cover".into(),
                        needed: budget as u128 + 1,
                        budget: budget as u128,
                    });
                }
                continue;
            }
            for f in s.maps().iter().rev() {
                stack.push(m.compose(f)?);
            }
        }
        Ok(out)
    });
    let mut boxes = Vec::new();
    for p in parts {
        boxes.extend(p?);
    }
    boxes.sort();
    boxes.dedup();
    Ok(BoxCover {
        boxes,
        delta: delta.clone(),
        init,
    })
}

/// The level-`k` cover: resolution `side(B) · r_max^k`, which is the set of
/// all length-`k` word images when the ratios are equal.
pub fn cover_level(s: &IFSystem, k: u32, init: Option<&RBox>, engine: &Engine) -> Result<BoxCover> {
    let side = init.cloned().unwrap_or_else(|| s.invariant_box()).max_side();
    let delta = if side.is_zero() {
        Rational::one()
    } else {
        side * s.max_ratio().pow(k as i32)
    };
    cover_boxes(s, &delta, init, engine)
}
