use serde::Serialize;

use super::{Certificate, CertificateKind, Status, Witness};
use crate::error::{Error, Result};
use crate::exec::{map_collect, sort_dedup, Engine};
use crate::ifs::{AffineMap, IFSystem};
use crate::numeric::{RBox, RPoint, Rational};

/// Proves `attractor ∩ S = ∅` at the first level `k ≤ kmax` where no image
/// `f_w(B)` of the invariant box `B` under a word of length `k` meets `S`.
///
/// Only words whose every prefix box meets `S` are expanded; a child box
/// lies inside its parent, so the surviving set at level `k` is exactly the
/// set of length-`k` word boxes meeting `S`. A proof at `k` therefore
/// persists at every later level.
pub fn disjointness(s: &IFSystem, target: &RBox, kmax: u32, engine: &Engine) -> Result<Certificate> {
    if target.dim() != s.dim() {
        return Err(Error::invalid(format!(
            "target of dimension {} for a system of dimension {}",
            target.dim(),
            s.dim()
        )));
    }
    let init = s.invariant_box();
    let kind = CertificateKind::Disjointness;
    let mut frontier = vec![AffineMap::identity(s.dim())];
    let mut checked = 1usize;
    for level in 0..=kmax {
        if level > 0 {
            engine.check("disjointness frontier", frontier.len() as u128 * s.len() as u128)?;
            let parts = map_collect(engine.exec, &frontier, |w| {
                s.maps()
                    .iter()
                    .map(|f| w.compose(f).expect("same dimension"))
                    .filter(|m| m.image_box(&init).intersects(target))
                    .collect::<Vec<_>>()
            });
            checked += frontier.len() * s.len();
            frontier = parts.into_iter().flatten().collect();
            sort_dedup(engine.exec, &mut frontier);
        } else if !init.intersects(target) {
            frontier.clear();
        }
        if frontier.is_empty() {
            return Ok(Certificate::new(
                kind,
                Status::Proved,
                Witness::Separation {
                    level,
                    init,
                    boxes_checked: checked,
                },
            ));
        }
    }
    Ok(Certificate::new(
        kind,
        Status::Undetermined { level: kmax },
        Witness::Overlap {
            level: kmax,
            boxes: frontier.len(),
        },
    ))
}

/// Compact convex polygon given by its vertices in counterclockwise order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvexPolygon {
    vertices: Vec<RPoint>,
}

fn cross(o: &RPoint, a: &RPoint, b: &RPoint) -> Rational {
    let (ax, ay) = (a.coord(0) - o.coord(0), a.coord(1) - o.coord(1));
    let (bx, by) = (b.coord(0) - o.coord(0), b.coord(1) - o.coord(1));
    ax * by - ay * bx
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<RPoint>) -> Result<Self> {
        if vertices.len() < 3 || vertices.iter().any(|v| v.dim() != 2) {
            return Err(Error::invalid("a polygon needs at least three planar vertices"));
        }
        let n = vertices.len();
        for i in 0..n {
            let turn = cross(&vertices[i], &vertices[(i + 1) % n], &vertices[(i + 2) % n]);
            if !turn.is_positive() {
                return Err(Error::invalid(format!(
                    "vertices are not strictly convex and counterclockwise at {}",
                    vertices[(i + 1) % n]
                )));
            }
        }
        Ok(ConvexPolygon { vertices })
    }

    pub fn vertices(&self) -> &[RPoint] {
        &self.vertices
    }

    pub fn contains_point(&self, p: &RPoint) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| !cross(&self.vertices[i], &self.vertices[(i + 1) % n], p).is_negative())
    }

    pub fn contains_box(&self, b: &RBox) -> bool {
        b.corners().iter().all(|c| self.contains_point(c))
    }
}

/// Proves `attractor ⊆ Q` for a convex polygon `Q`.
///
/// First by invariance: an affine map sends `Q` onto the hull of the vertex
/// images, so `f(vertices) ⊆ Q` for every map gives `∪ f(Q) ⊆ Q`, and the
/// attractor lies in every compact set mapped into itself. Otherwise by
/// checking that every length-`k` word image of the invariant box lies in
/// `Q`, for `k ≤ kmax`.
pub fn contained_in_polygon(
    s: &IFSystem,
    poly: &ConvexPolygon,
    kmax: u32,
    engine: &Engine,
) -> Result<Certificate> {
    if s.dim() != 2 {
        return Err(Error::invalid("polygon containment needs a planar system"));
    }
    let kind = CertificateKind::Disjointness;
    let invariant = s.maps().iter().all(|f| {
        poly.vertices
            .iter()
            .all(|v| poly.contains_point(&f.apply(v).expect("planar")))
    });
    if invariant {
        return Ok(Certificate::new(
            kind,
            Status::Proved,
            Witness::PolygonInvariant {
                vertices: poly.vertices.clone(),
            },
        ));
    }
    let init = s.invariant_box();
    let mut words = vec![AffineMap::identity(2)];
    let mut outside = init.clone();
    for level in 0..=kmax {
        if level > 0 {
            engine.check("polygon cover", words.len() as u128 * s.len() as u128)?;
            let parts = map_collect(engine.exec, &words, |w| {
                s.maps()
                    .iter()
                    .map(|f| w.compose(f).expect("planar"))
                    .collect::<Vec<_>>()
            });
            words = parts.into_iter().flatten().collect();
            sort_dedup(engine.exec, &mut words);
        }
        match words
            .iter()
            .map(|w| w.image_box(&init))
            .find(|b| !poly.contains_box(b))
        {
            None => {
                return Ok(Certificate::new(
                    kind,
                    Status::Proved,
                    Witness::CoverInside {
                        level,
                        boxes: words.len(),
                    },
                ))
            }
            Some(b) => outside = b,
        }
    }
    Ok(Certificate::new(
        kind,
        Status::Undetermined { level: kmax },
        Witness::CoverOutside {
            level: kmax,
            outside,
        },
    ))
}
