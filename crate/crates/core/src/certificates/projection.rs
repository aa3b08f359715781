use super::subset::uncovered_point;
use super::{Certificate, CertificateKind, Status, Witness};
use crate::error::{Error, Result};
use crate::exec::{map_collect, sort_dedup, Engine};
use crate::ifs::{AffineMap, IFSystem};
use crate::numeric::{RBox, Rational};

/// Decides whether the projection of the attractor onto `axis` is totally
/// disconnected, looking at word levels `1..=kmax` of the projected system
/// with duplicate maps removed.
///
/// At each level, in order:
/// * pairwise disjoint images of the hull split the projection into
///   disjoint scaled copies of itself, so it is totally disconnected;
/// * ratios summing below 1 force Lebesgue measure zero (the projection is
///   covered by its images), and a compact null subset of the line contains
///   no interval;
/// * images covering the hull make the projection the whole hull, refuting
///   the claim when the hull is a proper interval.
pub fn cantor_projection(s: &IFSystem, axis: usize, kmax: u32, engine: &Engine) -> Result<Certificate> {
    if axis >= s.dim() {
        return Err(Error::invalid(format!("axis {axis} outside dimension {}", s.dim())));
    }
    let p = s
        .project_axis(axis)
        .ok_or_else(|| Error::Unsupported(format!("maps rotate axis {axis} into other coordinates")))?
        .dedup();
    let hull = p.invariant_box();
    let (lo, hi) = (hull.lo().coord(0).clone(), hull.hi().coord(0).clone());
    let kind = CertificateKind::CantorProjection;
    let mut words = vec![AffineMap::identity(1)];
    for level in 1..=kmax.max(1) {
        engine.check("projection words", words.len() as u128 * p.len() as u128)?;
        let parts = map_collect(engine.exec, &words, |w| {
            p.maps().iter().map(|f| w.compose(f).expect("1D")).collect::<Vec<_>>()
        });
        words = parts.into_iter().flatten().collect();
        sort_dedup(engine.exec, &mut words);
        let mut images: Vec<RBox> = words.iter().map(|w| w.image_box(&hull)).collect();
        images.sort();
        let ends: Vec<(Rational, Rational)> = images
            .iter()
            .map(|b| (b.lo().coord(0).clone(), b.hi().coord(0).clone()))
            .collect();
        if ends.windows(2).all(|w| w[0].1 < w[1].0) {
            return Ok(Certificate::new(
                kind,
                Status::Proved,
                Witness::SeparatedImages { level, intervals: ends },
            ));
        }
        let sum: Rational = words.iter().map(|w| w.ratio()).sum();
        if sum < Rational::one() {
            return Ok(Certificate::new(
                kind,
                Status::Proved,
                Witness::RatioSum {
                    maps: words.len(),
                    sum,
                },
            ));
        }
        let refs: Vec<&RBox> = images.iter().collect();
        if lo < hi && uncovered_point(&hull, &refs).is_none() {
            return Ok(Certificate::new(kind, Status::Refuted, Witness::Interval { lo, hi }));
        }
    }
    Ok(Certificate::new(
        kind,
        Status::Undetermined { level: kmax },
        Witness::Overlap {
            level: kmax,
            boxes: words.len(),
        },
    ))
}
