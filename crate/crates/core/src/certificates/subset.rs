use std::collections::BTreeSet;

use super::{Certificate, CertificateKind, Status, Witness};
use crate::error::{Error, Result};
use crate::ifs::{GridIFS, IFSystem};
use crate::numeric::{RBox, RPoint, Rational};

/// Proves `S ⊆ attractor` from `S ⊆ ∪ f(S)`.
///
/// From the covering, `S ⊆ ∪_{|w|=k} f_w(S)` for every `k`. The piece
/// `f_w(S)` lies within `r_max^k · d` of `f_w(A)`, where `d` bounds the
/// distance from points of `S` to the attractor `A`, so every point of `S`
/// is a limit of points of `A` and lies in `A`. A failed covering leaves the
/// question open.
pub fn invariant_subset(s: &IFSystem, target: &RBox) -> Result<Certificate> {
    if target.dim() != s.dim() {
        return Err(Error::invalid(format!(
            "target of dimension {} for a system of dimension {}",
            target.dim(),
            s.dim()
        )));
    }
    let pieces: Vec<(usize, RBox)> = s
        .maps()
        .iter()
        .enumerate()
        .map(|(i, f)| (i, f.image_box(target)))
        .filter(|(_, b)| b.intersects(target))
        .collect();
    let boxes: Vec<&RBox> = pieces.iter().map(|(_, b)| b).collect();
    let kind = CertificateKind::InvariantSubset;
    Ok(match uncovered_point(target, &boxes) {
        None => Certificate::new(kind, Status::Proved, Witness::Covering { pieces }),
        Some(point) => Certificate::new(
            kind,
            Status::Undetermined { level: 1 },
            Witness::Uncovered { point },
        ),
    })
}

/// A point of `target` outside every box, found by coordinate compression:
/// the box faces cut `target` into elementary cells, each either inside a
/// box or disjoint from all of them in its interior.
pub(crate) fn uncovered_point(target: &RBox, boxes: &[&RBox]) -> Option<RPoint> {
    let dim = target.dim();
    let samples: Vec<Vec<Rational>> = (0..dim)
        .map(|a| {
            let lo = target.lo().coord(a);
            let hi = target.hi().coord(a);
            if lo == hi {
                return vec![lo.clone()];
            }
            let mut cuts: BTreeSet<Rational> = BTreeSet::new();
            cuts.insert(lo.clone());
            cuts.insert(hi.clone());
            for b in boxes {
                for x in [b.lo().coord(a), b.hi().coord(a)] {
                    if lo < x && x < hi {
                        cuts.insert(x.clone());
                    }
                }
            }
            let cuts: Vec<Rational> = cuts.into_iter().collect();
            cuts.windows(2)
                .map(|w| (&w[0] + &w[1]) / Rational::int(2))
                .collect()
        })
        .collect();
    let mut idx = vec![0usize; dim];
    loop {
        let p = RPoint::new(idx.iter().enumerate().map(|(a, &i)| samples[a][i].clone()).collect())
            .expect("nonempty");
        if !boxes.iter().any(|b| b.contains_point(&p)) {
            return Some(p);
        }
        let mut a = 0;
        loop {
            if a == dim {
                return None;
            }
            idx[a] += 1;
            if idx[a] < samples[a].len() {
                break;
            }
            idx[a] = 0;
            a += 1;
        }
    }
}

/// Proves that the attractor of the sub-system formed by `maps` is the
/// product of the one-dimensional digit attractors `factors[a]` (base `n`),
/// hence lies in the attractor of `g`.
///
/// Holds when the chosen digits are exactly the product of the factors and
/// carry no symmetries: the product set is then invariant under the
/// sub-system, and invariant compact sets are unique.
pub fn invariant_subset_subsystem(
    g: &GridIFS,
    maps: &[usize],
    factors: &[Vec<i64>],
) -> Result<Certificate> {
    if factors.len() != g.dim() {
        return Err(Error::invalid(format!(
            "{} factors for a system of dimension {}",
            factors.len(),
            g.dim()
        )));
    }
    if let Some(&bad) = maps.iter().find(|&&i| i >= g.len()) {
        return Err(Error::invalid(format!("map index {bad} out of range")));
    }
    let chosen: BTreeSet<[i64; 3]> = maps.iter().map(|&i| g.digits()[i]).collect();
    let mut product: BTreeSet<[i64; 3]> = BTreeSet::new();
    product.insert([0; 3]);
    for (a, f) in factors.iter().enumerate() {
        product = product
            .into_iter()
            .flat_map(|d| {
                f.iter().map(move |&x| {
                    let mut e = d;
                    e[a] = x;
                    e
                })
            })
            .collect();
    }
    let plain = maps.iter().all(|&i| g.syms()[i].is_identity());
    let status = if plain && chosen == product && chosen.len() == maps.len() {
        Status::Proved
    } else {
        Status::Undetermined { level: 0 }
    };
    let mut sorted = maps.to_vec();
    sorted.sort_unstable();
    Ok(Certificate::new(
        CertificateKind::InvariantSubset,
        status,
        Witness::Subsystem {
            maps: sorted,
            factors: factors.to_vec(),
            base: g.base(),
        },
    ))
}
