//! Exact certificates for containment, separation and structure facts.
//!
//! Every `Proved` or `Refuted` status is backed by rational arithmetic and
//! carries enough data in its witness to be checked again by hand.

mod disjoint;
mod interval;
mod osc;
mod projection;
mod section;
mod subset;

use std::fmt;

use serde::Serialize;

use crate::ifs::AffineMap;
use crate::numeric::{IntervalUnion, RBox, RPoint, Rational, Window};

pub use disjoint::{contained_in_polygon, disjointness, ConvexPolygon};
pub use interval::{e_truncation, f_truncation, parse_expr, verify_interval_identity, Atom, Term};
pub use osc::osc_violation_witness;
pub use projection::cantor_projection;
pub use section::{
    section_equation, section_equation_cover, ExpectedSection, SectionMode,
};
pub use subset::{invariant_subset, invariant_subset_subsystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    InvariantSubset,
    Disjointness,
    IntervalIdentity,
    CantorProjection,
    SectionEquation,
    OscViolation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Status {
    Proved,
    Refuted,
    Undetermined { level: u32 },
}

/// Exact data backing a status.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Witness {
    /// Images `f_i(S)` that meet `S`; their union contains `S`.
    Covering { pieces: Vec<(usize, RBox)> },
    /// A point of `S` left uncovered by every image.
    Uncovered { point: RPoint },
    /// The maps with these digits form a product digit set whose attractor
    /// is the product of the listed one-dimensional attractors.
    Subsystem {
        maps: Vec<usize>,
        factors: Vec<Vec<i64>>,
        base: i64,
    },
    /// Length-`level` word images of the initial box miss the target.
    Separation { level: u32, init: RBox, boxes_checked: usize },
    /// Surviving word boxes at the last level tried.
    Overlap { level: u32, boxes: usize },
    /// Every map sends the convex polygon into itself.
    PolygonInvariant { vertices: Vec<RPoint> },
    /// Every level-`level` cover box lies in the polygon.
    CoverInside { level: u32, boxes: usize },
    /// A cover box leaving the polygon, at the last level tried.
    CoverOutside { level: u32, outside: RBox },
    IntervalSets {
        window: Window,
        lhs: IntervalUnion,
        rhs: IntervalUnion,
    },
    /// Level-`level` images of the hull are pairwise disjoint.
    SeparatedImages { level: u32, intervals: Vec<(Rational, Rational)> },
    /// The distinct projected maps have contraction ratios summing below 1,
    /// so the projection is a compact null set.
    RatioSum { maps: usize, sum: Rational },
    /// The hull is covered by its images, so the projection is this interval.
    Interval { lo: Rational, hi: Rational },
    Section {
        level: u32,
        expected: usize,
        actual: usize,
        missing: usize,
        extra: usize,
        single_component: Option<bool>,
    },
    SectionCover {
        delta: Rational,
        expected: usize,
        actual: usize,
    },
    WordPair {
        first: Vec<usize>,
        second: Vec<usize>,
        first_name: String,
        second_name: String,
        map: AffineMap,
    },
    Exhausted { words: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    #[serde(flatten)]
    pub status: Status,
    pub witness: Witness,
}

impl Certificate {
    pub(crate) fn new(kind: CertificateKind, status: Status, witness: Witness) -> Self {
        Certificate {
            kind,
            status,
            witness,
        }
    }

    pub fn is_proved(&self) -> bool {
        self.status == Status::Proved
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Proved => write!(f, "proved"),
            Status::Refuted => write!(f, "refuted"),
            Status::Undetermined { level } => write!(f, "undetermined at level {level}"),
        }
    }
}
