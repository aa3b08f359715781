use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{Certificate, CertificateKind, Status, Witness};
use crate::error::{Error, Result};
use crate::numeric::{IntervalUnion, Rational, Window};

/// Building blocks of interval expressions.
///
/// `E = {0} ∪ ⋃_{k≥1} [2^{1-2k}, 2^{2-2k}]` and
/// `F = {0} ∪ ⋃_{k≥1} [2^{2-4k}, 2^{3-4k}]` enter through their truncations
/// to `m` intervals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Atom {
    E,
    F,
    Interval(Rational, Rational),
    Point(Rational),
}

/// `scale · atom + shift` with a positive scale.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub atom: Atom,
    pub scale: Rational,
    pub shift: Rational,
}

fn two_pow(e: i32) -> Rational {
    Rational::int(2).pow(e)
}

/// `E_m`: the point 0 and the `m` largest intervals of `E`.
pub fn e_truncation(m: u32) -> IntervalUnion {
    let parts = (1..=m as i32).map(|k| (two_pow(1 - 2 * k), two_pow(2 - 2 * k)));
    IntervalUnion::from_intervals(parts)
        .expect("ordered")
        .union(&IntervalUnion::point(Rational::zero()))
}

/// `F_m`: the point 0 and the `m` largest intervals of `F`.
pub fn f_truncation(m: u32) -> IntervalUnion {
    let parts = (1..=m as i32).map(|k| (two_pow(2 - 4 * k), two_pow(3 - 4 * k)));
    IntervalUnion::from_intervals(parts)
        .expect("ordered")
        .union(&IntervalUnion::point(Rational::zero()))
}

impl Term {
    pub fn new(atom: Atom, scale: Rational, shift: Rational) -> Result<Self> {
        if !scale.is_positive() {
            return Err(Error::invalid(format!("term scale {scale} must be positive")));
        }
        if let Atom::Interval(a, b) = &atom {
            if a > b {
                return Err(Error::invalid(format!("interval [{a}, {b}] is inverted")));
            }
        }
        Ok(Term { atom, scale, shift })
    }

    /// The truncated set `scale · atom_m + shift`.
    pub fn eval(&self, m: u32) -> IntervalUnion {
        let base = match &self.atom {
            Atom::E => e_truncation(m),
            Atom::F => f_truncation(m),
            Atom::Interval(a, b) => IntervalUnion::interval(a.clone(), b.clone()).expect("checked"),
            Atom::Point(a) => IntervalUnion::point(a.clone()),
        };
        base.affine(&self.scale, &self.shift).expect("positive scale")
    }

    /// The region `(shift, shift + scale · tail]` outside which truncation
    /// at order `m` is exact.
    ///
    /// For `E` the first omitted interval ends at `2^{-2m}`; for `F` the
    /// bound `2^{3-4m}` (the right end of the last kept interval) is used,
    /// which is larger than needed but still exact outside it.
    pub fn tail(&self, m: u32) -> Option<(Rational, Rational)> {
        let t = match self.atom {
            Atom::E => two_pow(-2 * m as i32),
            Atom::F => two_pow(3 - 4 * m as i32),
            _ => return None,
        };
        Some((self.shift.clone(), &self.shift + &(&self.scale * &t)))
    }

    fn sup(&self) -> Rational {
        let top = match &self.atom {
            Atom::E | Atom::F => Rational::one(),
            Atom::Interval(_, b) => b.clone(),
            Atom::Point(a) => a.clone(),
        };
        &self.scale * &top + &self.shift
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scale != Rational::one() {
            write!(f, "{} ", self.scale)?;
        }
        match &self.atom {
            Atom::E => write!(f, "E")?,
            Atom::F => write!(f, "F")?,
            Atom::Interval(a, b) => write!(f, "[{a},{b}]")?,
            Atom::Point(a) => write!(f, "{{{a}}}")?,
        }
        if !self.shift.is_zero() {
            write!(f, " + {}", self.shift)?;
        }
        Ok(())
    }
}

impl FromStr for Term {
    type Err = Error;

    /// `[scale] atom [+ shift]` where atom is `E`, `F`, `[a,b]` or `{a}`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, shift) = match s.rsplit_once('+') {
            Some((b, sh)) if !b.trim().is_empty() => (b.trim(), sh.trim().parse::<Rational>()?),
            _ => (s, Rational::zero()),
        };
        let start = body
            .find(['E', 'F', '[', '{'])
            .ok_or_else(|| Error::Parse(format!("no atom in term `{s}`")))?;
        let (scale_text, atom_text) = body.split_at(start);
        let scale = match scale_text.trim().trim_end_matches('*').trim() {
            "" => Rational::one(),
            t => t.parse::<Rational>()?,
        };
        let atom_text = atom_text.trim();
        let atom = match atom_text {
            "E" => Atom::E,
            "F" => Atom::F,
            t if t.starts_with('[') && t.ends_with(']') => {
                let (a, b) = t[1..t.len() - 1]
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("interval `{t}` needs two ends")))?;
                Atom::Interval(a.trim().parse()?, b.trim().parse()?)
            }
            t if t.starts_with('{') && t.ends_with('}') => Atom::Point(t[1..t.len() - 1].trim().parse()?),
            t => return Err(Error::Parse(format!("unknown atom `{t}`"))),
        };
        Term::new(atom, scale, shift)
    }
}

/// Parses a union of terms separated by `|`, e.g. `E | 1/2 E`.
pub fn parse_expr(s: &str) -> Result<Vec<Term>> {
    let terms: Vec<Term> = s.split('|').map(str::parse).collect::<Result<_>>()?;
    if terms.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    Ok(terms)
}

fn eval_union(terms: &[Term], m: u32) -> IntervalUnion {
    let parts: Vec<IntervalUnion> = terms.iter().map(|t| t.eval(m)).collect();
    IntervalUnion::union_all(&parts)
}

/// Checks `lhs = rhs` exactly on the left-open window `(lo, hi]` after
/// truncating every `E`, `F` at order `m`.
///
/// Truncation only changes a term inside its tail region, so the window
/// must avoid every tail region; the infinite identity then restricts to
/// the truncated one. Without a window, `lo` is the largest tail end and
/// `hi` the largest supremum.
pub fn verify_interval_identity(
    lhs: &[Term],
    rhs: &[Term],
    m: u32,
    window: Option<(Rational, Rational)>,
) -> Result<Certificate> {
    if m == 0 {
        return Err(Error::invalid("truncation order must be at least 1"));
    }
    let all = || lhs.iter().chain(rhs);
    let tails: Vec<(Rational, Rational)> = all().filter_map(|t| t.tail(m)).collect();
    let (lo, hi) = match window {
        Some(w) => w,
        None => (
            tails.iter().map(|t| t.1.clone()).max().unwrap_or_else(Rational::zero),
            all().map(Term::sup).max().unwrap_or_else(Rational::zero),
        ),
    };
    if lo > hi {
        return Err(Error::invalid(format!("window ({lo}, {hi}] is inverted")));
    }
    for (a, b) in &tails {
        if a < &hi && b > &lo {
            return Err(Error::invalid(format!(
                "window ({lo}, {hi}] meets the truncation tail ({a}, {b}]"
            )));
        }
    }
    let window = Window::left_open(lo, hi);
    let l = eval_union(lhs, m).restrict(&window);
    let r = eval_union(rhs, m).restrict(&window);
    let status = if l == r { Status::Proved } else { Status::Refuted };
    Ok(Certificate::new(
        CertificateKind::IntervalIdentity,
        status,
        Witness::IntervalSets { window, lhs: l, rhs: r },
    ))
}
