use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric::Rational;

/// A number `c √2` with rational `c ≥ 0`, compared exactly by squaring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sqrt2Multiple {
    pub coeff: Rational,
}

impl Sqrt2Multiple {
    /// `d > c√2  ⟺  d ≥ 0 and d² > 2c²`.
    pub fn is_exceeded_by(&self, d: &Rational) -> bool {
        !d.is_negative() && d * d > Rational::int(2) * &self.coeff * &self.coeff
    }

    /// `d < c√2`.
    pub fn exceeds(&self, d: &Rational) -> bool {
        d.is_negative() || d * d < Rational::int(2) * &self.coeff * &self.coeff
    }

    pub fn to_f64(&self) -> f64 {
        self.coeff.to_f64() * std::f64::consts::SQRT_2
    }
}

impl fmt::Display for Sqrt2Multiple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, q) = (self.coeff.numer(), self.coeff.denom());
        let one = num_bigint::BigInt::from(1);
        match (*p == one, *q == one) {
            (true, true) => write!(f, "√2"),
            (true, false) => write!(f, "√2/{q}"),
            (false, true) => write!(f, "{p}√2"),
            (false, false) => write!(f, "{p}√2/{q}"),
        }
    }
}

impl Serialize for Sqrt2Multiple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Diameter beyond which one complement component forces every complement
/// component of `F + Z²` to be unbounded: `√2 (n² + 1)² / n`.
pub fn threshold_value(n: i64) -> Result<Sqrt2Multiple> {
    if n < 2 {
        return Err(Error::invalid(format!("base {n} < 2")));
    }
    let m = Rational::int(n * n + 1);
    Ok(Sqrt2Multiple {
        coeff: &m * &m / Rational::int(n),
    })
}
