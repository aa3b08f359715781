use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::IFSystem;
use crate::error::{Error, Result};
use crate::numeric::Rational;

/// Root of `Σ ratio_i^s = 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MoranDimension {
    /// Bisection estimate, within the requested tolerance.
    pub value: f64,
    /// Set when a rational `s` solves the equation exactly.
    pub exact: Option<Rational>,
}

fn moran_sum(ratios: &[f64], s: f64) -> f64 {
    ratios.iter().map(|r| r.powf(s)).sum::<f64>() - 1.0
}

pub fn moran_dimension(sys: &IFSystem, tol: &Rational) -> Result<MoranDimension> {
    if sys.is_empty() {
        return Err(Error::invalid("empty system"));
    }
    if !tol.is_positive() {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let ratios: Vec<Rational> = sys.maps().iter().map(|m| m.ratio().clone()).collect();
    let rf: Vec<f64> = ratios.iter().map(Rational::to_f64).collect();
    let tol = tol.to_f64();

    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while moran_sum(&rf, hi) > 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if moran_sum(&rf, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let value = 0.5 * (lo + hi);
    Ok(MoranDimension {
        value,
        exact: exact_root(&ratios, value),
    })
}

fn exact_root(ratios: &[Rational], estimate: f64) -> Option<Rational> {
    let s0 = estimate.round();
    if s0 >= 0.0 && (estimate - s0).abs() < 1e-6 {
        let s0 = s0 as i32;
        let total: Rational = ratios.iter().map(|r| r.pow(s0)).sum();
        if total == Rational::one() {
            return Some(Rational::int(s0 as i64));
        }
    }
    // Equal ratios 1/R with m maps: s = p/q exactly when m^q = R^p.
    let r = &ratios[0];
    if ratios.iter().any(|x| x != r) {
        return None;
    }
    let big_r = r.recip();
    let m = BigInt::from(ratios.len());
    for qd in 1..=12u32 {
        let p = (estimate * qd as f64).round();
        if p < 1.0 || ((estimate * qd as f64) - p).abs() > 1e-6 {
            continue;
        }
        let p = p as u32;
        let lhs = m.pow(qd) * big_r.denom().pow(p);
        let rhs = big_r.numer().pow(p);
        if lhs == rhs {
            return Some(Rational::new(p as i64, qd as i64));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ifs::AffineMap;
    use crate::numeric::{q, RPoint};
    use proptest::prelude::*;

    fn sys(ratios: &[Rational]) -> IFSystem {
        IFSystem::new(
            ratios
                .iter()
                .map(|r| AffineMap::homothety(r.clone(), RPoint::origin(1)).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn mixed_ratios_with_integer_root() {
        let mut r = vec![q(1, 4); 8];
        r.extend([q(1, 2), q(1, 2)]);
        let d = moran_dimension(&sys(&r), &q(1, 1_000_000)).unwrap();
        assert_eq!(d.exact, Some(Rational::int(2)));
        assert!((d.value - 2.0).abs() < 1e-6);
    }

    #[test]
    fn equal_ratios_closed_form() {
        for (m, n) in [(2usize, 3i64), (5, 3), (12, 4), (8, 4)] {
            let d = moran_dimension(&sys(&vec![q(1, n); m]), &q(1, 1_000_000_000)).unwrap();
            let want = (m as f64).ln() / (n as f64).ln();
            assert!((d.value - want).abs() < 1e-8, "{m} maps of 1/{n}");
        }
        // 8 maps of 1/4: s = 3/2 exactly.
        let d = moran_dimension(&sys(&vec![q(1, 4); 8]), &q(1, 1_000_000)).unwrap();
        assert_eq!(d.exact, Some(q(3, 2)));
        let d = moran_dimension(&sys(&vec![q(1, 4); 12]), &q(1, 1_000_000)).unwrap();
        assert_eq!(d.exact, None);
    }

    #[test]
    fn empty_is_rejected_by_constructor() {
        assert!(IFSystem::new(vec![]).is_err());
    }

    proptest! {
        #[test]
        fn adding_a_map_increases_dimension(
            dens in prop::collection::vec(2i64..9, 1..6),
            extra in 2i64..9,
        ) {
            let r: Vec<Rational> = dens.iter().map(|&d| q(1, d)).collect();
            let tol = q(1, 1_000_000_000);
            let before = moran_dimension(&sys(&r), &tol).unwrap().value;
            let mut r2 = r.clone();
            r2.push(q(1, extra));
            let after = moran_dimension(&sys(&r2), &tol).unwrap().value;
            prop_assert!(after > before);
        }
    }
}
