use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::bigfmt;
use crate::error::{Error, Result};
use crate::lattice::PointSet;
use crate::quasicube::contained_in_quasicube;

/// Exact verdict for one instance, compared in squared form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    /// `|A + B + U|`.
    pub lhs: usize,
    #[serde(with = "bigfmt::uint")]
    pub lhs_sq: BigUint,
    /// `|A| |B| |U|^2`.
    #[serde(with = "bigfmt::uint")]
    pub rhs_sq: BigUint,
    pub holds: bool,
    pub equality: bool,
    /// `lhs_sq / rhs_sq`; absent when `rhs_sq` is zero.
    #[serde(with = "bigfmt::opt_ratio")]
    pub ratio_sq: Option<BigRational>,
}

impl CheckReport {
    pub fn from_sizes(sumset: usize, a: usize, b: usize, u: usize) -> Self {
        let lhs_sq = BigUint::from(sumset).pow(2);
        let rhs_sq = BigUint::from(a) * BigUint::from(b) * BigUint::from(u).pow(2);
        let ratio_sq =
            (!rhs_sq.is_zero()).then(|| BigRational::new(BigInt::from(lhs_sq.clone()), BigInt::from(rhs_sq.clone())));
        CheckReport { lhs: sumset, holds: lhs_sq >= rhs_sq, equality: lhs_sq == rhs_sq, lhs_sq, rhs_sq, ratio_sq }
    }
}

/// `|A + B + U|^2 / (|A| |B| |U|^2)`, or `None` if any set is empty.
pub fn ratio_sq(sumset: usize, a: usize, b: usize, u: usize) -> Option<BigRational> {
    CheckReport::from_sizes(sumset, a, b, u).ratio_sq
}

/// Checks `|A + B + U|^2 >= |A| |B| |U|^2` exactly.
///
/// With `require_quasicube`, a nonempty `U` outside every quasicube is an
/// error rather than a report. Empty operands give the vacuous `0 >= 0`.
pub fn check_theorem(a: &PointSet, b: &PointSet, u: &PointSet, require_quasicube: bool) -> Result<CheckReport> {
    for other in [b, u] {
        if other.dim() != a.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), found: other.dim() });
        }
    }
    if require_quasicube && !u.is_empty() && contained_in_quasicube(u)?.is_none() {
        return Err(Error::NotInQuasicube);
    }
    let sumset = a.sumset(b)?.sumset(u)?;
    Ok(CheckReport::from_sizes(sumset.len(), a.len(), b.len(), u.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasicube::Witness;

    #[test]
    fn singleton_pair_equality() {
        let a = PointSet::line([0]);
        let r = check_theorem(&a, &a, &PointSet::line([0, 1]), true).unwrap();
        assert_eq!(r.lhs, 2);
        assert_eq!(r.lhs_sq, BigUint::from(4u32));
        assert_eq!(r.rhs_sq, BigUint::from(4u32));
        assert!(r.holds && r.equality);
        assert_eq!(r.ratio_sq, Some(BigRational::from_integer(1.into())));
    }

    #[test]
    fn unit_squares_equality() {
        let sq = Witness::unit_cube(2).materialize();
        let r = check_theorem(&sq, &sq, &sq, true).unwrap();
        assert_eq!(r.lhs, 16);
        assert_eq!(r.lhs_sq, BigUint::from(256u32));
        assert_eq!(r.rhs_sq, BigUint::from(256u32));
        assert!(r.equality);
    }

    #[test]
    fn example_quasicube_as_u() {
        let origin = PointSet::new(2, [[0, 0]]).unwrap();
        let sigma = PointSet::new(2, [[0, 0], [1, 0], [0, 1], [2, 1]]).unwrap();
        let r = check_theorem(&origin, &origin, &sigma, true).unwrap();
        assert_eq!((r.lhs, r.lhs_sq.clone(), r.rhs_sq.clone()), (4, 16u32.into(), 16u32.into()));
        assert!(r.equality);
    }

    #[test]
    fn empty_operands_are_vacuous() {
        let e = PointSet::empty(1).unwrap();
        let a = PointSet::line([0, 1]);
        for (x, y, z) in [(&e, &a, &a), (&a, &e, &a), (&a, &a, &e)] {
            let r = check_theorem(x, y, z, true).unwrap();
            assert!(r.lhs_sq.is_zero() && r.rhs_sq.is_zero());
            assert!(r.holds && r.equality && r.ratio_sq.is_none());
        }
    }

    #[test]
    fn precondition_and_dimension_errors() {
        let a = PointSet::line([0]);
        let u = PointSet::line([0, 1, 2]);
        assert_eq!(check_theorem(&a, &a, &u, true), Err(Error::NotInQuasicube));
        // exploration mode still reports
        let r = check_theorem(&a, &a, &u, false).unwrap();
        assert!(r.holds);
        let b = PointSet::new(2, [[0, 0]]).unwrap();
        assert!(matches!(check_theorem(&a, &b, &a, false), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn json_round_trip() {
        let r = CheckReport::from_sizes(7, 3, 5, 2);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains(r#""ratio_sq":"49/60""#));
        assert_eq!(serde_json::from_str::<CheckReport>(&json).unwrap(), r);
        let empty = CheckReport::from_sizes(0, 0, 5, 2);
        let json = serde_json::to_string(&empty).unwrap();
        assert_eq!(serde_json::from_str::<CheckReport>(&json).unwrap(), empty);
    }
}
