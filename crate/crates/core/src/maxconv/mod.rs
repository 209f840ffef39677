//! Max-convolution of finitely supported weights on `Z` and the weighted
//! discrete Prékopa–Leindler sum.

mod lifted;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use lifted::{lifted_l2_sq, verify_pl_continuous, verify_star1, ContinuousPlReport, LiftedFn, Star1Report};

/// Below this magnitude the ratios `(e^x - 1)/x` use a truncated series.
pub const SERIES_CUTOFF: f64 = 1e-4;

/// A finitely supported function `Z -> [0, inf)`. Zero values are not stored.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<i64, f64>", into = "BTreeMap<i64, f64>")]
pub struct WeightFn {
    values: BTreeMap<i64, f64>,
}

impl WeightFn {
    pub fn new<I: IntoIterator<Item = (i64, f64)>>(pairs: I) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (n, v) in pairs {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidWeight { at: n, value: v });
            }
            if v > 0.0 {
                values.insert(n, v);
            } else {
                values.remove(&n);
            }
        }
        Ok(WeightFn { values })
    }

    /// The indicator of `{n}`.
    pub fn delta(n: i64) -> Self {
        WeightFn { values: BTreeMap::from([(n, 1.0)]) }
    }

    pub fn eval(&self, n: i64) -> f64 {
        self.values.get(&n).copied().unwrap_or(0.0)
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.values.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.values.iter().map(|(&n, &v)| (n, v))
    }

    /// Smallest and largest support points.
    pub fn support_range(&self) -> Option<(i64, i64)> {
        Some((*self.values.keys().next()?, *self.values.keys().next_back()?))
    }

    pub fn max_value(&self) -> f64 {
        self.values.values().copied().fold(0.0, f64::max)
    }

    pub fn scale(&self, c: f64) -> Result<WeightFn> {
        WeightFn::new(self.iter().map(|(n, v)| (n, c * v)))
    }

    pub fn shift(&self, k: i64) -> WeightFn {
        WeightFn { values: self.iter().map(|(n, v)| (n + k, v)).collect() }
    }

    pub fn norm_sq(&self) -> f64 {
        self.values.values().map(|v| v * v).sum()
    }

    pub fn l2_norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }
}

impl TryFrom<BTreeMap<i64, f64>> for WeightFn {
    type Error = Error;

    fn try_from(map: BTreeMap<i64, f64>) -> Result<Self> {
        WeightFn::new(map)
    }
}

impl From<WeightFn> for BTreeMap<i64, f64> {
    fn from(w: WeightFn) -> Self {
        w.values
    }
}

/// Inline form `n:v,n:v,...`, e.g. `0:1,1:1.5`. The empty string is the zero
/// function.
impl FromStr for WeightFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |message: String| Error::Parse { line: 1, message };
        let pairs = s
            .split(',')
            .map(str::trim)
            .filter(|part| !part.is_empty())
            .map(|part| {
                let (n, v) = part.split_once(':').ok_or_else(|| bad(format!("expected n:value, got {part:?}")))?;
                let n = n.trim().parse::<i64>().map_err(|e| bad(format!("{n:?}: {e}")))?;
                let v = v.trim().parse::<f64>().map_err(|e| bad(format!("{v:?}: {e}")))?;
                Ok((n, v))
            })
            .collect::<Result<Vec<_>>>()?;
        WeightFn::new(pairs)
    }
}

impl fmt::Display for WeightFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, v)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}:{v}")?;
        }
        Ok(())
    }
}

/// `(a * b)(n) = max_m a(n - m) b(m)`.
pub fn max_convolve(a: &WeightFn, b: &WeightFn) -> WeightFn {
    let mut values: BTreeMap<i64, f64> = BTreeMap::new();
    for (i, x) in a.iter() {
        for (j, y) in b.iter() {
            let slot = values.entry(i + j).or_insert(0.0);
            *slot = slot.max(x * y);
        }
    }
    WeightFn { values }
}

pub fn l2_norm(a: &WeightFn) -> f64 {
    a.l2_norm()
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    Ok(())
}

/// `sum_n max(p c(n), (1 - p) c(n - 1))` where `c` is the max-convolution.
pub fn weighted_pl_sum(a: &WeightFn, b: &WeightFn, p: f64) -> Result<f64> {
    check_probability(p)?;
    Ok(shifted_max_sum(&max_convolve(a, b), p, 1.0 - p))
}

/// `sum_n max(w0 c(n), w1 c(n - 1))` over the finite support of both terms.
pub(crate) fn shifted_max_sum(c: &WeightFn, w0: f64, w1: f64) -> f64 {
    let mut keys: Vec<i64> = c.support().flat_map(|n| [n, n + 1]).collect();
    keys.sort_unstable();
    keys.dedup();
    keys.into_iter().map(|n| (w0 * c.eval(n)).max(w1 * c.eval(n - 1))).sum()
}

/// Both sides of the weighted discrete Prékopa–Leindler inequality.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlReport {
    pub p: f64,
    /// The weighted sum.
    pub lhs: f64,
    /// `|a|_2 |b|_2`.
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
}

pub fn check_prop21(a: &WeightFn, b: &WeightFn, p: f64, rel_tol: f64) -> Result<PlReport> {
    let lhs = weighted_pl_sum(a, b, p)?;
    let rhs = a.l2_norm() * b.l2_norm();
    Ok(PlReport { p, lhs, rhs, slack: lhs - rhs, holds: lhs >= rhs * (1.0 - rel_tol) })
}

/// `log(1/p - 1)`, the exponent with `p = 1 / (e^lambda + 1)`.
pub fn lambda_of_p(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidProbability(p));
    }
    Ok((1.0 / p - 1.0).ln())
}

/// `(e^x - 1) / x`, equal to 1 at `x = 0`.
pub fn exp_ratio(x: f64) -> f64 {
    if x.abs() < SERIES_CUTOFF {
        1.0 + x / 2.0 + x * x / 6.0 + x * x * x / 24.0
    } else {
        x.exp_m1() / x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones(support: &[i64]) -> WeightFn {
        WeightFn::new(support.iter().map(|&n| (n, 1.0))).unwrap()
    }

    #[test]
    fn convolution_examples() {
        assert_eq!(max_convolve(&WeightFn::delta(0), &WeightFn::delta(0)), WeightFn::delta(0));
        assert_eq!(max_convolve(&ones(&[0, 1]), &ones(&[0, 1])), ones(&[0, 1, 2]));
        let a = WeightFn::new([(0, 2.0)]).unwrap();
        let b = WeightFn::new([(5, 3.0)]).unwrap();
        assert_eq!(max_convolve(&a, &b), WeightFn::new([(5, 6.0)]).unwrap());
        assert!(max_convolve(&a, &WeightFn::default()).is_empty());
    }

    #[test]
    fn norms() {
        assert_eq!(l2_norm(&WeightFn::delta(0)), 1.0);
        assert!((l2_norm(&ones(&[0, 1])) - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(l2_norm(&WeightFn::new([(0, 3.0), (1, 4.0)]).unwrap()), 5.0);
        assert_eq!(l2_norm(&WeightFn::default()), 0.0);
    }

    #[test]
    fn weighted_sum_examples() {
        let d = WeightFn::delta(0);
        assert!((weighted_pl_sum(&d, &d, 0.3).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(weighted_pl_sum(&ones(&[0, 1]), &ones(&[0, 1]), 0.5).unwrap(), 2.0);
        assert_eq!(weighted_pl_sum(&d, &d, 1.0).unwrap(), 1.0);
        assert_eq!(weighted_pl_sum(&d, &d, 0.0).unwrap(), 1.0);
        assert_eq!(weighted_pl_sum(&d, &d, 1.2), Err(Error::InvalidProbability(1.2)));
        assert!(weighted_pl_sum(&d, &d, f64::NAN).is_err());
    }

    #[test]
    fn prop21_examples() {
        let d = WeightFn::delta(0);
        for p in [0.0, 0.2, 0.5, 0.9, 1.0] {
            let r = check_prop21(&d, &d, p, 1e-9).unwrap();
            assert!((r.lhs - 1.0).abs() < 1e-15 && r.rhs == 1.0 && r.holds);
        }
        let r = check_prop21(&ones(&[0, 1]), &ones(&[0, 1]), 0.5, 1e-9).unwrap();
        assert_eq!(r.lhs, 2.0);
        assert!((r.rhs - 2.0).abs() < 1e-15 && r.slack.abs() < 1e-15 && r.holds);

        let r = check_prop21(&d, &ones(&[0, 1]), 0.5, 1e-9).unwrap();
        assert_eq!(r.lhs, 1.5);
        assert!((r.rhs - 2f64.sqrt()).abs() < 1e-15);
        assert!(r.holds);
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_of_p(0.5).unwrap(), 0.0);
        let p = 1.0 / (std::f64::consts::E + 1.0);
        assert!((lambda_of_p(p).unwrap() - 1.0).abs() < 1e-14);
        assert!((lambda_of_p(0.25).unwrap() - 1.098_612_288_668_109_8).abs() < 1e-14);
        assert!(lambda_of_p(0.0).is_err());
        assert!(lambda_of_p(1.0).is_err());
    }

    #[test]
    fn exp_ratio_is_continuous_at_cutoff() {
        assert_eq!(exp_ratio(0.0), 1.0);
        for x in [SERIES_CUTOFF, -SERIES_CUTOFF] {
            let below = exp_ratio(x * (1.0 - 1e-12));
            assert!((below - x.exp_m1() / x).abs() < 1e-15);
        }
        assert!((exp_ratio(1.0) - (std::f64::consts::E - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn inline_and_json_forms() {
        let w: WeightFn = "0:1, 1:1.5".parse().unwrap();
        assert_eq!(w, WeightFn::new([(0, 1.0), (1, 1.5)]).unwrap());
        assert_eq!(w.to_string().parse::<WeightFn>().unwrap(), w);
        assert!("".parse::<WeightFn>().unwrap().is_empty());
        assert!("0:-1".parse::<WeightFn>().is_err());
        assert!("0=1".parse::<WeightFn>().is_err());
        assert_eq!("3:0".parse::<WeightFn>().unwrap(), WeightFn::default());

        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, r#"{"0":1.0,"1":1.5}"#);
        assert_eq!(serde_json::from_str::<WeightFn>(&json).unwrap(), w);
        assert!(serde_json::from_str::<WeightFn>(r#"{"0":-2}"#).is_err());
    }

    #[test]
    fn prekopa_half_form() {
        let a = WeightFn::new([(0, 1.0), (2, 3.0)]).unwrap();
        let b = WeightFn::new([(-1, 2.0), (1, 0.5)]).unwrap();
        let c = max_convolve(&a, &b);
        let half = 0.5 * shifted_max_sum(&c, 1.0, 1.0);
        assert!((weighted_pl_sum(&a, &b, 0.5).unwrap() - half).abs() < 1e-12);
    }
}
