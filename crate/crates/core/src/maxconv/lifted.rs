//! Piecewise-exponential lifts `f(x) = e^{lambda {x}} a(floor x)` of weights on
//! `Z` to functions on `R`, and grid checks of the continuous inequalities
//! they satisfy.
//!
//! The sampled max-convolution takes `y` on two staggered grids (offsets `h/4`
//! and `3h/4` inside each cell of width `h = 1/grid`), evaluated for `x` at the
//! cell midpoints. Restricting the supremum to sampled `y` can only lower the
//! value, so the continuous Prékopa–Leindler check is one-sided sound.

use serde::{Deserialize, Serialize};

use super::{exp_ratio, lambda_of_p, max_convolve, shifted_max_sum, WeightFn};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftedFn {
    pub base: WeightFn,
    pub lambda: f64,
}

impl LiftedFn {
    pub fn new(base: WeightFn, lambda: f64) -> Self {
        LiftedFn { base, lambda }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let cell = x.floor();
        let v = self.base.eval(cell as i64);
        if v == 0.0 {
            return 0.0;
        }
        (self.lambda * (x - cell)).exp() * v
    }

    /// Closed form of `int f^2`.
    pub fn l2_sq(&self) -> f64 {
        lifted_l2_sq(&self.base, self.lambda)
    }
}

/// `int f^2 = (e^{2 lambda} - 1) / (2 lambda) * |a|_2^2`, with the `lambda -> 0`
/// limit taken through a series.
pub fn lifted_l2_sq(a: &WeightFn, lambda: f64) -> f64 {
    exp_ratio(2.0 * lambda) * a.norm_sq()
}

/// Max-convolution of two lifts, sampled at the midpoints of a uniform grid.
struct SampledConv {
    /// First unit cell covered.
    first_cell: i64,
    grid: usize,
    /// `values[cell * grid + j]` at `x = first_cell + cell + (j + 1/2) / grid`.
    values: Vec<f64>,
}

impl SampledConv {
    fn compute(a: &WeightFn, b: &WeightFn, lambda: f64, grid: usize) -> Option<Self> {
        let (a_lo, a_hi) = a.support_range()?;
        let (b_lo, b_hi) = b.support_range()?;
        let a_dense: Vec<f64> = (a_lo..=a_hi).map(|n| a.eval(n)).collect();
        let a_at = |cell: i64| {
            if cell < a_lo || cell > a_hi {
                0.0
            } else {
                a_dense[(cell - a_lo) as usize]
            }
        };

        // positions in quarter steps: one cell is `q` units
        let g = grid as i64;
        let q = 4 * g;
        let exps: Vec<f64> = (0..q).map(|r| (lambda * r as f64 / q as f64).exp()).collect();
        let y_samples: Vec<(i64, f64)> = b
            .iter()
            .flat_map(|(m, bm)| {
                let exps = &exps;
                (0..g).flat_map(move |k| {
                    [1, 3].map(|off| {
                        let r = 4 * k + off;
                        (q * m + r, bm * exps[r as usize])
                    })
                })
            })
            .collect();

        let first_cell = a_lo + b_lo;
        let cells = (a_hi + b_hi + 2 - first_cell) as usize;
        let mut values = vec![0.0; cells * grid];
        for (idx, slot) in values.iter_mut().enumerate() {
            let n = first_cell + (idx / grid) as i64;
            let j = (idx % grid) as i64;
            let x = q * n + 4 * j + 2;
            let mut best = 0.0f64;
            for &(y, gy) in &y_samples {
                let d = x - y;
                let fa = a_at(d.div_euclid(q));
                if fa > 0.0 {
                    best = best.max(fa * exps[d.rem_euclid(q) as usize] * gy);
                }
            }
            *slot = best;
        }
        Some(SampledConv { first_cell, grid, values })
    }

    fn cells(&self) -> usize {
        self.values.len() / self.grid
    }

    fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.grid as f64
    }

    fn points(&self) -> impl Iterator<Item = (i64, f64, f64)> + '_ {
        self.values.iter().enumerate().map(move |(idx, &v)| {
            let n = self.first_cell + (idx / self.grid) as i64;
            let t = ((idx % self.grid) as f64 + 0.5) / self.grid as f64;
            (n, t, v)
        })
    }
}

/// Bound on the midpoint-rule error for a function that on each subcell of
/// width `1/grid` is a positive multiple of `e^{lambda t}` and bounded by `peak`.
fn oscillation_allowance(cells: usize, peak: f64, lambda: f64, grid: usize) -> f64 {
    cells as f64 * peak * (lambda.abs() / grid as f64).exp_m1()
}

fn peak_bound(a: &WeightFn, b: &WeightFn, lambda: f64) -> f64 {
    let lift = lambda.exp().max(1.0);
    a.max_value() * b.max_value() * lift * lift
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Star1Report {
    pub p: f64,
    pub lambda: f64,
    pub grid_per_cell: usize,
    pub refined: bool,
    /// Midpoint-rule value of `int f * g` from the sampled convolution.
    pub integral: f64,
    /// `(e^lambda - 1)/lambda * sum_n max(c(n), e^lambda c(n-1))`.
    pub bound: f64,
    pub allowance: f64,
    pub pointwise_checked: usize,
    /// Largest `sampled / envelope - 1` over grid points with a nonzero envelope.
    pub pointwise_max_excess: f64,
    pub pointwise_holds: bool,
    pub integral_holds: bool,
    pub holds: bool,
}

/// Checks the upper bound on `int f * g` obtained by integrating the pointwise
/// envelope `e^{lambda t} max(c(n), e^lambda c(n-1))` over each cell.
pub fn verify_star1(a: &WeightFn, b: &WeightFn, p: f64, grid_per_cell: usize, rel_tol: f64) -> Result<Star1Report> {
    if grid_per_cell < 2 {
        return Err(Error::GridTooCoarse(grid_per_cell));
    }
    let lambda = lambda_of_p(p)?;
    let first = star1_at(a, b, p, lambda, grid_per_cell, rel_tol);
    if first.holds {
        return Ok(first);
    }
    let mut again = star1_at(a, b, p, lambda, grid_per_cell * 4, rel_tol);
    again.refined = true;
    Ok(again)
}

fn star1_at(a: &WeightFn, b: &WeightFn, p: f64, lambda: f64, grid: usize, rel_tol: f64) -> Star1Report {
    let c = max_convolve(a, b);
    let e_lambda = lambda.exp();
    let bound = exp_ratio(lambda) * shifted_max_sum(&c, 1.0, e_lambda);
    let mut report = Star1Report {
        p,
        lambda,
        grid_per_cell: grid,
        refined: false,
        integral: 0.0,
        bound,
        allowance: 0.0,
        pointwise_checked: 0,
        pointwise_max_excess: 0.0,
        pointwise_holds: true,
        integral_holds: true,
        holds: true,
    };
    let Some(conv) = SampledConv::compute(a, b, lambda, grid) else {
        return report;
    };
    let mut max_excess = f64::NEG_INFINITY;
    let mut pointwise_holds = true;
    for (n, t, v) in conv.points() {
        let envelope = (lambda * t).exp() * c.eval(n).max(e_lambda * c.eval(n - 1));
        report.pointwise_checked += 1;
        if envelope > 0.0 {
            max_excess = max_excess.max(v / envelope - 1.0);
        }
        if v > envelope * (1.0 + rel_tol) {
            pointwise_holds = false;
        }
    }
    report.pointwise_max_excess = if max_excess.is_finite() { max_excess } else { 0.0 };
    report.integral = conv.integral();
    report.allowance =
        oscillation_allowance(conv.cells(), peak_bound(a, b, lambda), lambda, grid) + rel_tol * bound.abs();
    report.integral_holds = report.integral <= bound + report.allowance;
    report.pointwise_holds = pointwise_holds;
    report.holds = report.pointwise_holds && report.integral_holds;
    report
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContinuousPlReport {
    pub lambda: f64,
    pub grid_per_cell: usize,
    pub refined: bool,
    /// Grid lower estimate of `int f * g`.
    pub lhs: f64,
    /// `2 |f|_2 |g|_2` from the closed-form norms.
    pub rhs: f64,
    pub f_norm_sq: f64,
    pub g_norm_sq: f64,
    pub allowance: f64,
    pub holds: bool,
}

/// Checks `int f * g >= 2 |f|_2 |g|_2` for the lifts of `a` and `b`.
pub fn verify_pl_continuous(
    a: &WeightFn,
    b: &WeightFn,
    lambda: f64,
    grid_per_cell: usize,
    rel_tol: f64,
) -> Result<ContinuousPlReport> {
    if grid_per_cell < 2 {
        return Err(Error::GridTooCoarse(grid_per_cell));
    }
    let first = pl_at(a, b, lambda, grid_per_cell, rel_tol);
    if first.holds {
        return Ok(first);
    }
    let mut again = pl_at(a, b, lambda, grid_per_cell * 4, rel_tol);
    again.refined = true;
    Ok(again)
}

fn pl_at(a: &WeightFn, b: &WeightFn, lambda: f64, grid: usize, rel_tol: f64) -> ContinuousPlReport {
    let f_norm_sq = lifted_l2_sq(a, lambda);
    let g_norm_sq = lifted_l2_sq(b, lambda);
    let rhs = 2.0 * (f_norm_sq * g_norm_sq).sqrt();
    let (lhs, cells) = match SampledConv::compute(a, b, lambda, grid) {
        Some(conv) => (conv.integral(), conv.cells()),
        None => (0.0, 0),
    };
    let allowance = oscillation_allowance(cells, peak_bound(a, b, lambda), lambda, grid) + rel_tol * rhs;
    ContinuousPlReport {
        lambda,
        grid_per_cell: grid,
        refined: false,
        lhs,
        rhs,
        f_norm_sq,
        g_norm_sq,
        allowance,
        holds: lhs >= rhs - allowance,
    }
}
