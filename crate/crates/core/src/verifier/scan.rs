//! Exhaustive scans over small boxes.
//!
//! `A` and `B` range over translation classes of subsets of a box (each in
//! canonical position), `U` over a fixed family of sets inside quasicubes.
//! Work is split by `A` candidate; per-chunk statistics merge in candidate
//! order, so the summary does not depend on the worker count.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bigfmt;
use super::check::CheckReport;
use crate::error::{Error, Result};
use crate::lattice::{BoxBounds, Point, PointSet};
use crate::quasicube::contained_in_quasicube;

pub const MAX_SCAN_DIM: usize = 4;
pub const MAX_SCAN_SIDE: i64 = 6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum USource {
    /// Every nonempty subset of the given set, which must lie in a quasicube.
    SubsetsOf(PointSet),
    /// Every nonempty subset of the box that lies in a quasicube, optionally
    /// capped in size.
    InBox { bounds: BoxBounds, max_size: Option<usize> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanSpec {
    pub ab_box: BoxBounds,
    pub max_a: usize,
    pub max_b: usize,
    pub u_source: USource,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub a: PointSet,
    pub b: PointSet,
    pub u: PointSet,
    /// `|A + B + U|`.
    pub lhs: usize,
    #[serde(with = "bigfmt::ratio")]
    pub ratio_sq: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub dim: usize,
    pub estimate: u128,
    pub a_candidates: usize,
    pub b_candidates: usize,
    pub u_candidates: usize,
    pub instances: u64,
    pub violations: u64,
    pub violation_instances: Vec<Instance>,
    pub equalities: u64,
    pub equality_instances: Vec<Instance>,
    #[serde(with = "bigfmt::opt_ratio")]
    pub min_ratio_sq: Option<BigRational>,
    /// Number of instances attaining the minimum.
    pub min_ratio_count: u64,
    pub min_ratio_instances: Vec<Instance>,
    /// Cap applied to each recorded instance list.
    pub max_recorded: usize,
}

impl ScanSummary {
    pub fn is_clean(&self) -> bool {
        self.violations == 0
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn subsets_up_to(n: u128, max: usize) -> u128 {
    (1..=max as u128).fold(0u128, |acc, k| acc.saturating_add(binomial(n, k)))
}

fn check_box(b: &BoxBounds) -> Result<()> {
    if b.dim() > MAX_SCAN_DIM {
        return Err(Error::ScanLimits(format!("dimension {} > {MAX_SCAN_DIM}", b.dim())));
    }
    if let Some(axis) = (0..b.dim()).find(|&i| b.side(i) > MAX_SCAN_SIDE) {
        return Err(Error::ScanLimits(format!("box side {} > {MAX_SCAN_SIDE} on axis {axis}", b.side(axis))));
    }
    Ok(())
}

/// Upper bound on the number of instances, computed before enumerating.
pub fn estimate_search_space(spec: &ScanSpec) -> Result<u128> {
    check_box(&spec.ab_box)?;
    let n = spec.ab_box.num_points();
    let u_count = match &spec.u_source {
        USource::SubsetsOf(s) => {
            if s.dim() != spec.ab_box.dim() {
                return Err(Error::DimensionMismatch { expected: spec.ab_box.dim(), found: s.dim() });
            }
            if s.len() > 2usize.pow(MAX_SCAN_DIM as u32) {
                return Err(Error::NotInQuasicube);
            }
            (1u128 << s.len()) - 1
        }
        USource::InBox { bounds, max_size } => {
            check_box(bounds)?;
            if bounds.dim() != spec.ab_box.dim() {
                return Err(Error::DimensionMismatch { expected: spec.ab_box.dim(), found: bounds.dim() });
            }
            let cap = 1usize << bounds.dim();
            subsets_up_to(bounds.num_points(), max_size.map_or(cap, |m| m.min(cap)))
        }
    };
    Ok(subsets_up_to(n, spec.max_a).saturating_mul(subsets_up_to(n, spec.max_b)).saturating_mul(u_count))
}

/// Index combinations of `0..n` of size `k`, lexicographic.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn subsets(points: &[Point], dim: usize, max: usize) -> impl Iterator<Item = PointSet> + '_ {
    (1..=max.min(points.len())).flat_map(move |k| {
        combinations(points.len(), k)
            .into_iter()
            .map(move |c| PointSet::new(dim, c.into_iter().map(|i| points[i].clone())).expect("box points"))
    })
}

/// Canonical representatives of translation classes of nonempty subsets of
/// the box with at most `max` points, sorted.
pub(crate) fn canonical_candidates(bounds: &BoxBounds, max: usize) -> Vec<PointSet> {
    let points = bounds.points();
    let set: BTreeSet<PointSet> =
        subsets(&points, bounds.dim(), max).map(|s| s.canonicalize().expect("nonempty")).collect();
    set.into_iter().collect()
}

fn u_candidates(source: &USource) -> Result<Vec<PointSet>> {
    match source {
        USource::SubsetsOf(s) => {
            if s.is_empty() || contained_in_quasicube(s)?.is_none() {
                return Err(Error::NotInQuasicube);
            }
            let points: Vec<Point> = s.iter().cloned().collect();
            Ok(subsets(&points, s.dim(), points.len()).collect())
        }
        USource::InBox { bounds, max_size } => {
            let points = bounds.points();
            let cap = (1usize << bounds.dim()).min(max_size.unwrap_or(usize::MAX));
            Ok(subsets(&points, bounds.dim(), cap)
                .filter(|u| matches!(contained_in_quasicube(u), Ok(Some(_))))
                .collect())
        }
    }
}

#[derive(Default)]
struct Stats {
    instances: u64,
    violations: u64,
    violation_instances: Vec<Instance>,
    equalities: u64,
    equality_instances: Vec<Instance>,
    min_ratio: Option<BigRational>,
    min_count: u64,
    min_instances: Vec<Instance>,
}

impl Stats {
    fn push_capped(list: &mut Vec<Instance>, items: impl IntoIterator<Item = Instance>, cap: usize) {
        for item in items {
            if list.len() >= cap {
                break;
            }
            list.push(item);
        }
    }

    fn record(&mut self, make: impl Fn() -> Instance, report: &CheckReport, cap: usize) {
        self.instances += 1;
        let ratio = report.ratio_sq.as_ref().expect("nonempty operands");
        if !report.holds {
            self.violations += 1;
            if self.violation_instances.len() < cap {
                self.violation_instances.push(make());
            }
        }
        if report.equality {
            self.equalities += 1;
            if self.equality_instances.len() < cap {
                self.equality_instances.push(make());
            }
        }
        match self.min_ratio.as_ref().map(|m| ratio.cmp(m)) {
            None | Some(Ordering::Less) => {
                self.min_ratio = Some(ratio.clone());
                self.min_count = 1;
                self.min_instances = vec![make()];
            }
            Some(Ordering::Equal) => {
                self.min_count += 1;
                if self.min_instances.len() < cap {
                    self.min_instances.push(make());
                }
            }
            Some(Ordering::Greater) => {}
        }
    }

    /// Appends `later`, which covers instances after all of `self`'s.
    fn merge(mut self, later: Stats, cap: usize) -> Stats {
        self.instances += later.instances;
        self.violations += later.violations;
        Self::push_capped(&mut self.violation_instances, later.violation_instances, cap);
        self.equalities += later.equalities;
        Self::push_capped(&mut self.equality_instances, later.equality_instances, cap);
        match (&self.min_ratio, later.min_ratio) {
            (_, None) => {}
            (None, Some(r)) => {
                self.min_ratio = Some(r);
                self.min_count = later.min_count;
                self.min_instances = later.min_instances;
            }
            (Some(mine), Some(r)) => match r.cmp(mine) {
                Ordering::Less => {
                    self.min_ratio = Some(r);
                    self.min_count = later.min_count;
                    self.min_instances = later.min_instances;
                }
                Ordering::Equal => {
                    self.min_count += later.min_count;
                    Self::push_capped(&mut self.min_instances, later.min_instances, cap);
                }
                Ordering::Greater => {}
            },
        }
        self
    }
}

/// Runs the scan on `workers` threads. Refuses when the up-front estimate
/// exceeds `budget`.
pub fn exhaustive_scan(spec: &ScanSpec, budget: u64, workers: usize, max_recorded: usize) -> Result<ScanSummary> {
    let estimate = estimate_search_space(spec)?;
    if estimate > budget as u128 {
        return Err(Error::BudgetExceeded { estimate, budget: budget as u128 });
    }
    let dim = spec.ab_box.dim();
    let a_cands = canonical_candidates(&spec.ab_box, spec.max_a);
    let b_cands = canonical_candidates(&spec.ab_box, spec.max_b);
    let u_cands = u_candidates(&spec.u_source)?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let chunks: Vec<Stats> = pool.install(|| {
        a_cands
            .par_iter()
            .map(|a| {
                let mut stats = Stats::default();
                for b in &b_cands {
                    let ab = a.sumset(b).expect("same dimension");
                    for u in &u_cands {
                        let s = ab.sumset(u).expect("same dimension");
                        let report = CheckReport::from_sizes(s.len(), a.len(), b.len(), u.len());
                        let make = || Instance {
                            a: a.clone(),
                            b: b.clone(),
                            u: u.clone(),
                            lhs: s.len(),
                            ratio_sq: report.ratio_sq.clone().expect("nonempty"),
                        };
                        stats.record(make, &report, max_recorded);
                    }
                }
                stats
            })
            .collect()
    });
    let total = chunks.into_iter().fold(Stats::default(), |acc, c| acc.merge(c, max_recorded));

    Ok(ScanSummary {
        dim,
        estimate,
        a_candidates: a_cands.len(),
        b_candidates: b_cands.len(),
        u_candidates: u_cands.len(),
        instances: total.instances,
        violations: total.violations,
        violation_instances: total.violation_instances,
        equalities: total.equalities,
        equality_instances: total.equality_instances,
        min_ratio_sq: total.min_ratio,
        min_ratio_count: total.min_count,
        min_ratio_instances: total.min_instances,
        max_recorded,
    })
}
