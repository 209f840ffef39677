//! Step-by-step replay of the induction on dimension that proves the sumset
//! bound, with every intermediate claim re-checked on the concrete instance.
//!
//! After translating so the quasicube's two heights are `0` and `q`:
//!
//! * `q = 1`: fibre the sets over the final axis. The fibre of `A + B + U`
//!   above `n` contains `A_x + B_y + U_0` (`x + y = n`) and `A_x + B_y + U_1`
//!   (`x + y = n - 1`); a child trace bounds each of those one dimension down,
//!   and the weighted Prékopa–Leindler sum with `a(x) = |A_x|^{1/2}`,
//!   `b(y) = |B_y|^{1/2}`, `p = |U_0|/|U|` finishes the step. In dimension 1 the
//!   fibres are single points and the step is the base case.
//! * `q > 1`: foliate `A` and `B` mod `q`. For the largest class `A_{r*}`, the
//!   sets `A_{r*} + B_s + U` are disjoint in `s`, and each is bounded by a
//!   rescaled `q = 1` child trace; symmetrically for `B_{s*}`. Multiplying the
//!   two bounds gives the claim.
//!
//! Cardinality steps are exact; steps involving square roots use a relative
//! tolerance.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Point, PointSet};
use crate::maxconv::{check_prop21, max_convolve, PlReport, WeightFn};
use crate::quasicube::{contained_in_quasicube, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// Dimension 1 with heights `{0, 1}`.
    Base,
    /// Dimension >= 2 with heights `{0, 1}`.
    Fibering,
    /// Heights `{0, q}` with `q > 1`.
    Foliation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Ge,
    Eq,
    ApproxEq,
    Subset,
    Disjoint,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Ge => ">=",
            Relation::Eq => "==",
            Relation::ApproxEq => "~=",
            Relation::Subset => "subset of",
            Relation::Disjoint => "disjoint",
        })
    }
}

/// One re-checked claim.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub label: String,
    pub lhs: String,
    pub relation: Relation,
    pub rhs: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberSizes {
    pub n: i64,
    pub a: usize,
    pub b: usize,
    pub u: usize,
}

/// Contribution of one fibre of `A + B + U`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SumRow {
    pub n: i64,
    /// `|(A + B + U)_n|`.
    pub sumset: usize,
    /// `max(|U_0| max_{x+y=n} (|A_x||B_y|)^{1/2}, |U_1| max_{x+y=n-1} (|A_x||B_y|)^{1/2})`.
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberingDetail {
    pub u0: usize,
    pub u1: usize,
    pub p: f64,
    pub a: WeightFn,
    pub b: WeightFn,
    pub fibers: Vec<FiberSizes>,
    pub rows: Vec<SumRow>,
    pub prop21: PlReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FoliationDetail {
    pub q: i64,
    /// `(r, |A_r|)` for nonempty classes.
    pub a_classes: Vec<(i64, usize)>,
    pub b_classes: Vec<(i64, usize)>,
    pub r_star: i64,
    pub s_star: i64,
    /// `(s, |A_{r*} + B_s + U|)`.
    pub eq1_terms: Vec<(i64, usize)>,
    /// `(r, |A_r + B_{s*} + U|)`.
    pub eq2_terms: Vec<(i64, usize)>,
    /// `|U| |A_{r*}|^{1/2} sum_s |B_s|^{1/2}`.
    pub eq1_bound: f64,
    /// `|U| |B_{s*}|^{1/2} sum_r |A_r|^{1/2}`.
    pub eq2_bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChildTrace {
    pub role: String,
    pub trace: ProofTrace,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProofTrace {
    pub dim: usize,
    pub a_len: usize,
    pub b_len: usize,
    pub u_len: usize,
    /// Exact `|A + B + U|`.
    pub sumset_len: usize,
    /// Quasicube containing `U`, before normalization.
    pub witness: Witness,
    /// Translation applied to the final coordinate of `U`.
    pub shift: i64,
    pub q: i64,
    pub branch: Branch,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fibering: Option<FiberingDetail>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub foliation: Option<FoliationDetail>,
    pub steps: Vec<Step>,
    pub children: Vec<ChildTrace>,
    /// `|U| (|A||B|)^{1/2}`, the bound the proof establishes.
    pub final_bound: f64,
    /// All steps hold here and in every child.
    pub valid: bool,
}

impl ProofTrace {
    /// Exact check that the established bound does not exceed `|A + B + U|`.
    pub fn bound_respected(&self) -> bool {
        let bound_sq = BigUint::from(self.u_len).pow(2) * self.a_len * self.b_len;
        BigUint::from(self.sumset_len).pow(2) >= bound_sq
    }

    /// Total number of traces in the tree, including this one.
    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(|c| c.trace.node_count()).sum::<usize>()
    }

    pub fn failed_steps(&self) -> Vec<&Step> {
        let mut out: Vec<&Step> = self.steps.iter().filter(|s| !s.holds).collect();
        for c in &self.children {
            out.extend(c.trace.failed_steps());
        }
        out
    }

    /// Indented human-readable form. Children deeper than `max_depth` are
    /// summarized by count.
    pub fn render_text(&self, max_depth: usize) -> String {
        let mut out = String::new();
        self.render_into(&mut out, 0, max_depth, "instance");
        out
    }

    fn render_into(&self, out: &mut String, depth: usize, max_depth: usize, role: &str) {
        let pad = "  ".repeat(depth);
        let _ = writeln!(
            out,
            "{pad}[{}] {role}: d={} |A|={} |B|={} |U|={} |A+B+U|={} q={} shift={} branch={:?} bound={:.6}",
            if self.valid { "VALID" } else { "INVALID" },
            self.dim,
            self.a_len,
            self.b_len,
            self.u_len,
            self.sumset_len,
            self.q,
            self.shift,
            self.branch,
            self.final_bound,
        );
        if let Some(f) = &self.fibering {
            let _ = writeln!(out, "{pad}  p = {}/{} = {:.6}; a = {}; b = {}", f.u0, self.u_len, f.p, f.a, f.b);
            for r in &f.rows {
                let _ = writeln!(out, "{pad}  fibre {:>3}: |S_n| = {:>4}  bound = {:.6}", r.n, r.sumset, r.bound);
            }
        }
        if let Some(f) = &self.foliation {
            let _ = writeln!(
                out,
                "{pad}  q = {}; A classes {:?}; B classes {:?}; r* = {}; s* = {}",
                f.q, f.a_classes, f.b_classes, f.r_star, f.s_star
            );
            let _ = writeln!(out, "{pad}  eq1 = {:.6}; eq2 = {:.6}", f.eq1_bound, f.eq2_bound);
        }
        for s in &self.steps {
            let _ = writeln!(
                out,
                "{pad}  {} {}: {} {} {}",
                if s.holds { "ok  " } else { "FAIL" },
                s.label,
                s.lhs,
                s.relation,
                s.rhs
            );
        }
        if depth >= max_depth {
            if !self.children.is_empty() {
                let _ = writeln!(out, "{pad}  ({} child traces not shown)", self.children.len());
            }
            return;
        }
        for c in &self.children {
            c.trace.render_into(out, depth + 1, max_depth, &c.role);
        }
    }
}

/// Replays the proof for `U` inside the quasicube found by
/// [`contained_in_quasicube`].
pub fn proof_trace(a: &PointSet, b: &PointSet, u: &PointSet, rel_tol: f64) -> Result<ProofTrace> {
    let witness = contained_in_quasicube(u)?.ok_or(Error::NotInQuasicube)?;
    proof_trace_with_witness(a, b, u, &witness, rel_tol)
}

/// Replays the proof using a caller-supplied quasicube containing `U`.
pub fn proof_trace_with_witness(
    a: &PointSet,
    b: &PointSet,
    u: &PointSet,
    witness: &Witness,
    rel_tol: f64,
) -> Result<ProofTrace> {
    for other in [b, u] {
        if other.dim() != a.dim() {
            return Err(Error::DimensionMismatch { expected: a.dim(), found: other.dim() });
        }
    }
    if a.is_empty() || b.is_empty() || u.is_empty() {
        return Err(Error::EmptySet);
    }
    witness.validate()?;
    if witness.dim() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: witness.dim() });
    }
    if !u.is_subset(&witness.materialize()) {
        return Err(Error::NotInQuasicube);
    }
    Ok(Tracer { rel_tol }.trace(a, b, u, witness))
}

/// A fibre, which for one-dimensional sets is a single point of `Z^0`.
#[derive(Clone, Debug, PartialEq)]
enum Fiber {
    Point,
    Set(PointSet),
}

impl Fiber {
    fn len(&self) -> usize {
        match self {
            Fiber::Point => 1,
            Fiber::Set(s) => s.len(),
        }
    }

    fn sum3(x: &Fiber, y: &Fiber, z: &Fiber) -> Fiber {
        match (x, y, z) {
            (Fiber::Set(x), Fiber::Set(y), Fiber::Set(z)) => {
                Fiber::Set(x.sumset(y).and_then(|s| s.sumset(z)).expect("fibres share a dimension"))
            }
            _ => Fiber::Point,
        }
    }

    fn is_subset(&self, other: &Fiber) -> bool {
        match (self, other) {
            (Fiber::Set(x), Fiber::Set(y)) => x.is_subset(y),
            (Fiber::Point, Fiber::Point) => true,
            _ => false,
        }
    }
}

fn fibers_of(set: &PointSet) -> BTreeMap<i64, Fiber> {
    if set.dim() == 1 {
        return set.iter().map(|p| (p.last(), Fiber::Point)).collect();
    }
    set.fibers().expect("dimension >= 2").into_iter().map(|(n, s)| (n, Fiber::Set(s))).collect()
}

/// Maps the class with last coordinate `= residue (mod q)` onto consecutive
/// heights.
fn rescale(set: &PointSet, residue: i64, q: i64) -> PointSet {
    let points = set.iter().map(|p| {
        let mut c = p.coords().to_vec();
        let last = c.last_mut().expect("dimension >= 1");
        debug_assert_eq!((*last - residue).rem_euclid(q), 0);
        *last = (*last - residue).div_euclid(q);
        Point::new(c)
    });
    PointSet::new(set.dim(), points).expect("dimension preserved")
}

fn approx_ge(lhs: f64, rhs: f64, rel_tol: f64) -> bool {
    lhs >= rhs - rel_tol * rhs.abs().max(lhs.abs())
}

fn approx_eq(lhs: f64, rhs: f64, rel_tol: f64) -> bool {
    (lhs - rhs).abs() <= rel_tol * rhs.abs().max(lhs.abs()).max(f64::MIN_POSITIVE)
}

struct Tracer {
    rel_tol: f64,
}

struct Builder {
    steps: Vec<Step>,
    children: Vec<ChildTrace>,
}

impl Builder {
    fn step(
        &mut self,
        label: impl Into<String>,
        lhs: impl ToString,
        relation: Relation,
        rhs: impl ToString,
        holds: bool,
    ) {
        self.steps.push(Step { label: label.into(), lhs: lhs.to_string(), relation, rhs: rhs.to_string(), holds });
    }

    fn child(&mut self, role: String, trace: ProofTrace) {
        self.children.push(ChildTrace { role, trace });
    }
}

impl Tracer {
    fn trace(&self, a: &PointSet, b: &PointSet, u: &PointSet, witness: &Witness) -> ProofTrace {
        let shift = -witness.x0;
        let q = witness.x1 - witness.x0;
        let u_norm = u.shift_last(shift);
        let w_norm = witness.shift_last(shift);
        let sumset = a.sumset(b).and_then(|s| s.sumset(&u_norm)).expect("dimensions checked");

        let mut builder = Builder { steps: Vec::new(), children: Vec::new() };
        let mut trace = ProofTrace {
            dim: a.dim(),
            a_len: a.len(),
            b_len: b.len(),
            u_len: u.len(),
            sumset_len: sumset.len(),
            witness: witness.clone(),
            shift,
            q,
            branch: Branch::Foliation,
            fibering: None,
            foliation: None,
            steps: Vec::new(),
            children: Vec::new(),
            final_bound: u.len() as f64 * ((a.len() * b.len()) as f64).sqrt(),
            valid: false,
        };

        let in_cube = u_norm.is_subset(&w_norm.materialize());
        builder.step("U inside normalized quasicube", "U", Relation::Subset, "Sigma", in_cube);

        if q == 1 {
            trace.branch = if a.dim() == 1 { Branch::Base } else { Branch::Fibering };
            trace.fibering = Some(self.fibering(a, b, &u_norm, &w_norm, &sumset, &mut builder));
        } else {
            trace.foliation = Some(self.foliation(a, b, &u_norm, &w_norm, q, &sumset, &mut builder));
        }

        let lhs_sq = BigUint::from(sumset.len()).pow(2);
        let rhs_sq = BigUint::from(u.len()).pow(2) * a.len() * b.len();
        builder.step(
            "final bound",
            format!("|A+B+U|^2 = {lhs_sq}"),
            Relation::Ge,
            format!("|U|^2|A||B| = {rhs_sq}"),
            lhs_sq >= rhs_sq,
        );

        trace.valid = builder.steps.iter().all(|s| s.holds) && builder.children.iter().all(|c| c.trace.valid);
        trace.steps = builder.steps;
        trace.children = builder.children;
        trace
    }

    fn fibering(
        &self,
        a: &PointSet,
        b: &PointSet,
        u: &PointSet,
        witness: &Witness,
        sumset: &PointSet,
        builder: &mut Builder,
    ) -> FiberingDetail {
        let a_fib = fibers_of(a);
        let b_fib = fibers_of(b);
        let u_fib = fibers_of(u);
        let s_fib = fibers_of(sumset);

        let u_parts: Vec<(i64, &Fiber, Option<&Witness>)> = [0i64, 1]
            .into_iter()
            .filter_map(|i| {
                let child = witness.children().map(|(c0, c1)| if i == 0 { c0 } else { c1 });
                u_fib.get(&i).map(|f| (i, f, child))
            })
            .collect();
        let u0 = u_fib.get(&0).map_or(0, Fiber::len);
        let u1 = u_fib.get(&1).map_or(0, Fiber::len);
        builder.step("U has fibres only over {0, 1}", u0 + u1, Relation::Eq, u.len(), u0 + u1 == u.len());
        let p = u0 as f64 / u.len() as f64;

        let weight = |fib: &BTreeMap<i64, Fiber>| {
            WeightFn::new(fib.iter().map(|(&n, f)| (n, (f.len() as f64).sqrt()))).expect("sqrt of counts")
        };
        let a_w = weight(&a_fib);
        let b_w = weight(&b_fib);
        let a_total: usize = a_fib.values().map(Fiber::len).sum();
        let b_total: usize = b_fib.values().map(Fiber::len).sum();
        builder.step("sum_x |A_x| = |A|", a_total, Relation::Eq, a.len(), a_total == a.len());
        builder.step("sum_y |B_y| = |B|", b_total, Relation::Eq, b.len(), b_total == b.len());

        // fibre containments and the pieces they bound, keyed by height n
        let mut best_sq: BTreeMap<i64, u128> = BTreeMap::new();
        let mut contain_checks = 0usize;
        let mut contain_fail = 0usize;
        let mut point_bounds = 0usize;
        for (&x, ax) in &a_fib {
            for (&y, by) in &b_fib {
                for &(i, ui, child_w) in &u_parts {
                    let n = x + y + i;
                    let piece = Fiber::sum3(ax, by, ui);
                    contain_checks += 1;
                    let fits = s_fib.get(&n).is_some_and(|sn| piece.is_subset(sn));
                    if !fits {
                        contain_fail += 1;
                    }
                    let piece_sq = (ui.len() as u128).pow(2) * ax.len() as u128 * by.len() as u128;
                    let slot = best_sq.entry(n).or_insert(0);
                    *slot = (*slot).max(piece_sq);
                    match (ax, by, ui, child_w) {
                        (Fiber::Set(ax), Fiber::Set(by), Fiber::Set(ui), Some(w)) => {
                            let child = self.trace(ax, by, ui, w);
                            builder.child(format!("A_{x} + B_{y} + U_{i} in fibre {n}"), child);
                        }
                        _ => point_bounds += 1,
                    }
                }
            }
        }
        builder.step(
            "fibre containment A_x+B_y+U_i in (A+B+U)_{x+y+i}",
            format!("{} of {contain_checks}", contain_checks - contain_fail),
            Relation::Eq,
            contain_checks,
            contain_fail == 0,
        );
        if a.dim() == 1 {
            builder.step(
                "zero-dimensional fibre bounds 1 >= 1",
                point_bounds,
                Relation::Eq,
                contain_checks,
                point_bounds == contain_checks,
            );
        }

        let conv = max_convolve(&a_w, &b_w);
        let u_len = u.len() as f64;
        let mut rows = Vec::new();
        let mut bound_fail = 0usize;
        let mut identity_dev = 0.0f64;
        let mut identity_ok = true;
        let mut total = 0usize;
        for (&n, sn) in &s_fib {
            let sq = best_sq.get(&n).copied().unwrap_or(0);
            let size = sn.len();
            total += size;
            if (size as u128).pow(2) < sq {
                bound_fail += 1;
            }
            let bound = (sq as f64).sqrt();
            let via_conv = u_len * (p * conv.eval(n)).max((1.0 - p) * conv.eval(n - 1));
            identity_ok &= approx_eq(bound, via_conv, self.rel_tol);
            identity_dev = identity_dev.max((bound - via_conv).abs());
            rows.push(SumRow { n, sumset: size, bound });
        }
        let stray = best_sq.keys().filter(|n| !s_fib.contains_key(n)).count();
        builder.step(
            "|(A+B+U)_n|^2 >= bound_n^2 for every n",
            rows.len() - bound_fail,
            Relation::Eq,
            rows.len(),
            bound_fail == 0 && stray == 0,
        );
        builder.step(
            "bound_n = |U| max(p c(n), (1-p) c(n-1))",
            format!("max deviation {identity_dev:e}"),
            Relation::ApproxEq,
            0,
            identity_ok,
        );
        builder.step("sum_n |(A+B+U)_n| = |A+B+U|", total, Relation::Eq, sumset.len(), total == sumset.len());
        let bound_sum: f64 = rows.iter().map(|r| r.bound).sum();
        builder.step(
            "|A+B+U| >= sum_n bound_n",
            sumset.len(),
            Relation::Ge,
            bound_sum,
            approx_ge(sumset.len() as f64, bound_sum, self.rel_tol),
        );

        let prop21 = check_prop21(&a_w, &b_w, p, self.rel_tol).expect("p in [0, 1]");
        builder.step("weighted Prekopa-Leindler", prop21.lhs, Relation::Ge, prop21.rhs, prop21.holds);
        let norms = u_len * a_w.l2_norm() * b_w.l2_norm();
        builder.step(
            "sum_n bound_n >= |U| |a|_2 |b|_2",
            bound_sum,
            Relation::Ge,
            norms,
            approx_ge(bound_sum, norms, self.rel_tol),
        );

        let fibers = {
            let mut keys: Vec<i64> = a_fib.keys().chain(b_fib.keys()).chain(u_fib.keys()).copied().collect();
            keys.sort_unstable();
            keys.dedup();
            keys.into_iter()
                .map(|n| FiberSizes {
                    n,
                    a: a_fib.get(&n).map_or(0, Fiber::len),
                    b: b_fib.get(&n).map_or(0, Fiber::len),
                    u: u_fib.get(&n).map_or(0, Fiber::len),
                })
                .collect()
        };
        FiberingDetail { u0, u1, p, a: a_w, b: b_w, fibers, rows, prop21 }
    }

    #[allow(clippy::too_many_arguments)]
    fn foliation(
        &self,
        a: &PointSet,
        b: &PointSet,
        u: &PointSet,
        witness: &Witness,
        q: i64,
        sumset: &PointSet,
        builder: &mut Builder,
    ) -> FoliationDetail {
        let fa = a.foliate(q).expect("q > 1");
        let fb = b.foliate(q).expect("q > 1");
        let largest = |classes: &BTreeMap<i64, PointSet>| {
            let mut best = (0i64, 0usize);
            for (&r, s) in classes {
                if s.len() > best.1 {
                    best = (r, s.len());
                }
            }
            best.0
        };
        let r_star = largest(&fa.classes);
        let s_star = largest(&fb.classes);

        let u_rescaled = rescale(u, 0, q);
        let w_rescaled = Witness { x0: 0, x1: 1, ..witness.clone() };
        let u_len = u.len() as f64;

        // eq1: vary s against A_{r*}; eq2: vary r against B_{s*}
        let a_star = &fa.classes[&r_star];
        let b_star = &fb.classes[&s_star];
        let side = |builder: &mut Builder,
                    name: &str,
                    fixed: &PointSet,
                    fixed_res: i64,
                    varying: &BTreeMap<i64, PointSet>,
                    fixed_is_a: bool| {
            let mut terms = Vec::new();
            let mut union = PointSet::empty(a.dim()).expect("dim >= 1");
            let mut total = 0usize;
            let mut inside = true;
            let mut sizes_match = true;
            for (&res, class) in varying {
                let (ax, by) = if fixed_is_a { (fixed, class) } else { (class, fixed) };
                let piece = ax.sumset(by).and_then(|s| s.sumset(u)).expect("dims");
                inside &= piece.is_subset(sumset);
                total += piece.len();
                union = union.union(&piece).expect("dims");
                terms.push((res, piece.len()));

                let (ra, rb) = if fixed_is_a {
                    (rescale(ax, fixed_res, q), rescale(by, res, q))
                } else {
                    (rescale(ax, res, q), rescale(by, fixed_res, q))
                };
                let child = self.trace(&ra, &rb, &u_rescaled, &w_rescaled);
                sizes_match &= child.sumset_len == piece.len();
                let role = if fixed_is_a {
                    format!("{name}: rescaled A_{fixed_res} + B_{res} + U")
                } else {
                    format!("{name}: rescaled A_{res} + B_{fixed_res} + U")
                };
                builder.child(role, child);
            }
            let what = if fixed_is_a { "A_r* + B_s + U over s" } else { "A_r + B_s* + U over r" };
            builder.step(
                format!("{name}: pieces {what} pairwise disjoint"),
                union.len(),
                Relation::Eq,
                total,
                union.len() == total,
            );
            builder.step(format!("{name}: pieces inside A+B+U"), "pieces", Relation::Subset, "A+B+U", inside);
            builder.step(
                format!("{name}: rescaling preserves piece sizes"),
                "child |A+B+U|",
                Relation::Eq,
                "piece size",
                sizes_match,
            );
            builder.step(
                format!("{name}: |A+B+U| >= sum of piece sizes"),
                sumset.len(),
                Relation::Ge,
                total,
                sumset.len() >= total,
            );
            let sqrt_sum: f64 = varying.values().map(|c| (c.len() as f64).sqrt()).sum();
            let bound = u_len * (fixed.len() as f64).sqrt() * sqrt_sum;
            builder.step(
                format!("{name}: sum of piece sizes >= bound"),
                total,
                Relation::Ge,
                bound,
                approx_ge(total as f64, bound, self.rel_tol),
            );
            (terms, bound)
        };
        let (eq1_terms, eq1_bound) = side(builder, "eq1", a_star, r_star, &fb.classes, true);
        let (eq2_terms, eq2_bound) = side(builder, "eq2", b_star, s_star, &fa.classes, false);

        let a_prod = (a_star.len() as f64).sqrt() * fa.classes.values().map(|c| (c.len() as f64).sqrt()).sum::<f64>();
        let b_prod = (b_star.len() as f64).sqrt() * fb.classes.values().map(|c| (c.len() as f64).sqrt()).sum::<f64>();
        builder.step(
            "|A_r*|^{1/2} sum_r |A_r|^{1/2} >= |A|",
            a_prod,
            Relation::Ge,
            a.len(),
            approx_ge(a_prod, a.len() as f64, self.rel_tol),
        );
        builder.step(
            "|B_s*|^{1/2} sum_s |B_s|^{1/2} >= |B|",
            b_prod,
            Relation::Ge,
            b.len(),
            approx_ge(b_prod, b.len() as f64, self.rel_tol),
        );
        let target = u_len * u_len * (a.len() * b.len()) as f64;
        builder.step(
            "eq1 * eq2 >= |U|^2 |A| |B|",
            eq1_bound * eq2_bound,
            Relation::Ge,
            target,
            approx_ge(eq1_bound * eq2_bound, target, self.rel_tol),
        );
        let lhs_sq = (sumset.len() as f64).powi(2);
        builder.step(
            "|A+B+U|^2 >= eq1 * eq2",
            lhs_sq,
            Relation::Ge,
            eq1_bound * eq2_bound,
            approx_ge(lhs_sq, eq1_bound * eq2_bound, self.rel_tol),
        );

        let classes = |f: &BTreeMap<i64, PointSet>| f.iter().map(|(&r, s)| (r, s.len())).collect();
        FoliationDetail {
            q,
            a_classes: classes(&fa.classes),
            b_classes: classes(&fb.classes),
            r_star,
            s_star,
            eq1_terms,
            eq2_terms,
            eq1_bound,
            eq2_bound,
        }
    }
}
