//! Randomized local search for instances with small `|A+B+U|^2 / (|A||B||U|^2)`.
//!
//! Moves add, remove or relocate one point of `A`, `B` or `U`, staying inside
//! the box; moves that would take `U` outside every quasicube are rejected.
//! A move is accepted when it does not increase the ratio. Each restart owns a
//! ChaCha stream derived from the seed, so results are reproducible and do not
//! depend on how restarts are scheduled across workers.

use num_rational::BigRational;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bigfmt;
use super::check::ratio_sq;
use super::scan::Instance;
use crate::error::{Error, Result};
use crate::lattice::{BoxBounds, Point, PointSet};
use crate::quasicube::{contained_in_quasicube, Witness};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchSpec {
    pub bounds: BoxBounds,
    pub steps: u64,
    pub seed: u64,
    pub restarts: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrajectoryPoint {
    pub restart: usize,
    pub step: u64,
    #[serde(with = "bigfmt::ratio")]
    pub ratio_sq: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub seed: u64,
    pub steps: u64,
    pub restarts: usize,
    /// Starting instance of restart 0.
    pub initial: Instance,
    pub best: Instance,
    pub best_restart: usize,
    /// Strict improvements of each restart's best, in restart order.
    pub trajectory: Vec<TrajectoryPoint>,
    pub accepted_moves: u64,
    /// Set if any evaluated instance had ratio below 1, which the theorem rules out.
    pub below_one: bool,
}

struct State {
    sets: [PointSet; 3],
    ratio: BigRational,
    lhs: usize,
}

impl State {
    fn evaluate(sets: [PointSet; 3]) -> State {
        let [a, b, u] = &sets;
        let lhs = a.sumset(b).and_then(|s| s.sumset(u)).expect("same dimension").len();
        let ratio = ratio_sq(lhs, a.len(), b.len(), u.len()).expect("nonempty");
        State { sets, ratio, lhs }
    }

    fn instance(&self) -> Instance {
        let [a, b, u] = self.sets.clone();
        Instance { a, b, u, lhs: self.lhs, ratio_sq: self.ratio.clone() }
    }
}

fn random_witness(bounds: &BoxBounds, rng: &mut ChaCha8Rng) -> Witness {
    let (lo, hi) = bounds.last();
    let pair = loop {
        let pair = [rng.gen_range(lo..=hi), rng.gen_range(lo..=hi)];
        if pair[0] != pair[1] {
            break pair;
        }
    };
    match bounds.head() {
        None => Witness::line(pair[0], pair[1]).expect("distinct"),
        Some(head) => {
            let c0 = random_witness(&head, rng);
            let c1 = random_witness(&head, rng);
            Witness::node(pair[0], pair[1], c0, c1).expect("distinct")
        }
    }
}

fn random_subset(points: &[Point], dim: usize, rng: &mut ChaCha8Rng) -> PointSet {
    let mut set = PointSet::new(dim, points.iter().filter(|_| rng.gen_bool(0.5)).cloned()).expect("box points");
    if set.is_empty() {
        set.insert(points.choose(rng).expect("nonempty box").clone()).expect("dim");
    }
    set
}

fn initial_state(bounds: &BoxBounds, points: &[Point], rng: &mut ChaCha8Rng) -> State {
    let dim = bounds.dim();
    let a = random_subset(points, dim, rng);
    let b = random_subset(points, dim, rng);
    let cube: Vec<Point> = random_witness(bounds, rng).materialize().iter().cloned().collect();
    let u = random_subset(&cube, dim, rng);
    State::evaluate([a, b, u])
}

/// Proposes a neighbour, or `None` when the drawn move is impossible.
fn propose(state: &State, points: &[Point], rng: &mut ChaCha8Rng) -> Option<[PointSet; 3]> {
    let target = rng.gen_range(0..3);
    let op = rng.gen_range(0..3);
    let mut sets = state.sets.clone();
    let set = &mut sets[target];
    let outside: Vec<&Point> = points.iter().filter(|p| !set.contains(p)).collect();
    let inside: Vec<Point> = set.iter().cloned().collect();
    match op {
        0 => {
            let p = (*outside.choose(rng)?).clone();
            set.insert(p).expect("dim");
        }
        1 => {
            if inside.len() < 2 {
                return None;
            }
            set.remove(inside.choose(rng).expect("nonempty"));
        }
        _ => {
            let p = (*outside.choose(rng)?).clone();
            set.remove(inside.choose(rng).expect("nonempty"));
            set.insert(p).expect("dim");
        }
    }
    if target == 2 && !matches!(contained_in_quasicube(&sets[2]), Ok(Some(_))) {
        return None;
    }
    Some(sets)
}

struct RestartOutcome {
    initial: Instance,
    best: Instance,
    trajectory: Vec<TrajectoryPoint>,
    accepted: u64,
    below_one: bool,
}

fn run_restart(spec: &SearchSpec, points: &[Point], restart: usize) -> RestartOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(restart as u64);
    let mut current = initial_state(&spec.bounds, points, &mut rng);
    let one = BigRational::one();
    let mut below_one = current.ratio < one;
    let initial = current.instance();
    let mut best = initial.clone();
    let mut trajectory = vec![TrajectoryPoint { restart, step: 0, ratio_sq: current.ratio.clone() }];
    let mut accepted = 0;
    for step in 1..=spec.steps {
        let Some(sets) = propose(&current, points, &mut rng) else {
            continue;
        };
        let next = State::evaluate(sets);
        below_one |= next.ratio < one;
        if next.ratio <= current.ratio {
            accepted += 1;
            current = next;
            if current.ratio < best.ratio_sq {
                best = current.instance();
                trajectory.push(TrajectoryPoint { restart, step, ratio_sq: current.ratio.clone() });
            }
        }
    }
    RestartOutcome { initial, best, trajectory, accepted, below_one }
}

pub fn extremal_search(spec: &SearchSpec, workers: usize) -> Result<SearchResult> {
    if spec.restarts == 0 {
        return Err(Error::Config("restarts must be at least 1".into()));
    }
    if let Some(axis) = (0..spec.bounds.dim()).find(|&i| spec.bounds.side(i) < 2) {
        return Err(Error::InvalidBounds(format!("axis {axis} too short to hold a quasicube")));
    }
    let points = spec.bounds.points();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let outcomes: Vec<RestartOutcome> =
        pool.install(|| (0..spec.restarts).into_par_iter().map(|r| run_restart(spec, &points, r)).collect());

    let mut best_restart = 0;
    for (i, o) in outcomes.iter().enumerate() {
        if o.best.ratio_sq < outcomes[best_restart].best.ratio_sq {
            best_restart = i;
        }
    }
    Ok(SearchResult {
        seed: spec.seed,
        steps: spec.steps,
        restarts: spec.restarts,
        initial: outcomes[0].initial.clone(),
        best: outcomes[best_restart].best.clone(),
        best_restart,
        trajectory: outcomes.iter().flat_map(|o| o.trajectory.iter().cloned()).collect(),
        accepted_moves: outcomes.iter().map(|o| o.accepted).sum(),
        below_one: outcomes.iter().any(|o| o.below_one),
    })
}
