//! Randomized local search for instances close to equality.
//!
//! `cargo run --release --example extremal_search -- <seed>`

use num_rational::BigRational;
use num_traits::ToPrimitive;
use sumsets::verifier::{extremal_search, SearchSpec};
use sumsets::BoxBounds;

fn main() -> sumsets::Result<()> {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    for (d, hi) in [(1, 3), (2, 2), (3, 1)] {
        let spec = SearchSpec { bounds: BoxBounds::cube(d, 0, hi)?, steps: 5_000, seed, restarts: 4 };
        let r = extremal_search(&spec, 4)?;
        let as_f64 = |q: &BigRational| q.to_f64().unwrap_or(f64::NAN);
        println!(
            "box {}: initial ratio^2 {} -> best {} ({:.4}) from restart {}, {} accepted moves",
            spec.bounds,
            r.initial.ratio_sq,
            r.best.ratio_sq,
            as_f64(&r.best.ratio_sq),
            r.best_restart,
            r.accepted_moves
        );
        println!("  A={} B={} U={}", r.best.a, r.best.b, r.best.u);
    }
    Ok(())
}
