//! Exhaustive scans of small boxes, with a worker-count determinism check.
//!
//! `cargo run --release --example exhaustive_scan -- 4` uses four workers.

use sumsets::verifier::{estimate_search_space, exhaustive_scan, ScanSpec, USource};
use sumsets::{BoxBounds, Point, PointSet};

fn main() -> sumsets::Result<()> {
    let workers: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let sigma = PointSet::new(2, [[0, 0], [1, 0], [0, 1], [2, 1]].map(Point::from))?;
    let specs = [
        ScanSpec {
            ab_box: BoxBounds::cube(1, 0, 3)?,
            max_a: 4,
            max_b: 4,
            u_source: USource::InBox { bounds: BoxBounds::cube(1, 0, 4)?, max_size: Some(2) },
        },
        ScanSpec { ab_box: BoxBounds::cube(2, 0, 1)?, max_a: 4, max_b: 4, u_source: USource::SubsetsOf(sigma) },
        ScanSpec {
            ab_box: BoxBounds::cube(2, 0, 2)?,
            max_a: 3,
            max_b: 3,
            u_source: USource::InBox { bounds: BoxBounds::cube(2, 0, 2)?, max_size: None },
        },
    ];
    for spec in &specs {
        println!("box {} (estimate {}):", spec.ab_box, estimate_search_space(spec)?);
        let s = exhaustive_scan(spec, 50_000_000, workers, 5)?;
        let single = exhaustive_scan(spec, 50_000_000, 1, 5)?;
        println!(
            "  {} instances, {} violations, {} equalities, min ratio^2 {}; same as 1 worker: {}",
            s.instances,
            s.violations,
            s.equalities,
            s.min_ratio_sq.as_ref().map_or("-".into(), ToString::to_string),
            s == single
        );
        for i in s.equality_instances.iter().filter(|i| i.a.len() > 1).take(3) {
            println!("    equality: A={} B={} U={}", i.a, i.b, i.u);
        }
    }
    Ok(())
}
