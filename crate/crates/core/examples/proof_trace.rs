//! Replays the induction proof on concrete instances: fibering when the
//! quasicube's heights are adjacent, foliation mod q otherwise.

use sumsets::verifier::proof_trace;
use sumsets::{Point, PointSet};

fn main() -> sumsets::Result<()> {
    let a = PointSet::new(2, [[0, 0], [1, 0], [2, 1], [0, 2]].map(Point::from))?;
    let b = PointSet::new(2, [[0, 0], [0, 1]].map(Point::from))?;
    let u = PointSet::new(2, [[0, 0], [1, 0], [0, 1], [2, 1]].map(Point::from))?;
    let t = proof_trace(&a, &b, &u, 1e-9)?;
    print!("{}", t.render_text(1));

    println!();
    let t = proof_trace(&PointSet::line([0, 1, 4]), &PointSet::line([0, 2, 3]), &PointSet::line([-2, 1]), 1e-9)?;
    print!("{}", t.render_text(0));
    println!("nodes: {}, valid: {}, bound respected: {}", t.node_count(), t.valid, t.bound_respected());
    Ok(())
}
