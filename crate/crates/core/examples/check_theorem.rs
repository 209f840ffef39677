//! Exact checks of `|A + B + U|^2 >= |A| |B| |U|^2` for U inside a quasicube.

use sumsets::verifier::check_theorem;
use sumsets::{BoxBounds, Point, PointSet};

fn cube(d: usize, n: i64) -> PointSet {
    PointSet::new(d, BoxBounds::cube(d, 0, n - 1).unwrap().points()).unwrap()
}

fn main() -> sumsets::Result<()> {
    println!("boxes A = B = [0,n)^d with U = {{0,1}}^d:");
    for d in 1..=3 {
        for n in 1..=4 {
            let (a, u) = (cube(d, n), cube(d, 2));
            let r = check_theorem(&a, &a, &u, true)?;
            println!("  d={d} n={n}: |A+B+U| = {:>3}, lhs^2 = rhs^2 = {}, equality {}", r.lhs, r.rhs_sq, r.equality);
        }
    }

    let a = PointSet::new(2, [[0, 0], [3, 0], [1, 2], [5, 5]].map(Point::from))?;
    let b = PointSet::new(2, [[0, 0], [1, 1], [2, 0]].map(Point::from))?;
    let u = PointSet::new(2, [[0, 0], [1, 0], [0, 3], [4, 3]].map(Point::from))?;
    let r = check_theorem(&a, &b, &u, true)?;
    println!("\nscattered instance: {}", serde_json::to_string_pretty(&r).unwrap());

    let line = PointSet::line([0, 1, 2]);
    match check_theorem(&PointSet::line([0]), &PointSet::line([0]), &line, true) {
        Ok(_) => unreachable!(),
        Err(e) => println!("\nU = {line}: {e}"),
    }
    Ok(())
}
