//! Recognising quasicubes, covering subsets, and enumerating a box.

use sumsets::quasicube::{
    contained_in_quasicube, enumerate_canonical_quasicubes, enumerate_quasicubes, is_quasicube,
    is_quasicube_up_to_permutation,
};
use sumsets::{BoxBounds, Point, PointSet};

fn main() -> sumsets::Result<()> {
    // Heights 0 and 1 on the last axis; fibres {0,1} and {0,2}.
    let sigma = PointSet::new(2, [[0, 0], [1, 0], [0, 1], [2, 1]].map(Point::from))?;
    let w = is_quasicube(&sigma).expect("quasicube");
    println!("{sigma} is a quasicube: {}", serde_json::to_string(&w).unwrap());

    // The same shape with the axes swapped only passes when permutations are allowed.
    let swapped = sigma.permute_axes(&[1, 0]);
    println!("{swapped}: {:?}", is_quasicube(&swapped).is_some());
    let pw = is_quasicube_up_to_permutation(&swapped).expect("after swapping axes");
    println!("  up to permutation: perm {:?}", pw.perm);

    let u = PointSet::new(2, [[3, 0], [-1, 5]].map(Point::from))?;
    let cover = contained_in_quasicube(&u)?.expect("two points always fit");
    println!("{u} lies in {}", cover.materialize());

    let three = PointSet::new(2, [[0, 0], [0, 1], [0, 2]].map(Point::from))?;
    println!("{three} lies in a quasicube: {}", contained_in_quasicube(&three)?.is_some());

    for hi in 1..=3 {
        let b = BoxBounds::cube(2, 0, hi)?;
        println!(
            "box {b}: {} quasicubes, {} with minimum corner at the origin",
            enumerate_quasicubes(&b).count(),
            enumerate_canonical_quasicubes(&b).count()
        );
    }
    Ok(())
}
