//! Sumsets, fibres over the last axis, and residue-class foliations.

use sumsets::{Point, PointSet};

fn main() -> sumsets::Result<()> {
    let a = PointSet::new(2, [[0, 0], [1, 0], [2, 1]].map(Point::from))?;
    let b = PointSet::new(2, [[0, 0], [0, 1]].map(Point::from))?;
    let s = a.sumset(&b)?;
    println!("A     = {a}");
    println!("B     = {b}");
    println!("A + B = {s}  (|A+B| = {})", s.len());

    println!("\nfibres of A + B over the last coordinate:");
    for (n, f) in s.fibers()? {
        println!("  n = {n}: {f}");
    }

    let wide = PointSet::new(2, (0..6).map(|k| Point::from([k * k, k - 4])))?;
    let fol = wide.foliate(3)?;
    println!("\n{wide} mod 3:");
    for (r, class) in &fol.classes {
        println!("  r = {r}: {class}");
    }

    let moved = s.translate(&Point::from([-7, 5]))?;
    println!("\ncanonical form of a translate: {}", moved.canonicalize()?);
    print!("line format:\n{}", s.to_text());
    Ok(())
}
