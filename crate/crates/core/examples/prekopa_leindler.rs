//! Max-convolution and the weighted discrete Prekopa-Leindler sum
//! `sum_n max(p c(n), (1-p) c(n-1)) >= |a|_2 |b|_2`, where `c = a * b`.

use sumsets::maxconv::{check_prop21, max_convolve, weighted_pl_sum};
use sumsets::WeightFn;

fn main() -> sumsets::Result<()> {
    let a: WeightFn = "0:1".parse()?;
    let b: WeightFn = "0:1,1:1".parse()?;
    println!("a = {a}, b = {b}, a*b = {}", max_convolve(&a, &b));
    let r = check_prop21(&a, &b, 0.5, 1e-9)?;
    println!("p = 0.5: lhs {} >= rhs {:.6}: {}", r.lhs, r.rhs, r.holds);

    let a: WeightFn = "-2:1,0:2.5,1:0.5,3:2".parse()?;
    let b: WeightFn = "0:3,2:1,5:1.5".parse()?;
    println!("\na = {a}\nb = {b}\na*b = {}", max_convolve(&a, &b));
    println!("{:>5} {:>10} {:>10}", "p", "lhs", "rhs");
    for k in 0..=10 {
        let p = k as f64 / 10.0;
        let r = check_prop21(&a, &b, p, 1e-9)?;
        println!("{p:>5.1} {:>10.4} {:>10.4}", r.lhs, r.rhs);
    }

    // Two deltas give equality for every p.
    let d1 = WeightFn::delta(4).scale(2.0)?;
    let d2 = WeightFn::delta(-1).scale(3.0)?;
    println!("\ndeltas: {} vs {}", weighted_pl_sum(&d1, &d2, 0.37)?, d1.l2_norm() * d2.l2_norm());
    Ok(())
}
