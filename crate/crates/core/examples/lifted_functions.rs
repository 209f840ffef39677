//! Piecewise-exponential lifts `f(x) = e^{lambda {x}} a(floor x)` and the grid
//! checks of the star-1 bound and the continuous inequality on them.

use sumsets::maxconv::{lambda_of_p, lifted_l2_sq, verify_pl_continuous, verify_star1, LiftedFn};
use sumsets::WeightFn;

fn main() -> sumsets::Result<()> {
    let a: WeightFn = "0:1,1:2,3:0.5".parse()?;
    let b: WeightFn = "-1:1.5,0:1".parse()?;

    for lambda in [-2.0, -1e-8, 0.0, 0.7] {
        let f = LiftedFn::new(a.clone(), lambda);
        println!(
            "lambda {lambda:>6}: |f|^2 = {:.9} (|a|^2 = {}), f(1.5) = {:.6}",
            lifted_l2_sq(&a, lambda),
            a.norm_sq(),
            f.eval(1.5)
        );
    }

    println!();
    for p in [0.2, 0.5, 0.8] {
        let s = verify_star1(&a, &b, p, 64, 1e-9)?;
        let c = verify_pl_continuous(&a, &b, lambda_of_p(p)?, 64, 1e-9)?;
        println!(
            "p = {p}: star-1 {:.6} <= {:.6} ({}), pl {:.6} >= {:.6} ({})",
            s.integral, s.bound, s.holds, c.lhs, c.rhs, c.holds
        );
    }
    Ok(())
}
