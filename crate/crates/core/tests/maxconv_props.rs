use proptest::prelude::*;
use sumsets::maxconv::{check_prop21, exp_ratio, l2_norm, lifted_l2_sq, max_convolve, weighted_pl_sum, LiftedFn};
use sumsets::WeightFn;

fn weight(lo: i64, hi: i64) -> impl Strategy<Value = WeightFn> {
    prop::collection::btree_map(lo..=hi, 0u32..=64, 0..=8)
        .prop_map(|m| WeightFn::new(m.into_iter().map(|(n, v)| (n, (v as f64).sqrt()))).unwrap())
}

fn nonempty_weight(lo: i64, hi: i64) -> impl Strategy<Value = WeightFn> {
    weight(lo, hi).prop_filter("nonempty", |w| !w.is_empty())
}

/// `sup_m a(n - m) b(m)` over the full rectangle of candidate indices.
fn brute_conv(a: &WeightFn, b: &WeightFn, n: i64) -> f64 {
    let mut best: f64 = 0.0;
    for m in -40..=40 {
        best = best.max(a.eval(n - m) * b.eval(m));
    }
    best
}

fn close(x: f64, y: f64) -> bool {
    (x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1.0)
}

proptest! {
    #[test]
    fn matches_brute_force(a in weight(-8, 8), b in weight(-8, 8)) {
        let c = max_convolve(&a, &b);
        for n in -20..=20 {
            prop_assert_eq!(c.eval(n), brute_conv(&a, &b, n));
        }
        prop_assert_eq!(c, max_convolve(&b, &a));
    }

    #[test]
    fn monotone_in_each_argument(a in weight(-6, 6), b in weight(-6, 6), bump in weight(-6, 6)) {
        let bigger = WeightFn::new((-6..=6).map(|n| (n, a.eval(n).max(bump.eval(n))))).unwrap();
        let c = max_convolve(&a, &b);
        let d = max_convolve(&bigger, &b);
        for n in -14..=14 {
            prop_assert!(d.eval(n) >= c.eval(n));
        }
    }

    #[test]
    fn translation_and_scaling(a in weight(-6, 6), b in weight(-6, 6), k in -5i64..=5, s in 0.1f64..10.0) {
        let c = max_convolve(&a, &b);
        prop_assert_eq!(max_convolve(&a.shift(k), &b), c.shift(k));
        let scaled = max_convolve(&a.scale(s).unwrap(), &b);
        for n in -14..=14 {
            prop_assert!(close(scaled.eval(n), s * c.eval(n)));
        }
    }

    #[test]
    fn half_weight_is_half_the_shifted_max(a in weight(-8, 8), b in weight(-8, 8)) {
        let c = max_convolve(&a, &b);
        let direct: f64 = (-17..=18).map(|n| 0.5 * c.eval(n).max(c.eval(n - 1))).sum();
        prop_assert!(close(weighted_pl_sum(&a, &b, 0.5).unwrap(), direct));
    }

    #[test]
    fn weighted_sum_dominates_norm_product(a in weight(-8, 8), b in weight(-8, 8), k in 0u32..=10) {
        let p = k as f64 / 10.0;
        let r = check_prop21(&a, &b, p, 1e-9).unwrap();
        prop_assert!(r.holds);
        prop_assert!(r.lhs >= l2_norm(&a) * l2_norm(&b) * (1.0 - 1e-9));
    }

    #[test]
    fn endpoints_reduce_to_sum_of_conv(a in weight(-8, 8), b in weight(-8, 8)) {
        let total: f64 = max_convolve(&a, &b).iter().map(|(_, v)| v).sum();
        prop_assert!(close(weighted_pl_sum(&a, &b, 0.0).unwrap(), total));
        prop_assert!(close(weighted_pl_sum(&a, &b, 1.0).unwrap(), total));
    }

    #[test]
    fn lifted_norm_matches_quadrature(a in nonempty_weight(-4, 4), lambda in -3.0f64..3.0) {
        let f = LiftedFn::new(a.clone(), lambda);
        let (lo, hi) = a.support_range().unwrap();
        let k = 64;
        let h = 1.0 / k as f64;
        let mut quad = 0.0;
        for n in lo..=hi {
            for j in 0..k {
                let v = f.eval(n as f64 + (j as f64 + 0.5) * h);
                quad += v * v * h;
            }
        }
        let closed = lifted_l2_sq(&a, lambda);
        prop_assert!((closed - quad).abs() <= 2e-3 * closed);
        prop_assert_eq!(f.l2_sq(), closed);
    }

    #[test]
    fn exp_ratio_is_continuous_at_the_series_cutoff(x in -1e-3f64..1e-3) {
        let direct = if x == 0.0 { 1.0 } else { x.exp_m1() / x };
        prop_assert!((exp_ratio(x) - direct).abs() <= 1e-11);
    }
}
