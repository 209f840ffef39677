use std::collections::BTreeSet;

use proptest::prelude::*;
use sumsets::{Point, PointSet};

fn point_set(dim: usize, lo: i64, hi: i64, max_len: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::btree_set(prop::collection::vec(lo..=hi, dim), 1..=max_len)
        .prop_map(move |pts| PointSet::new(dim, pts.into_iter().map(Point::new)).unwrap())
}

fn pair(max_len: usize) -> impl Strategy<Value = (PointSet, PointSet)> {
    (1usize..=3).prop_flat_map(move |d| (point_set(d, -3, 3, max_len), point_set(d, -3, 3, max_len)))
}

fn brute(a: &PointSet, b: &PointSet) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    for x in a.iter() {
        for y in b.iter() {
            out.insert(x.coords().iter().zip(y.coords()).map(|(s, t)| s + t).collect());
        }
    }
    out
}

proptest! {
    #[test]
    fn sumset_matches_pairwise_sums((a, b) in pair(8)) {
        let s = a.sumset(&b).unwrap();
        let got: BTreeSet<Vec<i64>> = s.iter().map(|p| p.coords().to_vec()).collect();
        prop_assert_eq!(got, brute(&a, &b));
    }

    #[test]
    fn sumset_at_least_each_operand((a, b) in pair(8)) {
        let s = a.sumset(&b).unwrap();
        prop_assert!(s.len() >= a.len().max(b.len()));
        prop_assert_eq!(s, b.sumset(&a).unwrap());
    }

    #[test]
    fn line_sumset_at_least_sum_minus_one(a in point_set(1, -10, 10, 8), b in point_set(1, -10, 10, 8)) {
        prop_assert!(a.sumset(&b).unwrap().len() + 1 >= a.len() + b.len());
    }

    #[test]
    fn translation_covariance((a, b) in pair(6), shift in prop::collection::vec(-5i64..=5, 3)) {
        let v = Point::new(shift[..a.dim()].to_vec());
        let lhs = a.translate(&v).unwrap().sumset(&b).unwrap();
        let rhs = a.sumset(&b).unwrap().translate(&v).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fibers_partition_the_set(a in point_set(3, -2, 2, 20)) {
        let fibers = a.fibers().unwrap();
        prop_assert_eq!(fibers.values().map(PointSet::len).sum::<usize>(), a.len());
        prop_assert_eq!(fibers.keys().copied().collect::<BTreeSet<_>>(), a.project_last());
        let mut rebuilt = PointSet::empty(a.dim()).unwrap();
        for (&n, f) in &fibers {
            prop_assert_eq!(f.len(), a.fiber_len(n));
            rebuilt = rebuilt.union(&f.lift(n)).unwrap();
        }
        prop_assert_eq!(rebuilt, a);
    }

    #[test]
    fn foliation_partitions_by_residue(a in point_set(2, -6, 6, 20), q in 1i64..=4) {
        let fol = a.foliate(q).unwrap();
        prop_assert_eq!(fol.modulus, q);
        let mut total = 0;
        for (&r, class) in &fol.classes {
            prop_assert!((0..q).contains(&r));
            for p in class.iter() {
                prop_assert_eq!(p.last().rem_euclid(q), r);
                prop_assert!(a.contains(p));
            }
            total += class.len();
        }
        prop_assert_eq!(total, a.len());
    }

    #[test]
    fn canonical_form_is_translation_invariant(a in point_set(2, -4, 4, 10), dx in -9i64..=9, dy in -9i64..=9) {
        let c = a.canonicalize().unwrap();
        prop_assert!(c.is_canonical());
        prop_assert_eq!(c.canonicalize().unwrap(), c.clone());
        let moved = a.translate(&Point::from([dx, dy])).unwrap();
        prop_assert_eq!(moved.canonicalize().unwrap(), c);
    }

    #[test]
    fn text_and_json_round_trip(a in point_set(3, -50, 50, 12)) {
        prop_assert_eq!(PointSet::parse_text(&a.to_text(), Some(3)).unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<PointSet>(&json).unwrap(), a);
    }
}
