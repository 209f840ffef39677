//! Quasicubes: recognition, containment and enumeration.
//!
//! A quasicube of dimension 1 is any two-point set. In dimension `d > 1` it is
//! a set whose image under the final-coordinate projection has exactly two
//! values `x0 < x1`, with both fibres being quasicubes of dimension `d - 1`.
//! A [`Witness`] records that recursive structure.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{BoxBounds, PointSet};

/// Recursive certificate for a quasicube.
///
/// Serialized as nested `{x0, x1, child0, child1}` objects; the children are
/// absent at dimension 1. `child0` is the fibre over `x0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub x0: i64,
    pub x1: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub child0: Option<Box<Witness>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub child1: Option<Box<Witness>>,
}

impl Witness {
    /// The one-dimensional quasicube `{x0, x1}`.
    pub fn line(x0: i64, x1: i64) -> Result<Self> {
        if x0 == x1 {
            return Err(Error::MalformedWitness(format!("repeated value {x0}")));
        }
        Ok(Witness { x0: x0.min(x1), x1: x0.max(x1), child0: None, child1: None })
    }

    /// Fibres `child0` over `x0` and `child1` over `x1`. The pair is reordered
    /// so that `x0 < x1`.
    pub fn node(x0: i64, x1: i64, child0: Witness, child1: Witness) -> Result<Self> {
        if x0 == x1 {
            return Err(Error::MalformedWitness(format!("repeated value {x0}")));
        }
        if child0.dim() != child1.dim() {
            return Err(Error::MalformedWitness(format!(
                "children of dimension {} and {}",
                child0.dim(),
                child1.dim()
            )));
        }
        let (x0, x1, c0, c1) = if x0 < x1 { (x0, x1, child0, child1) } else { (x1, x0, child1, child0) };
        Ok(Witness { x0, x1, child0: Some(Box::new(c0)), child1: Some(Box::new(c1)) })
    }

    /// The cube `{0,1}^dim`.
    pub fn unit_cube(dim: usize) -> Self {
        assert!(dim >= 1);
        let mut w = Witness { x0: 0, x1: 1, child0: None, child1: None };
        for _ in 1..dim {
            w = Witness { x0: 0, x1: 1, child0: Some(Box::new(w.clone())), child1: Some(Box::new(w)) };
        }
        w
    }

    pub fn dim(&self) -> usize {
        1 + self.child0.as_ref().map_or(0, |c| c.dim())
    }

    pub fn children(&self) -> Option<(&Witness, &Witness)> {
        match (&self.child0, &self.child1) {
            (Some(c0), Some(c1)) => Some((c0, c1)),
            _ => None,
        }
    }

    /// Structural validity, for witnesses that did not come from the constructors.
    pub fn validate(&self) -> Result<()> {
        if self.x0 >= self.x1 {
            return Err(Error::MalformedWitness(format!("expected x0 < x1, got {} and {}", self.x0, self.x1)));
        }
        match (&self.child0, &self.child1) {
            (None, None) => Ok(()),
            (Some(c0), Some(c1)) => {
                c0.validate()?;
                c1.validate()?;
                if c0.dim() != c1.dim() {
                    return Err(Error::MalformedWitness("children differ in dimension".into()));
                }
                Ok(())
            }
            _ => Err(Error::MalformedWitness("exactly one child present".into())),
        }
    }

    /// Number of leaves, which is `2^dim`.
    pub fn leaf_count(&self) -> usize {
        match self.children() {
            None => 2,
            Some((c0, c1)) => c0.leaf_count() + c1.leaf_count(),
        }
    }

    /// The point set this witness denotes.
    pub fn materialize(&self) -> PointSet {
        match self.children() {
            None => PointSet::line([self.x0, self.x1]),
            Some((c0, c1)) => c0
                .materialize()
                .lift(self.x0)
                .union(&c1.materialize().lift(self.x1))
                .expect("children share a dimension"),
        }
    }

    /// Shifts the top-level values, i.e. translates the quasicube along the
    /// final axis.
    pub fn shift_last(&self, by: i64) -> Witness {
        Witness { x0: self.x0 + by, x1: self.x1 + by, ..self.clone() }
    }
}

/// Returns a witness when `set` is a quasicube.
pub fn is_quasicube(set: &PointSet) -> Option<Witness> {
    let d = set.dim();
    if d >= usize::BITS as usize - 1 || set.len() != 1usize << d {
        return None;
    }
    recognize(set)
}

fn recognize(set: &PointSet) -> Option<Witness> {
    let proj = set.project_last();
    if proj.len() != 2 {
        return None;
    }
    let mut vals = proj.into_iter();
    let (x0, x1) = (vals.next()?, vals.next()?);
    if set.dim() == 1 {
        return Witness::line(x0, x1).ok();
    }
    let c0 = recognize(&set.fiber(x0).ok()?)?;
    let c1 = recognize(&set.fiber(x1).ok()?)?;
    Witness::node(x0, x1, c0, c1).ok()
}

/// Decides whether `set` lies inside some quasicube and returns one such
/// quasicube. Missing structure is padded upward: a lone value `x` is paired
/// with `x + 1`, and a single occupied fibre is duplicated at `x0 + 1`.
pub fn contained_in_quasicube(set: &PointSet) -> Result<Option<Witness>> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(cover(set))
}

fn cover(set: &PointSet) -> Option<Witness> {
    let proj: Vec<i64> = set.project_last().into_iter().collect();
    if set.dim() == 1 {
        return match proj[..] {
            [x] => Witness::line(x, x + 1).ok(),
            [x0, x1] => Witness::line(x0, x1).ok(),
            _ => None,
        };
    }
    match proj[..] {
        [x] => {
            let c = cover(&set.fiber(x).ok()?)?;
            Witness::node(x, x + 1, c.clone(), c).ok()
        }
        [x0, x1] => {
            let c0 = cover(&set.fiber(x0).ok()?)?;
            let c1 = cover(&set.fiber(x1).ok()?)?;
            Witness::node(x0, x1, c0, c1).ok()
        }
        _ => None,
    }
}

/// Result of a search over coordinate permutations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutedWitness {
    /// New axis `i` is old axis `perm[i]`.
    pub perm: Vec<usize>,
    pub witness: Witness,
}

/// Like [`is_quasicube`], but accepts `set` if some permutation of its axes is
/// a quasicube. Permutations are tried in lexicographic order, identity first.
pub fn is_quasicube_up_to_permutation(set: &PointSet) -> Option<PermutedWitness> {
    permutations(set.dim())
        .into_iter()
        .find_map(|perm| is_quasicube(&set.permute_axes(&perm)).map(|witness| PermutedWitness { perm, witness }))
}

/// Like [`contained_in_quasicube`], over all axis permutations.
pub fn contained_in_quasicube_up_to_permutation(set: &PointSet) -> Result<Option<PermutedWitness>> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(permutations(set.dim())
        .into_iter()
        .find_map(|perm| cover(&set.permute_axes(&perm)).map(|witness| PermutedWitness { perm, witness })))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Lazily enumerates every quasicube inside a box, each exactly once.
///
/// Order: top-level pair `(x0, x1)` lexicographic, then `child0`, then
/// `child1`, recursively.
pub struct QuasicubeIter {
    bounds: BoxBounds,
    pairs: Vec<(i64, i64)>,
    pair_idx: usize,
    child0_iter: Option<Box<QuasicubeIter>>,
    child0: Option<Witness>,
    child1_iter: Option<Box<QuasicubeIter>>,
}

impl QuasicubeIter {
    fn new(bounds: BoxBounds) -> Self {
        let (lo, hi) = bounds.last();
        let pairs = (lo..=hi).flat_map(|x0| (x0 + 1..=hi).map(move |x1| (x0, x1))).collect();
        QuasicubeIter { bounds, pairs, pair_idx: 0, child0_iter: None, child0: None, child1_iter: None }
    }
}

impl Iterator for QuasicubeIter {
    type Item = Witness;

    fn next(&mut self) -> Option<Witness> {
        let head = match self.bounds.head() {
            None => {
                let &(x0, x1) = self.pairs.get(self.pair_idx)?;
                self.pair_idx += 1;
                return Some(Witness { x0, x1, child0: None, child1: None });
            }
            Some(head) => head,
        };
        loop {
            let &(x0, x1) = self.pairs.get(self.pair_idx)?;
            if self.child0.is_none() {
                let it = self.child0_iter.get_or_insert_with(|| Box::new(QuasicubeIter::new(head.clone())));
                match it.next() {
                    Some(w) => {
                        self.child0 = Some(w);
                        self.child1_iter = Some(Box::new(QuasicubeIter::new(head.clone())));
                    }
                    None => {
                        self.pair_idx += 1;
                        self.child0_iter = None;
                        continue;
                    }
                }
            }
            let c1 = self.child1_iter.as_mut().and_then(|it| it.next());
            match c1 {
                Some(c1) => {
                    let c0 = self.child0.clone().expect("set above");
                    return Some(Witness { x0, x1, child0: Some(Box::new(c0)), child1: Some(Box::new(c1)) });
                }
                None => self.child0 = None,
            }
        }
    }
}

/// Every quasicube whose points all lie in `bounds`.
pub fn enumerate_quasicubes(bounds: &BoxBounds) -> QuasicubeIter {
    QuasicubeIter::new(bounds.clone())
}

/// Quasicubes fitting in `bounds`, one per translation class, each in
/// canonical position (coordinatewise minimum at the origin).
pub fn enumerate_canonical_quasicubes(bounds: &BoxBounds) -> impl Iterator<Item = Witness> {
    enumerate_quasicubes(&bounds.at_origin()).filter(|w| w.materialize().is_canonical())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set2(points: &[[i64; 2]]) -> PointSet {
        PointSet::new(2, points.iter().copied()).unwrap()
    }

    /// The two-dimensional example quasicube, stored with the final coordinate
    /// in the second slot so that its projection is `{0, 1}`.
    fn sigma() -> PointSet {
        set2(&[[0, 0], [1, 0], [0, 1], [2, 1]])
    }

    #[test]
    fn materialize_examples() {
        assert_eq!(Witness::line(0, 1).unwrap().materialize(), PointSet::line([0, 1]));
        assert_eq!(Witness::unit_cube(2).materialize(), set2(&[[0, 0], [1, 0], [0, 1], [1, 1]]));
        let w = Witness::node(0, 1, Witness::line(0, 1).unwrap(), Witness::line(0, 2).unwrap()).unwrap();
        assert_eq!(w.materialize(), sigma());
        assert_eq!(w.leaf_count(), 4);
    }

    #[test]
    fn recognizes_cube_and_example() {
        let cube3 = Witness::unit_cube(3).materialize();
        assert_eq!(is_quasicube(&cube3), Some(Witness::unit_cube(3)));
        assert!(is_quasicube(&sigma()).is_some());
        assert!(is_quasicube(&set2(&[[0, 0], [1, 0], [0, 1]])).is_none());
    }

    #[test]
    fn literal_tuple_order_needs_permutation() {
        let literal = set2(&[[0, 0], [1, 0], [0, 1], [1, 2]]);
        assert!(is_quasicube(&literal).is_none());
        let pw = is_quasicube_up_to_permutation(&literal).unwrap();
        assert_eq!(pw.perm, vec![1, 0]);
        assert_eq!(pw.witness.materialize(), sigma());
    }

    #[test]
    fn four_points_but_not_a_quasicube() {
        // projection has two values but one fibre has three points
        assert!(is_quasicube(&set2(&[[0, 0], [1, 0], [2, 0], [0, 1]])).is_none());
        // fibre with a single point
        assert!(is_quasicube(&set2(&[[0, 0], [1, 0], [5, 0], [0, 3]])).is_none());
    }

    #[test]
    fn containment_examples() {
        let u = set2(&[[0, 0], [1, 2]]);
        let w = contained_in_quasicube(&u).unwrap().unwrap();
        let sigma = w.materialize();
        assert!(is_quasicube(&sigma).is_some());
        assert!(u.is_subset(&sigma));

        assert_eq!(contained_in_quasicube(&PointSet::line([0, 1, 2])).unwrap(), None);

        let single = PointSet::new(3, [[4, -2, 7]]).unwrap();
        let w = contained_in_quasicube(&single).unwrap().unwrap();
        assert!(single.is_subset(&w.materialize()));
        assert_eq!(w.materialize().min_corner(), single.min_corner());

        assert_eq!(contained_in_quasicube(&PointSet::empty(2).unwrap()), Err(Error::EmptySet));
    }

    #[test]
    fn containment_padding_is_upward() {
        let w = contained_in_quasicube(&PointSet::line([3])).unwrap().unwrap();
        assert_eq!((w.x0, w.x1), (3, 4));
        let w = contained_in_quasicube(&set2(&[[0, 5], [2, 5]])).unwrap().unwrap();
        assert_eq!((w.x0, w.x1), (5, 6));
        assert_eq!(w.child0, w.child1);
    }

    #[test]
    fn enumeration_counts() {
        let line01 = BoxBounds::cube(1, 0, 1).unwrap();
        assert_eq!(enumerate_quasicubes(&line01).count(), 1);
        let line02 = BoxBounds::cube(1, 0, 2).unwrap();
        let all: Vec<_> = enumerate_quasicubes(&line02).map(|w| (w.x0, w.x1)).collect();
        assert_eq!(all, vec![(0, 1), (0, 2), (1, 2)]);

        let sq = BoxBounds::cube(2, 0, 1).unwrap();
        let found: Vec<_> = enumerate_quasicubes(&sq).collect();
        assert_eq!(found, vec![Witness::unit_cube(2)]);

        // 3 pairs per axis: 3 * 3 * 3 in dimension 2
        assert_eq!(enumerate_quasicubes(&BoxBounds::cube(2, 0, 2).unwrap()).count(), 27);
        // degenerate axis admits no quasicube
        assert_eq!(enumerate_quasicubes(&BoxBounds::new(vec![(0, 0), (0, 3)]).unwrap()).count(), 0);
    }

    #[test]
    fn canonical_enumeration_dedups_translates() {
        let b = BoxBounds::cube(1, 5, 8).unwrap();
        let canon: Vec<_> = enumerate_canonical_quasicubes(&b).map(|w| (w.x0, w.x1)).collect();
        assert_eq!(canon, vec![(0, 1), (0, 2), (0, 3)]);
    }

    #[test]
    fn witness_json_shape() {
        let w = Witness::node(0, 1, Witness::line(0, 1).unwrap(), Witness::line(0, 2).unwrap()).unwrap();
        let json = serde_json::to_value(&w).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"x0": 0, "x1": 1,
                "child0": {"x0": 0, "x1": 1},
                "child1": {"x0": 0, "x1": 2}})
        );
        let back: Witness = serde_json::from_value(json).unwrap();
        assert_eq!(back, w);

        let bad: Witness = serde_json::from_str(r#"{"x0":1,"x1":1}"#).unwrap();
        assert!(bad.validate().is_err());
        let lopsided: Witness = serde_json::from_str(r#"{"x0":0,"x1":1,"child0":{"x0":0,"x1":1}}"#).unwrap();
        assert!(lopsided.validate().is_err());
    }

    #[test]
    fn node_reorders_children() {
        let a = Witness::line(0, 1).unwrap();
        let b = Witness::line(0, 2).unwrap();
        let w = Witness::node(5, 2, a.clone(), b.clone()).unwrap();
        assert_eq!((w.x0, w.x1), (2, 5));
        assert_eq!(w.child0.as_deref(), Some(&b));
        assert!(Witness::node(0, 1, a, Witness::unit_cube(2)).is_err());
    }
}
