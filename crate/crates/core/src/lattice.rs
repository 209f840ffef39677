//! Finite point sets in `Z^d`.
//!
//! Every operation here is exact and pure. The last coordinate plays a
//! distinguished role: projections, fibres and foliations are all taken with
//! respect to it, and no axis permutation is ever applied implicitly.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A lattice point. Ordering is lexicographic on coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<i64>);

impl Point {
    pub fn new(coords: Vec<i64>) -> Self {
        Point(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Final coordinate.
    pub fn last(&self) -> i64 {
        *self.0.last().expect("points have dimension >= 1")
    }

    /// All coordinates except the last one.
    pub fn head(&self) -> Point {
        Point(self.0[..self.0.len() - 1].to_vec())
    }

    /// Appends `last` as a new final coordinate.
    pub fn extend(&self, last: i64) -> Point {
        let mut coords = self.0.clone();
        coords.push(last);
        Point(coords)
    }

    pub fn add(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point(self.0.iter().zip(&other.0).map(|(x, y)| x - y).collect())
    }
}

impl From<Vec<i64>> for Point {
    fn from(coords: Vec<i64>) -> Self {
        Point(coords)
    }
}

impl<const N: usize> From<[i64; N]> for Point {
    fn from(coords: [i64; N]) -> Self {
        Point(coords.to_vec())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A finite set of points of a common dimension `dim >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointSet {
    dim: usize,
    points: BTreeSet<Point>,
}

impl PointSet {
    pub fn empty(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(PointSet { dim, points: BTreeSet::new() })
    }

    /// Builds a set from points, checking that every point has dimension `dim`.
    /// Duplicates collapse.
    pub fn new<I, P>(dim: usize, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: Into<Point>,
    {
        let mut set = PointSet::empty(dim)?;
        for p in points {
            set.insert(p.into())?;
        }
        Ok(set)
    }

    /// Builds a set whose dimension is taken from the first point.
    pub fn from_points<I, P>(points: I) -> Result<Self>
    where
        I: IntoIterator<Item = P>,
        P: Into<Point>,
    {
        let mut iter = points.into_iter().map(Into::into).peekable();
        let dim = iter.peek().map(Point::dim).ok_or(Error::EmptySet)?;
        PointSet::new(dim, iter)
    }

    /// One-dimensional set from integers.
    pub fn line<I: IntoIterator<Item = i64>>(values: I) -> Self {
        PointSet { dim: 1, points: values.into_iter().map(|v| Point(vec![v])).collect() }
    }

    pub fn insert(&mut self, p: Point) -> Result<bool> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: p.dim() });
        }
        Ok(self.points.insert(p))
    }

    pub fn remove(&mut self, p: &Point) -> bool {
        self.points.remove(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.contains(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Point> + '_ {
        self.points.iter()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.dim == other.dim && self.points.is_subset(&other.points)
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.points.is_disjoint(&other.points)
    }

    pub fn union(&self, other: &PointSet) -> Result<PointSet> {
        self.check_dim(other)?;
        Ok(PointSet { dim: self.dim, points: self.points.union(&other.points).cloned().collect() })
    }

    fn check_dim(&self, other: &PointSet) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    /// Minkowski sum `{a + b : a in self, b in other}`.
    pub fn sumset(&self, other: &PointSet) -> Result<PointSet> {
        self.check_dim(other)?;
        let mut points = BTreeSet::new();
        for a in &self.points {
            for b in &other.points {
                points.insert(a.add(b));
            }
        }
        Ok(PointSet { dim: self.dim, points })
    }

    pub fn translate(&self, v: &Point) -> Result<PointSet> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.dim() });
        }
        Ok(PointSet { dim: self.dim, points: self.points.iter().map(|p| p.add(v)).collect() })
    }

    /// Translation in the final coordinate only.
    pub fn shift_last(&self, by: i64) -> PointSet {
        let mut v = vec![0; self.dim];
        v[self.dim - 1] = by;
        self.translate(&Point(v)).expect("dimension matches by construction")
    }

    /// Image under the projection onto the final coordinate.
    pub fn project_last(&self) -> BTreeSet<i64> {
        self.points.iter().map(Point::last).collect()
    }

    /// Number of points whose final coordinate equals `n`. Defined in every
    /// dimension; for `dim == 1` this is the 0/1 size of a zero-dimensional fibre.
    pub fn fiber_len(&self, n: i64) -> usize {
        self.points.iter().filter(|p| p.last() == n).count()
    }

    /// The fibre above `n`, as a subset of `Z^(d-1)`.
    pub fn fiber(&self, n: i64) -> Result<PointSet> {
        if self.dim < 2 {
            return Err(Error::FiberOfLine(self.dim));
        }
        Ok(PointSet {
            dim: self.dim - 1,
            points: self.points.iter().filter(|p| p.last() == n).map(Point::head).collect(),
        })
    }

    /// All nonempty fibres keyed by final coordinate.
    pub fn fibers(&self) -> Result<BTreeMap<i64, PointSet>> {
        if self.dim < 2 {
            return Err(Error::FiberOfLine(self.dim));
        }
        let mut out: BTreeMap<i64, PointSet> = BTreeMap::new();
        for p in &self.points {
            out.entry(p.last())
                .or_insert_with(|| PointSet { dim: self.dim - 1, points: BTreeSet::new() })
                .points
                .insert(p.head());
        }
        Ok(out)
    }

    /// Inverse of [`PointSet::fiber`]: places `self` at height `n` in one
    /// dimension higher.
    pub fn lift(&self, n: i64) -> PointSet {
        PointSet { dim: self.dim + 1, points: self.points.iter().map(|p| p.extend(n)).collect() }
    }

    /// Partition by the residue of the final coordinate mod `q`.
    pub fn foliate(&self, q: i64) -> Result<Foliation> {
        if q <= 0 {
            return Err(Error::InvalidModulus(q));
        }
        let mut classes: BTreeMap<i64, PointSet> = BTreeMap::new();
        for p in &self.points {
            classes
                .entry(p.last().rem_euclid(q))
                .or_insert_with(|| PointSet { dim: self.dim, points: BTreeSet::new() })
                .points
                .insert(p.clone());
        }
        Ok(Foliation { modulus: q, classes })
    }

    /// Coordinatewise minimum. `None` for the empty set.
    pub fn min_corner(&self) -> Option<Point> {
        let mut iter = self.points.iter();
        let first = iter.next()?.clone();
        Some(iter.fold(first, |acc, p| Point(acc.0.iter().zip(&p.0).map(|(a, b)| *a.min(b)).collect())))
    }

    /// Coordinatewise maximum. `None` for the empty set.
    pub fn max_corner(&self) -> Option<Point> {
        let mut iter = self.points.iter();
        let first = iter.next()?.clone();
        Some(iter.fold(first, |acc, p| Point(acc.0.iter().zip(&p.0).map(|(a, b)| *a.max(b)).collect())))
    }

    /// The translate whose coordinatewise minimum is the origin.
    pub fn canonicalize(&self) -> Result<PointSet> {
        let min = self.min_corner().ok_or(Error::EmptySet)?;
        Ok(PointSet { dim: self.dim, points: self.points.iter().map(|p| p.sub(&min)).collect() })
    }

    pub fn is_canonical(&self) -> bool {
        self.min_corner().is_some_and(|m| m.0.iter().all(|&c| c == 0))
    }

    /// Applies a coordinate permutation: new coordinate `i` is old coordinate `perm[i]`.
    pub fn permute_axes(&self, perm: &[usize]) -> PointSet {
        PointSet {
            dim: self.dim,
            points: self.points.iter().map(|p| Point(perm.iter().map(|&i| p.0[i]).collect())).collect(),
        }
    }

    /// Parses the line format: one point per line, coordinates separated by
    /// single spaces; blank lines and `#` comments are skipped. `dim` is
    /// required when the text contains no points.
    pub fn parse_text(text: &str, dim: Option<usize>) -> Result<PointSet> {
        let mut points = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let coords = line
                .split(' ')
                .map(|tok| {
                    tok.parse::<i64>()
                        .map_err(|e| Error::Parse { line: idx + 1, message: format!("bad coordinate {tok:?}: {e}") })
                })
                .collect::<Result<Vec<_>>>()?;
            if let Some(d) = dim.or(points.first().map(Point::dim)) {
                if coords.len() != d {
                    return Err(Error::Parse {
                        line: idx + 1,
                        message: format!("expected {d} coordinates, found {}", coords.len()),
                    });
                }
            }
            points.push(Point(coords));
        }
        match (dim, points.first()) {
            (Some(d), _) => PointSet::new(d, points),
            (None, Some(_)) => PointSet::from_points(points),
            (None, None) => Err(Error::Parse { line: 0, message: "empty point set with no dimension given".into() }),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.points {
            let line: Vec<String> = p.0.iter().map(i64::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point;
    type IntoIter = std::collections::btree_set::Iter<'a, Point>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.points.iter())
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<Vec<i64>> = Vec::deserialize(deserializer)?;
        PointSet::from_points(raw).map_err(D::Error::custom)
    }
}

/// Residue classes of a point set by final coordinate mod `modulus`.
/// Empty classes are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Foliation {
    pub modulus: i64,
    pub classes: BTreeMap<i64, PointSet>,
}

impl Foliation {
    pub fn class_len(&self, r: i64) -> usize {
        self.classes.get(&r).map_or(0, PointSet::len)
    }
}

/// Axis-aligned box of lattice points, inclusive on both ends.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxBounds(Vec<(i64, i64)>);

impl BoxBounds {
    pub fn new(ranges: Vec<(i64, i64)>) -> Result<Self> {
        if ranges.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if let Some((lo, hi)) = ranges.iter().find(|(lo, hi)| lo > hi) {
            return Err(Error::InvalidBounds(format!("empty range {lo}..{hi}")));
        }
        Ok(BoxBounds(ranges))
    }

    /// The cube `[lo, hi]^dim`.
    pub fn cube(dim: usize, lo: i64, hi: i64) -> Result<Self> {
        BoxBounds::new(vec![(lo, hi); dim])
    }

    /// Parses `x0..x1[,y0..y1,...]`. A single range is replicated to `dim`
    /// axes when `dim` is given.
    pub fn parse(text: &str, dim: Option<usize>) -> Result<Self> {
        let ranges = text
            .split(',')
            .map(|part| {
                let (lo, hi) = part
                    .trim()
                    .split_once("..")
                    .ok_or_else(|| Error::InvalidBounds(format!("expected lo..hi, got {part:?}")))?;
                let parse = |s: &str| s.trim().parse::<i64>().map_err(|e| Error::InvalidBounds(format!("{s:?}: {e}")));
                Ok((parse(lo)?, parse(hi)?))
            })
            .collect::<Result<Vec<_>>>()?;
        match dim {
            Some(d) if ranges.len() == 1 && d > 1 => BoxBounds::new(vec![ranges[0]; d]),
            Some(d) if ranges.len() != d => {
                Err(Error::InvalidBounds(format!("{} ranges given for dimension {d}", ranges.len())))
            }
            _ => BoxBounds::new(ranges),
        }
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn ranges(&self) -> &[(i64, i64)] {
        &self.0
    }

    pub fn side(&self, axis: usize) -> i64 {
        let (lo, hi) = self.0[axis];
        hi - lo + 1
    }

    pub fn num_points(&self) -> u128 {
        (0..self.dim()).map(|i| self.side(i) as u128).product()
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.dim() == self.dim() && p.coords().iter().zip(&self.0).all(|(c, (lo, hi))| lo <= c && c <= hi)
    }

    /// All lattice points in the box, lexicographic order.
    pub fn points(&self) -> Vec<Point> {
        let mut out = vec![Point(Vec::with_capacity(self.dim()))];
        for &(lo, hi) in &self.0 {
            out = out.into_iter().flat_map(|p| (lo..=hi).map(move |c| p.extend(c))).collect();
        }
        out
    }

    /// Drops the final axis.
    pub fn head(&self) -> Option<BoxBounds> {
        (self.dim() > 1).then(|| BoxBounds(self.0[..self.dim() - 1].to_vec()))
    }

    pub fn last(&self) -> (i64, i64) {
        *self.0.last().expect("boxes have dimension >= 1")
    }

    /// The same box translated so its lower corner is the origin.
    pub fn at_origin(&self) -> BoxBounds {
        BoxBounds(self.0.iter().map(|(lo, hi)| (0, hi - lo)).collect())
    }
}

impl fmt::Display for BoxBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (lo, hi)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{lo}..{hi}")?;
        }
        Ok(())
    }
}
