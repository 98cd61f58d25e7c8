//! Integer point sets in general position and the div point sets they
//! induce.
//!
//! Coordinates are generic over [`Coordinate`]; every fixed-width type has a
//! magnitude cap small enough that the orientation determinant cannot
//! overflow.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Signed};
use rand::Rng;

use crate::dps::DivPointSet;
use crate::error::Error;
use crate::format::RawPoint;
use crate::label::{Label, LabelSet};

/// An exact signed coordinate type.
pub trait Coordinate: Clone + Ord + Signed + FromPrimitive + Debug + Display {
    /// Largest accepted `|x|` or `|y|`; `None` means unbounded.
    fn limit() -> Option<Self>;

    fn in_range(&self) -> bool {
        Self::limit().is_none_or(|l| self.abs() <= l)
    }
}

// |det| <= 8 L^2 must fit the type.
impl Coordinate for i32 {
    fn limit() -> Option<Self> {
        Some(10_000)
    }
}

impl Coordinate for i64 {
    fn limit() -> Option<Self> {
        Some(1_000_000_000)
    }
}

impl Coordinate for i128 {
    fn limit() -> Option<Self> {
        Some(1_000_000_000_000_000_000)
    }
}

impl Coordinate for BigInt {
    fn limit() -> Option<Self> {
        None
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PlanarPoint<T> {
    pub label: Label,
    pub x: T,
    pub y: T,
}

impl<T: Coordinate> PlanarPoint<T> {
    pub fn new(label: Label, x: T, y: T) -> Self {
        PlanarPoint { label, x, y }
    }
}

/// Sign of `(q - p) x (r - p)`: `+1` counterclockwise, `0` collinear.
pub fn orientation<T: Coordinate>(p: &PlanarPoint<T>, q: &PlanarPoint<T>, r: &PlanarPoint<T>) -> i8 {
    let det = (q.x.clone() - p.x.clone()) * (r.y.clone() - p.y.clone())
        - (q.y.clone() - p.y.clone()) * (r.x.clone() - p.x.clone());
    if det.is_positive() {
        1
    } else if det.is_negative() {
        -1
    } else {
        0
    }
}

/// Points with distinct labels and coordinates, no three collinear.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PlanarPointSet<T> {
    points: Vec<PlanarPoint<T>>,
}

impl<T: Coordinate> PlanarPointSet<T> {
    pub fn new(mut points: Vec<PlanarPoint<T>>) -> Result<Self, Error> {
        points.sort_by_key(|p| p.label);
        for w in points.windows(2) {
            if w[0].label == w[1].label {
                return Err(Error::DuplicateLabel(w[0].label.get()));
            }
        }
        if let Some(p) = points.iter().find(|p| !p.x.in_range() || !p.y.in_range()) {
            return Err(Error::CoordinateRange(p.label.get()));
        }
        for (i, p) in points.iter().enumerate() {
            for q in &points[i + 1..] {
                if p.x == q.x && p.y == q.y {
                    return Err(Error::DuplicatePoint(p.label.get(), q.label.get()));
                }
            }
        }
        let n = points.len();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if orientation(&points[i], &points[j], &points[k]) == 0 {
                        return Err(Error::CollinearTriple(
                            points[i].label.get(),
                            points[j].label.get(),
                            points[k].label.get(),
                        ));
                    }
                }
            }
        }
        Ok(PlanarPointSet { points })
    }

    /// From `(x, y)` pairs labelled `1, 2, ...` in order.
    pub fn from_coords(coords: &[(T, T)]) -> Result<Self, Error> {
        let pts = coords
            .iter()
            .enumerate()
            .map(|(i, (x, y))| Ok(PlanarPoint::new(Label::new(i as u32 + 1)?, x.clone(), y.clone())))
            .collect::<Result<Vec<_>, Error>>()?;
        Self::new(pts)
    }

    pub fn from_raw(raw: &[RawPoint]) -> Result<Self, Error> {
        let pts = raw
            .iter()
            .map(|r| {
                let label = Label::new(r.label)?;
                let conv = |v: i64| T::from_i64(v).ok_or(Error::CoordinateRange(r.label));
                Ok(PlanarPoint::new(label, conv(r.x)?, conv(r.y)?))
            })
            .collect::<Result<Vec<_>, Error>>()?;
        Self::new(pts)
    }

    /// Sorted by label.
    pub fn points(&self) -> &[PlanarPoint<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn labels(&self) -> LabelSet {
        self.points.iter().map(|p| p.label).collect()
    }

    fn index(&self, l: Label) -> usize {
        self.points.binary_search_by_key(&l, |p| p.label).expect("label present")
    }

    /// Whether the labelled points are in convex position: none lies inside a
    /// triangle of three others.
    pub fn in_convex_position(&self, subset: LabelSet) -> bool {
        let idx: Vec<usize> = subset.iter().map(|l| self.index(l)).collect();
        let p = &self.points;
        for &d in &idx {
            for (a_i, &a) in idx.iter().enumerate() {
                for (b_i, &b) in idx.iter().enumerate().skip(a_i + 1) {
                    for &c in idx.iter().skip(b_i + 1) {
                        if d == a || d == b || d == c {
                            continue;
                        }
                        let o1 = orientation(&p[a], &p[b], &p[d]);
                        let o2 = orientation(&p[b], &p[c], &p[d]);
                        let o3 = orientation(&p[c], &p[a], &p[d]);
                        if o1 == o2 && o2 == o3 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// For each divider `{a, b}` (`a < b`) the first div holds the points to the
/// left of the directed line `a -> b`.
pub fn build_dps<T: Coordinate>(pts: &PlanarPointSet<T>) -> Result<DivPointSet, Error> {
    let p = pts.points();
    DivPointSet::from_sides(pts.labels(), |d| {
        let (a, b) = (&p[pts.index(d.lo())], &p[pts.index(d.hi())]);
        p.iter().filter(|c| orientation(a, b, c) > 0).map(|c| c.label).collect()
    })
}

/// Some `k` points in convex position, by scanning all `k`-subsets.
pub fn find_convex_subset<T: Coordinate>(pts: &PlanarPointSet<T>, k: usize) -> Option<LabelSet> {
    if k < 3 {
        return None;
    }
    pts.labels().subsets(k).find(|&s| pts.in_convex_position(s))
}

/// `n` points drawn uniformly from `[-range, range]^2`, redrawing any point
/// that would repeat a coordinate or close a collinear triple.
pub fn random_general_position<R: Rng>(n: usize, range: i64, rng: &mut R) -> PlanarPointSet<i64> {
    assert!(n <= crate::label::MAX_LABEL as usize, "too many points");
    assert!((2..=1_000_000_000).contains(&range), "range out of bounds");
    let mut pts: Vec<PlanarPoint<i64>> = Vec::with_capacity(n);
    while pts.len() < n {
        let c = PlanarPoint::new(
            Label::of(pts.len() as u32 + 1),
            rng.gen_range(-range..=range),
            rng.gen_range(-range..=range),
        );
        if fits(&pts, &c, usize::MAX) {
            pts.push(c);
        }
    }
    PlanarPointSet::new(pts).expect("general position by construction")
}

// `c` keeps `pts` (ignoring index `skip`) in general position.
fn fits(pts: &[PlanarPoint<i64>], c: &PlanarPoint<i64>, skip: usize) -> bool {
    for (i, p) in pts.iter().enumerate() {
        if i == skip {
            continue;
        }
        if p.x == c.x && p.y == c.y {
            return false;
        }
        for (j, q) in pts.iter().enumerate().skip(i + 1) {
            if j != skip && orientation(p, q, c) == 0 {
                return false;
            }
        }
    }
    true
}

fn convex_count(pts: &[PlanarPoint<i64>], k: usize) -> usize {
    let set = PlanarPointSet { points: pts.to_vec() };
    set.labels().subsets(k).filter(|&s| set.in_convex_position(s)).count()
}

/// Randomised local search for `n` points with no `k` in convex position.
///
/// Starts from random points on a `[-range, range]^2` grid and moves one point
/// at a time, keeping moves that do not increase the number of convex
/// `k`-subsets; restarts after `stall` fruitless moves.
pub fn search_no_convex_subset<R: Rng>(
    n: usize,
    k: usize,
    range: i64,
    max_moves: usize,
    rng: &mut R,
) -> Option<PlanarPointSet<i64>> {
    let stall = 2_000;
    let mut moves = 0;
    while moves < max_moves {
        let mut pts = random_general_position(n, range, rng).points;
        let mut score = convex_count(&pts, k);
        let mut since = 0;
        while score > 0 && since < stall && moves < max_moves {
            moves += 1;
            since += 1;
            let i = rng.gen_range(0..n);
            let c = PlanarPoint::new(pts[i].label, rng.gen_range(-range..=range), rng.gen_range(-range..=range));
            if !fits(&pts, &c, i) {
                continue;
            }
            let old = std::mem::replace(&mut pts[i], c);
            let s = convex_count(&pts, k);
            if s <= score {
                if s < score {
                    since = 0;
                }
                score = s;
            } else {
                pts[i] = old;
            }
        }
        if score == 0 {
            return Some(PlanarPointSet::new(pts).expect("general position maintained"));
        }
    }
    None
}
