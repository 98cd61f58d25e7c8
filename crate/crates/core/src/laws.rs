//! Planarity laws over 4-point subsets and the same-divider law of the unit
//! form.
//!
//! Everything reduces to a 6-bit word per 4-subset `R = [r0,r1,r2,r3]`: bit
//! `i` is the same-div bit of the `i`-th divider of `R` (lexicographic, see
//! [`QUAD_PAIRS`]) evaluated on the two remaining points of `R`.

use std::fmt;

use serde::Serialize;

use crate::dps::DivPointSet;
use crate::label::{Label, LabelSet, Pair};
use crate::unit::{UnitDivPointSet, UnitKey};

/// Index pairs of a sorted quad, in lexicographic order.
pub const QUAD_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Bit positions of the three dividers through each quad position.
pub const STARS: [[usize; 3]; 4] = [[0, 1, 2], [0, 3, 4], [1, 3, 5], [2, 4, 5]];

/// Bit positions of the three dividers spanning each 3-point sub-triangle.
pub const TRIANGLES: [[usize; 3]; 4] = [[0, 1, 3], [0, 2, 4], [1, 2, 5], [3, 4, 5]];

/// The two quad positions not in `(x, y)`, ascending.
#[inline]
pub const fn quad_complement(x: usize, y: usize) -> (usize, usize) {
    let mut rest = [0usize; 2];
    let mut k = 0;
    let mut i = 0;
    while i < 4 {
        if i != x && i != y {
            rest[k] = i;
            k += 1;
        }
        i += 1;
    }
    (rest[0], rest[1])
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LawId {
    /// Three dividers through one point: the first separates its pair iff the
    /// other two agree.
    StarSeparated,
    /// Same star: the first joins its pair iff the other two disagree.
    StarJoined,
    /// Three dividers spanning a triangle: two separations force a join.
    TriangleJoin,
    /// One divider, three TBD points: an odd number of joins.
    SameDivider,
    /// Hypergraph edge over one 4-subset: convex pattern iff not concave.
    QuadEdge,
    /// Hypergraph edge over one divider and three TBD points.
    DividerEdge,
}

impl fmt::Display for LawId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LawId::StarSeparated => "star-separated",
            LawId::StarJoined => "star-joined",
            LawId::TriangleJoin => "triangle-join",
            LawId::SameDivider => "same-divider",
            LawId::QuadEdge => "quad-edge",
            LawId::DividerEdge => "divider-edge",
        })
    }
}

/// One failed law instance with its witness.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Violation {
    pub law: LawId,
    /// The 4-subset (or divider plus three TBD points) the law ranged over.
    pub subset: LabelSet,
    /// The unit dividons involved, as (divider, TBD pair).
    pub units: Vec<UnitKey>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {}:", self.law, self.subset)?;
        for u in &self.units {
            write!(f, " {u}")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct LawReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
}

impl LawReport {
    pub fn from_violations(violations: Vec<Violation>) -> Self {
        LawReport { passed: violations.is_empty(), violations }
    }
}

const fn star_even(bits: u8) -> bool {
    let mut c = 0;
    while c < 4 {
        let s = STARS[c];
        let ones = ((bits >> s[0]) & 1) + ((bits >> s[1]) & 1) + ((bits >> s[2]) & 1);
        if ones % 2 == 1 {
            return false;
        }
        c += 1;
    }
    true
}

const fn triangles_ok(bits: u8) -> bool {
    let mut t = 0;
    while t < 4 {
        let m = (1u8 << TRIANGLES[t][0]) | (1u8 << TRIANGLES[t][1]) | (1u8 << TRIANGLES[t][2]);
        if bits & m == 0 {
            return false;
        }
        t += 1;
    }
    true
}

const fn build_table(with_triangles: bool) -> [bool; 64] {
    let mut t = [false; 64];
    let mut b = 0;
    while b < 64 {
        t[b] = star_even(b as u8) && (!with_triangles || triangles_ok(b as u8));
        b += 1;
    }
    t
}

/// `LAWFUL[bits]`: the quad word satisfies all three per-subset laws.
pub const LAWFUL: [bool; 64] = build_table(true);

/// `STAR_LAWFUL[bits]`: only the two star laws are required.
pub const STAR_LAWFUL: [bool; 64] = build_table(false);

/// What a lawful quad word looks like.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum QuadShape {
    /// Zeros exactly on the three dividers through this quad position.
    Concave(usize),
    /// Zeros exactly on the complementary divider pair `(bit, 5 - bit)`.
    Convex(usize),
    Other,
}

pub fn quad_shape(bits: u8) -> QuadShape {
    let zeros = !bits & 0x3f;
    for (c, s) in STARS.iter().enumerate() {
        if zeros == (1 << s[0]) | (1 << s[1]) | (1 << s[2]) {
            return QuadShape::Concave(c);
        }
    }
    for i in 0..3 {
        if zeros == (1 << i) | (1 << (5 - i)) {
            return QuadShape::Convex(i);
        }
    }
    QuadShape::Other
}

fn quad_labels(r: LabelSet) -> [Label; 4] {
    let v = r.to_vec();
    [v[0], v[1], v[2], v[3]]
}

fn quad_key(q: [Label; 4], i: usize) -> UnitKey {
    let (x, y) = QUAD_PAIRS[i];
    let (u, v) = quad_complement(x, y);
    UnitKey { divider: Pair::new(q[x], q[y]), tbd: Pair::new(q[u], q[v]) }
}

/// Appends every per-subset violation of the quad word `bits` on `r`.
fn quad_violations(r: LabelSet, bits: u8, out: &mut Vec<Violation>) {
    if LAWFUL[bits as usize] {
        return;
    }
    let q = quad_labels(r);
    let bit = |i: usize| (bits >> i) & 1;
    for s in STARS {
        if (bit(s[0]) + bit(s[1]) + bit(s[2])) % 2 == 1 {
            let units: Vec<UnitKey> = s.iter().map(|&i| quad_key(q, i)).collect();
            out.push(Violation { law: LawId::StarSeparated, subset: r, units: units.clone() });
            out.push(Violation { law: LawId::StarJoined, subset: r, units });
        }
    }
    for t in TRIANGLES {
        if bit(t[0]) + bit(t[1]) + bit(t[2]) == 0 {
            out.push(Violation {
                law: LawId::TriangleJoin,
                subset: r,
                units: t.iter().map(|&i| quad_key(q, i)).collect(),
            });
        }
    }
}

/// Checks the per-subset planarity laws on every 4-subset. Passes vacuously
/// below four points.
pub fn check_planarity_laws(x: &DivPointSet) -> LawReport {
    let mut out = Vec::new();
    for r in x.points().subsets(4) {
        quad_violations(r, x.quad_bits(quad_labels(r)), &mut out);
    }
    LawReport::from_violations(out)
}

/// Early-exit form of [`check_planarity_laws`].
pub fn is_lawful(x: &DivPointSet) -> bool {
    x.points().subsets(4).all(|r| LAWFUL[x.quad_bits(quad_labels(r)) as usize])
}

/// Checks the same-divider law over every divider and TBD triple, then the
/// per-subset laws on the unit bits.
pub fn check_unit_laws(u: &UnitDivPointSet) -> LawReport {
    let mut out = Vec::new();
    let points = u.points();
    for d in points.pairs() {
        for t in points.difference(d.set()).subsets(3) {
            let v = t.to_vec();
            let keys = [
                UnitKey { divider: d, tbd: Pair::new(v[0], v[1]) },
                UnitKey { divider: d, tbd: Pair::new(v[0], v[2]) },
                UnitKey { divider: d, tbd: Pair::new(v[1], v[2]) },
            ];
            let ones = keys.iter().filter(|&&k| u.bit(k) == Some(true)).count();
            if ones % 2 == 0 {
                out.push(Violation { law: LawId::SameDivider, subset: d.set().union(t), units: keys.to_vec() });
            }
        }
    }
    for r in points.subsets(4) {
        quad_violations(r, u.quad_bits(quad_labels(r)), &mut out);
    }
    LawReport::from_violations(out)
}
