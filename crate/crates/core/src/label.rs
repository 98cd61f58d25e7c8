//! Point labels, label sets and unordered label pairs.
//!
//! Labels are small positive integers so that a whole configuration fits in
//! a single `u64` bitmask. Bit `i` of a [`LabelSet`] stands for label `i`;
//! bit 0 is never set.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Largest label a configuration may use.
pub const MAX_LABEL: u8 = 63;

/// Identifier of one point. Always in `1..=MAX_LABEL`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Label(u8);

impl Label {
    pub fn new(value: u32) -> Result<Self, Error> {
        if value == 0 || value > MAX_LABEL as u32 {
            return Err(Error::BadLabel(value));
        }
        Ok(Label(value as u8))
    }

    /// Panics on an out-of-range value; meant for literals and loops over
    /// already-validated ranges.
    pub fn of(value: u32) -> Self {
        Label::new(value).expect("label out of range")
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0 as u32
    }

    #[inline]
    fn bit(self) -> u64 {
        1u64 << self.0
    }
}

impl TryFrom<u32> for Label {
    type Error = Error;
    fn try_from(value: u32) -> Result<Self, Error> {
        Label::new(value)
    }
}

impl From<Label> for u32 {
    fn from(l: Label) -> u32 {
        l.get()
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A set of labels stored as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelSet(u64);

impl LabelSet {
    pub const EMPTY: LabelSet = LabelSet(0);

    #[inline]
    pub fn from_bits(bits: u64) -> Self {
        debug_assert_eq!(bits & 1, 0);
        LabelSet(bits)
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{1, ..., n}`
    pub fn range(n: u32) -> Self {
        assert!(n <= MAX_LABEL as u32);
        if n == 0 {
            return LabelSet::EMPTY;
        }
        LabelSet(((1u64 << n) - 1) << 1)
    }

    pub fn of(labels: &[u32]) -> Self {
        labels.iter().map(|&l| Label::of(l)).collect()
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, l: Label) -> bool {
        self.0 & l.bit() != 0
    }

    #[inline]
    pub fn insert(&mut self, l: Label) {
        self.0 |= l.bit();
    }

    #[inline]
    pub fn with(self, l: Label) -> Self {
        LabelSet(self.0 | l.bit())
    }

    #[inline]
    pub fn without(self, l: Label) -> Self {
        LabelSet(self.0 & !l.bit())
    }

    #[inline]
    pub fn union(self, other: LabelSet) -> Self {
        LabelSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: LabelSet) -> Self {
        LabelSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: LabelSet) -> Self {
        LabelSet(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset(self, other: LabelSet) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: LabelSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn min(self) -> Option<Label> {
        if self.0 == 0 {
            None
        } else {
            Some(Label(self.0.trailing_zeros() as u8))
        }
    }

    pub fn max(self) -> Option<Label> {
        if self.0 == 0 {
            None
        } else {
            Some(Label(63 - self.0.leading_zeros() as u8))
        }
    }

    /// Number of members strictly smaller than `l`.
    #[inline]
    pub fn rank_of(self, l: Label) -> usize {
        (self.0 & (l.bit() - 1)).count_ones() as usize
    }

    /// Members in ascending order.
    pub fn iter(self) -> LabelIter {
        LabelIter(self.0)
    }

    pub fn to_vec(self) -> Vec<Label> {
        self.iter().collect()
    }

    pub fn to_u32s(self) -> Vec<u32> {
        self.iter().map(Label::get).collect()
    }

    /// All subsets of exactly `k` members, in lexicographic order of their
    /// sorted member lists.
    pub fn subsets(self, k: usize) -> impl Iterator<Item = LabelSet> {
        let members = self.to_vec();
        crate::combinatorics::Combinations::new(members.len(), k)
            .map(move |idx| idx.iter().map(|&i| members[i]).collect())
    }

    /// All unordered pairs of members, lexicographically ordered.
    pub fn pairs(self) -> impl Iterator<Item = Pair> {
        let members = self.to_vec();
        let n = members.len();
        (0..n).flat_map(move |i| {
            let members = members.clone();
            (i + 1..n).map(move |j| Pair::new(members[i], members[j]))
        })
    }
}

impl FromIterator<Label> for LabelSet {
    fn from_iter<I: IntoIterator<Item = Label>>(iter: I) -> Self {
        let mut s = LabelSet::EMPTY;
        for l in iter {
            s.insert(l);
        }
        s
    }
}

impl Serialize for LabelSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter().map(Label::get))
    }
}

impl Serialize for Pair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.lo.get(), self.hi.get()].serialize(s)
    }
}

impl fmt::Debug for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

pub struct LabelIter(u64);

impl Iterator for LabelIter {
    type Item = Label;

    #[inline]
    fn next(&mut self) -> Option<Label> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(Label(tz as u8))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for LabelIter {}

/// An unordered pair of distinct labels, stored smaller first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair {
    lo: Label,
    hi: Label,
}

impl Pair {
    /// Panics if `a == b`.
    pub fn new(a: Label, b: Label) -> Self {
        Pair::try_new(a, b).expect("pair members must differ")
    }

    pub fn try_new(a: Label, b: Label) -> Option<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Some(Pair { lo: a, hi: b }),
            std::cmp::Ordering::Greater => Some(Pair { lo: b, hi: a }),
            std::cmp::Ordering::Equal => None,
        }
    }

    pub fn of(a: u32, b: u32) -> Self {
        Pair::new(Label::of(a), Label::of(b))
    }

    #[inline]
    pub fn lo(self) -> Label {
        self.lo
    }

    #[inline]
    pub fn hi(self) -> Label {
        self.hi
    }

    #[inline]
    pub fn set(self) -> LabelSet {
        LabelSet(self.lo.bit() | self.hi.bit())
    }

    #[inline]
    pub fn contains(self, l: Label) -> bool {
        self.lo == l || self.hi == l
    }

    /// Index of this pair among all pairs of `points` in lexicographic order.
    /// Both members must belong to `points`.
    #[inline]
    pub fn index_in(self, points: LabelSet) -> usize {
        let n = points.len();
        let i = points.rank_of(self.lo);
        let j = points.rank_of(self.hi);
        i * (2 * n - i - 1) / 2 + (j - i - 1)
    }

    pub fn from_set(s: LabelSet) -> Option<Self> {
        if s.len() != 2 {
            return None;
        }
        let mut it = s.iter();
        Some(Pair { lo: it.next()?, hi: it.next()? })
    }
}

impl fmt::Debug for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.lo, self.hi)
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
