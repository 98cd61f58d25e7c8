//! Unit div point sets: one same-div bit per (divider, TBD pair).

use std::fmt;

use crate::combinatorics::binomial;
use crate::dps::DivPointSet;
use crate::error::Error;
use crate::format::{RawUnitDivPointSet, RawUnitDividon};
use crate::label::{Label, LabelSet, Pair};

/// The (divider, TBD pair) key of a unit dividon.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, serde::Serialize)]
pub struct UnitKey {
    pub divider: Pair,
    pub tbd: Pair,
}

impl UnitKey {
    pub fn new(divider: Pair, tbd: Pair) -> Result<Self, Error> {
        if !divider.set().is_disjoint(tbd.set()) {
            return Err(Error::BadUnitDividon { divider, tbd });
        }
        Ok(UnitKey { divider, tbd })
    }

    /// The four points the unit dividon talks about.
    #[inline]
    pub fn xi(&self) -> LabelSet {
        self.divider.set().union(self.tbd.set())
    }
}

impl fmt::Display for UnitKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.divider, self.tbd)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct UnitDividon {
    pub key: UnitKey,
    /// Both TBD points in one div.
    pub same_div: bool,
}

impl UnitDividon {
    pub fn new(divider: Pair, tbd: Pair, same_div: bool) -> Result<Self, Error> {
        Ok(UnitDividon { key: UnitKey::new(divider, tbd)?, same_div })
    }

    pub fn xi(&self) -> LabelSet {
        self.key.xi()
    }
}

/// Divider ∪ TBD pair of a unit dividon.
pub fn xi(ud: &UnitDividon) -> LabelSet {
    ud.xi()
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UnitDivPointSet {
    points: LabelSet,
    units: Vec<UnitDividon>,
}

/// `C(n,2) * C(n-2,2)`
pub fn unit_count(n: usize) -> usize {
    let n = n as u64;
    if n < 2 {
        return 0;
    }
    (binomial(n, 2) * binomial(n - 2, 2)) as usize
}

impl UnitDivPointSet {
    /// Builds from a bit oracle over every (divider, TBD pair) of `points`.
    pub fn from_fn<F>(points: LabelSet, mut bit: F) -> Result<Self, Error>
    where
        F: FnMut(Pair, Pair) -> bool,
    {
        if points.len() < 4 {
            return Err(Error::TooFewPoints(points.len()));
        }
        let mut units = Vec::with_capacity(unit_count(points.len()));
        for d in points.pairs() {
            for t in points.difference(d.set()).pairs() {
                units.push(UnitDividon { key: UnitKey { divider: d, tbd: t }, same_div: bit(d, t) });
            }
        }
        Ok(UnitDivPointSet { points, units })
    }

    pub fn validate(raw: &RawUnitDivPointSet) -> Result<Self, Error> {
        let mut points = LabelSet::EMPTY;
        for &p in &raw.points {
            let l = Label::new(p)?;
            if points.contains(l) {
                return Err(Error::DuplicateLabel(p));
            }
            points.insert(l);
        }
        if points.len() < 4 {
            return Err(Error::TooFewPoints(points.len()));
        }
        let pair_of = |v: &[u32]| -> Result<Pair, Error> {
            let mut s = LabelSet::EMPTY;
            for &x in v {
                s.insert(Label::new(x)?);
            }
            match Pair::from_set(s) {
                Some(p) if v.len() == 2 && s.is_subset(points) => Ok(p),
                _ => Err(Error::BadDividerSize(s)),
            }
        };
        let mut units = Vec::with_capacity(raw.unit_dividons.len());
        for ru in &raw.unit_dividons {
            let divider = pair_of(&ru.divider)?;
            let tbd = pair_of(&ru.tbd)?;
            if ru.same_div > 1 {
                return Err(Error::BadUnitDividon { divider, tbd });
            }
            units.push(UnitDividon::new(divider, tbd, ru.same_div == 1)?);
        }
        units.sort();
        for w in units.windows(2) {
            if w[0].key == w[1].key {
                return Err(Error::BadUnitDividon { divider: w[0].key.divider, tbd: w[0].key.tbd });
            }
        }
        let expected = unit_count(points.len());
        if units.len() != expected {
            return Err(Error::WrongUnitDividonCount { expected, found: units.len() });
        }
        Ok(UnitDivPointSet { points, units })
    }

    pub fn to_raw(&self) -> RawUnitDivPointSet {
        RawUnitDivPointSet {
            points: self.points.to_u32s(),
            unit_dividons: self
                .units
                .iter()
                .map(|u| RawUnitDividon {
                    divider: u.key.divider.set().to_u32s(),
                    tbd: u.key.tbd.set().to_u32s(),
                    same_div: u.same_div as u8,
                })
                .collect(),
        }
    }

    pub fn points(&self) -> LabelSet {
        self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn unit_dividons(&self) -> &[UnitDividon] {
        &self.units
    }

    fn index(&self, key: UnitKey) -> usize {
        let per_divider = binomial(self.points.len() as u64 - 2, 2) as usize;
        let rest = self.points.difference(key.divider.set());
        key.divider.index_in(self.points) * per_divider + key.tbd.index_in(rest)
    }

    /// Same-div bit for a key over this configuration's points.
    pub fn bit(&self, key: UnitKey) -> Option<bool> {
        if !key.xi().is_subset(self.points) || key.xi().len() != 4 {
            return None;
        }
        Some(self.units[self.index(key)].same_div)
    }

    /// Flips one bit in place; used by perturbation tests and tools.
    pub fn flip(&mut self, key: UnitKey) {
        let i = self.index(key);
        self.units[i].same_div = !self.units[i].same_div;
    }

    /// The six unit bits with support `quad`, in the same order as
    /// [`DivPointSet::quad_bits`].
    pub fn quad_bits(&self, quad: [Label; 4]) -> u8 {
        let mut bits = 0u8;
        for (i, &(x, y)) in crate::laws::QUAD_PAIRS.iter().enumerate() {
            let (u, v) = crate::laws::quad_complement(x, y);
            let key = UnitKey { divider: Pair::new(quad[x], quad[y]), tbd: Pair::new(quad[u], quad[v]) };
            if self.units[self.index(key)].same_div {
                bits |= 1 << i;
            }
        }
        bits
    }

    /// Keeps the unit dividons whose support lies inside `subset`.
    pub fn restrict(&self, subset: LabelSet) -> Result<Self, Error> {
        if !subset.is_subset(self.points) {
            return Err(Error::NotASubset(subset));
        }
        if subset.len() < 4 {
            return Err(Error::TooFewPoints(subset.len()));
        }
        let units = self.units.iter().copied().filter(|u| u.xi().is_subset(subset)).collect();
        Ok(UnitDivPointSet { points: subset, units })
    }
}

/// Breaks every dividon into its unit dividons.
pub fn to_unit(x: &DivPointSet) -> Result<UnitDivPointSet, Error> {
    UnitDivPointSet::from_fn(x.points(), |d, t| x.same_div(d, t.lo(), t.hi()))
}

/// Rebuilds the div point set whose unit form is `u`.
///
/// Per divider the same-div = 1 pairs are merged into classes; the bits are
/// accepted when no same-div = 0 pair falls inside a class and at most two
/// classes remain.
pub fn from_unit(u: &UnitDivPointSet) -> Result<DivPointSet, Error> {
    let points = u.points();
    let mut sides = Vec::with_capacity(binomial(points.len() as u64, 2) as usize);
    let per_divider = binomial(points.len() as u64 - 2, 2) as usize;
    for (di, chunk) in u.unit_dividons().chunks(per_divider).enumerate() {
        let divider = chunk[0].key.divider;
        debug_assert_eq!(divider.index_in(points), di);
        let tbd = points.difference(divider.set());
        // union-find over TBD labels
        let mut parent = [0u8; 64];
        for l in tbd.iter() {
            parent[l.get() as usize] = l.get() as u8;
        }
        fn find(parent: &mut [u8; 64], x: u8) -> u8 {
            let mut r = x;
            while parent[r as usize] != r {
                r = parent[r as usize];
            }
            let mut c = x;
            while parent[c as usize] != r {
                let next = parent[c as usize];
                parent[c as usize] = r;
                c = next;
            }
            r
        }
        for ud in chunk.iter().filter(|ud| ud.same_div) {
            let a = find(&mut parent, ud.key.tbd.lo().get() as u8);
            let b = find(&mut parent, ud.key.tbd.hi().get() as u8);
            parent[a.max(b) as usize] = a.min(b);
        }
        for ud in chunk.iter().filter(|ud| !ud.same_div) {
            let a = find(&mut parent, ud.key.tbd.lo().get() as u8);
            let b = find(&mut parent, ud.key.tbd.hi().get() as u8);
            if a == b {
                return Err(Error::InconsistentSameDiv { divider });
            }
        }
        let mut roots = LabelSet::EMPTY;
        let mut first = LabelSet::EMPTY;
        let lead = tbd.min().map(|l| find(&mut parent, l.get() as u8));
        for l in tbd.iter() {
            let r = find(&mut parent, l.get() as u8);
            roots.insert(Label::of(r as u32));
            if Some(r) == lead {
                first.insert(l);
            }
        }
        if roots.len() > 2 {
            return Err(Error::MoreThanTwoDivs { divider, classes: roots.len() });
        }
        sides.push(first);
    }
    let mut it = sides.into_iter();
    DivPointSet::from_sides(points, |_| it.next().expect("one side per divider"))
}
