//! Div point sets: a label set plus one dividon per point pair.

use std::fmt;

use crate::combinatorics::binomial;
use crate::error::Error;
use crate::format::{RawDivPointSet, RawDividon};
use crate::label::{Label, LabelSet, Pair};

/// The two sides a divider splits its TBD points into.
///
/// Stored canonically: the div holding the smallest TBD label comes first,
/// so an empty div is always second.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Divs([LabelSet; 2]);

impl Divs {
    /// Canonicalizes the order; no validation beyond that.
    pub fn new(a: LabelSet, b: LabelSet) -> Self {
        let first_a = match (a.min(), b.min()) {
            (Some(x), Some(y)) => x < y,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => true,
        };
        if first_a {
            Divs([a, b])
        } else {
            Divs([b, a])
        }
    }

    /// Split `tbd` into `side` and the rest.
    pub fn split(tbd: LabelSet, side: LabelSet) -> Self {
        let side = side.intersection(tbd);
        Divs::new(side, tbd.difference(side))
    }

    #[inline]
    pub fn first(&self) -> LabelSet {
        self.0[0]
    }

    #[inline]
    pub fn second(&self) -> LabelSet {
        self.0[1]
    }

    #[inline]
    pub fn union(&self) -> LabelSet {
        self.0[0].union(self.0[1])
    }

    pub fn as_array(&self) -> [LabelSet; 2] {
        self.0
    }

    /// Same-div test for two members of the union; no checks.
    #[inline]
    pub(crate) fn together(&self, a: Label, b: Label) -> bool {
        self.0[0].contains(a) == self.0[0].contains(b)
    }
}

impl fmt::Display for Divs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0[0], self.0[1])
    }
}

/// One divider together with its divs.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Dividon {
    pub divider: Pair,
    pub divs: Divs,
}

impl Dividon {
    pub fn tbd(&self) -> LabelSet {
        self.divs.union()
    }
}

impl fmt::Display for Dividon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.divider, self.divs)
    }
}

/// A validated div point set.
///
/// Dividons are kept sorted by divider, so equality is syntactic and a
/// divider's dividon is found by index arithmetic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DivPointSet {
    points: LabelSet,
    dividons: Vec<Dividon>,
}

impl DivPointSet {
    /// Builds a configuration from a side selector: for every divider the
    /// closure returns one side (any set; it is clipped to the TBD points)
    /// and the other side is the complement.
    pub fn from_sides<F>(points: LabelSet, mut side: F) -> Result<Self, Error>
    where
        F: FnMut(Pair) -> LabelSet,
    {
        if points.is_empty() {
            return Err(Error::NoPoints);
        }
        let dividons = points
            .pairs()
            .map(|d| {
                let tbd = points.difference(d.set());
                Dividon { divider: d, divs: Divs::split(tbd, side(d)) }
            })
            .collect();
        Ok(DivPointSet { points, dividons })
    }

    /// Checks the structural clauses and builds the configuration.
    pub fn validate(raw: &RawDivPointSet) -> Result<Self, Error> {
        let mut points = LabelSet::EMPTY;
        for &p in &raw.points {
            let l = Label::new(p)?;
            if points.contains(l) {
                return Err(Error::DuplicateLabel(p));
            }
            points.insert(l);
        }
        if points.is_empty() {
            return Err(Error::NoPoints);
        }
        let mut dividons = Vec::with_capacity(raw.dividons.len());
        for rd in &raw.dividons {
            dividons.push(parse_dividon(rd, points)?);
        }
        dividons.sort();
        for w in dividons.windows(2) {
            if w[0].divider == w[1].divider {
                return Err(Error::DuplicateDivider(w[0].divider));
            }
        }
        let expected = binomial(points.len() as u64, 2) as usize;
        if dividons.len() != expected {
            return Err(Error::WrongDividonCount { expected, found: dividons.len() });
        }
        Ok(DivPointSet { points, dividons })
    }

    pub fn to_raw(&self) -> RawDivPointSet {
        RawDivPointSet {
            points: self.points.to_u32s(),
            dividons: self
                .dividons
                .iter()
                .map(|d| RawDividon {
                    divider: vec![d.divider.lo().get(), d.divider.hi().get()],
                    divs: vec![d.divs.first().to_u32s(), d.divs.second().to_u32s()],
                })
                .collect(),
        }
    }

    #[inline]
    pub fn points(&self) -> LabelSet {
        self.points
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dividons(&self) -> &[Dividon] {
        &self.dividons
    }

    /// The dividon of `divider`, if both labels are points.
    pub fn dividon(&self, divider: Pair) -> Option<&Dividon> {
        if !divider.set().is_subset(self.points) {
            return None;
        }
        Some(&self.dividons[divider.index_in(self.points)])
    }

    /// Whether `a` and `b` lie in the same div of `divider`. All three
    /// arguments must be configuration points and `a`, `b` off the divider.
    #[inline]
    pub fn same_div(&self, divider: Pair, a: Label, b: Label) -> bool {
        self.dividons[divider.index_in(self.points)].divs.together(a, b)
    }

    /// Applies a relabeling. `map` must be injective on the points.
    pub fn relabel<F: Fn(Label) -> Label>(&self, map: F) -> Self {
        let points: LabelSet = self.points.iter().map(&map).collect();
        assert_eq!(points.len(), self.points.len(), "relabeling must be injective");
        let mut dividons: Vec<Dividon> = self
            .dividons
            .iter()
            .map(|d| {
                let image = |s: LabelSet| s.iter().map(&map).collect::<LabelSet>();
                Dividon {
                    divider: Pair::new(map(d.divider.lo()), map(d.divider.hi())),
                    divs: Divs::new(image(d.divs.first()), image(d.divs.second())),
                }
            })
            .collect();
        dividons.sort();
        DivPointSet { points, dividons }
    }

    /// The six same-div bits of a 4-point subset, dividers in lexicographic
    /// order; bit `i` set means the `i`-th divider keeps the other two
    /// points of `quad` together.
    #[inline]
    pub fn quad_bits(&self, quad: [Label; 4]) -> u8 {
        let mut bits = 0u8;
        for (i, &(x, y)) in crate::laws::QUAD_PAIRS.iter().enumerate() {
            let (u, v) = crate::laws::quad_complement(x, y);
            if self.same_div(Pair::new(quad[x], quad[y]), quad[u], quad[v]) {
                bits |= 1 << i;
            }
        }
        bits
    }
}

impl fmt::Display for DivPointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {{", self.points)?;
        for (i, d) in self.dividons.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("})")
    }
}

fn parse_dividon(rd: &RawDividon, points: LabelSet) -> Result<Dividon, Error> {
    let mut divider = LabelSet::EMPTY;
    for &x in &rd.divider {
        divider.insert(Label::new(x)?);
    }
    if rd.divider.len() != 2 || divider.len() != 2 || !divider.is_subset(points) {
        return Err(Error::BadDividerSize(divider));
    }
    let pair = Pair::from_set(divider).expect("two labels");
    let overlapping = Error::OverlappingDivs { divider: pair };
    if rd.divs.len() != 2 {
        return Err(overlapping);
    }
    let mut sides = [LabelSet::EMPTY; 2];
    for (k, div) in rd.divs.iter().enumerate() {
        for &x in div {
            let l = Label::new(x)?;
            if sides[k].contains(l) {
                return Err(overlapping);
            }
            sides[k].insert(l);
        }
    }
    let tbd = points.difference(divider);
    if !sides[0].is_disjoint(sides[1]) || sides[0].union(sides[1]) != tbd {
        return Err(overlapping);
    }
    Ok(Dividon { divider: pair, divs: Divs::new(sides[0], sides[1]) })
}

/// 1 iff some div holds both TBD points.
pub fn phi(delta: &Divs, tbd2: Pair) -> Result<bool, Error> {
    if !tbd2.set().is_subset(delta.union()) {
        return Err(Error::TbdNotInDivs(tbd2));
    }
    Ok(delta.together(tbd2.lo(), tbd2.hi()))
}

/// The two-TBD-point special case of [`phi`]: 0 for two singleton divs, 1
/// when one div holds both points.
pub fn psi(delta: &Divs) -> Result<bool, Error> {
    let u = delta.union();
    if u.len() != 2 {
        return Err(Error::NotTwoTbd(u.len()));
    }
    Ok(delta.first().len() == 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{named_config, ConfigName};

    fn raw(points: &[u32], dividons: &[(&[u32], &[u32], &[u32])]) -> RawDivPointSet {
        RawDivPointSet {
            points: points.to_vec(),
            dividons: dividons
                .iter()
                .map(|(d, a, b)| RawDividon { divider: d.to_vec(), divs: vec![a.to_vec(), b.to_vec()] })
                .collect(),
        }
    }

    #[test]
    fn divs_canonical_order() {
        let d = Divs::new(LabelSet::EMPTY, LabelSet::of(&[3, 4]));
        assert_eq!(d.first(), LabelSet::of(&[3, 4]));
        assert!(d.second().is_empty());
        let d = Divs::new(LabelSet::of(&[4, 5]), LabelSet::of(&[2]));
        assert_eq!(d.first(), LabelSet::of(&[2]));
    }

    #[test]
    fn validate_accepts_conc41_listing() {
        let r = raw(
            &[1, 2, 3, 4],
            &[
                (&[1, 2], &[3], &[4]),
                (&[1, 3], &[2], &[4]),
                (&[1, 4], &[2], &[3]),
                (&[2, 3], &[1, 4], &[]),
                (&[2, 4], &[1, 3], &[]),
                (&[3, 4], &[1, 2], &[]),
            ],
        );
        let x = DivPointSet::validate(&r).unwrap();
        assert_eq!(x, named_config(ConfigName::Conc41));
    }

    #[test]
    fn validate_rejects_wrong_count() {
        let r = raw(
            &[1, 2, 3, 4],
            &[
                (&[1, 2], &[3], &[4]),
                (&[1, 3], &[2], &[4]),
                (&[1, 4], &[2], &[3]),
                (&[2, 3], &[1, 4], &[]),
                (&[2, 4], &[1, 3], &[]),
            ],
        );
        assert_eq!(DivPointSet::validate(&r), Err(Error::WrongDividonCount { expected: 6, found: 5 }));
    }

    #[test]
    fn validate_structural_errors() {
        let good = named_config(ConfigName::Conv4).to_raw();

        let mut r = good.clone();
        r.dividons[0].divs = vec![vec![3, 4], vec![4]];
        assert!(matches!(DivPointSet::validate(&r), Err(Error::OverlappingDivs { .. })));

        let mut r = good.clone();
        r.dividons[0].divs = vec![vec![3], vec![]];
        assert!(matches!(DivPointSet::validate(&r), Err(Error::OverlappingDivs { .. })));

        let mut r = good.clone();
        r.dividons[0].divider = vec![1, 2, 3];
        assert!(matches!(DivPointSet::validate(&r), Err(Error::BadDividerSize(_))));

        let mut r = good.clone();
        r.dividons[0].divider = vec![1, 9];
        assert!(matches!(DivPointSet::validate(&r), Err(Error::BadDividerSize(_))));

        let mut r = good.clone();
        r.dividons[1] = r.dividons[0].clone();
        assert!(matches!(DivPointSet::validate(&r), Err(Error::DuplicateDivider(_))));

        let r = RawDivPointSet { points: vec![], dividons: vec![] };
        assert_eq!(DivPointSet::validate(&r), Err(Error::NoPoints));
    }

    #[test]
    fn small_configurations_are_valid() {
        let r = raw(&[1], &[]);
        assert!(DivPointSet::validate(&r).is_ok());
        let r = raw(&[1, 2, 3], &[(&[1, 2], &[3], &[]), (&[1, 3], &[2], &[]), (&[2, 3], &[], &[1])]);
        assert_eq!(DivPointSet::validate(&r).unwrap().dividons().len(), 3);
    }

    #[test]
    fn x_empty_is_structurally_valid() {
        let x = named_config(ConfigName::XEmpty4);
        assert!(DivPointSet::validate(&x.to_raw()).is_ok());
    }

    #[test]
    fn phi_cases() {
        let split = Divs::new(LabelSet::of(&[3]), LabelSet::of(&[4]));
        assert_eq!(phi(&split, Pair::of(3, 4)), Ok(false));
        let joined = Divs::new(LabelSet::of(&[3, 4]), LabelSet::EMPTY);
        assert_eq!(phi(&joined, Pair::of(3, 4)), Ok(true));
        let d = Divs::new(LabelSet::of(&[2, 3]), LabelSet::of(&[5]));
        assert_eq!(phi(&d, Pair::of(3, 5)), Ok(false));
        assert_eq!(phi(&d, Pair::of(2, 3)), Ok(true));
        assert_eq!(phi(&d, Pair::of(3, 7)), Err(Error::TbdNotInDivs(Pair::of(3, 7))));
    }

    #[test]
    fn psi_cases() {
        let split = Divs::new(LabelSet::of(&[1]), LabelSet::of(&[2]));
        assert_eq!(psi(&split), Ok(false));
        let joined = Divs::new(LabelSet::of(&[1, 2]), LabelSet::EMPTY);
        assert_eq!(psi(&joined), Ok(true));
        let three = Divs::new(LabelSet::of(&[1, 2]), LabelSet::of(&[3]));
        assert_eq!(psi(&three), Err(Error::NotTwoTbd(3)));
    }

    #[test]
    fn psi_on_conc41_listing() {
        let x = named_config(ConfigName::Conc41);
        let got: Vec<bool> = x.dividons().iter().map(|d| psi(&d.divs).unwrap()).collect();
        assert_eq!(got, vec![false, false, false, true, true, true]);
    }

    #[test]
    fn relabel_round_trip() {
        let x = named_config(ConfigName::Conv5);
        let y = x.relabel(|l| Label::of(l.get() % 5 + 1));
        let back = y.relabel(|l| Label::of((l.get() + 3) % 5 + 1));
        assert_eq!(back, x);
    }
}
