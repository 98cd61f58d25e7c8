//! Reference configurations, isomorphism, canonical forms and the 4-point
//! classifier.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dps::DivPointSet;
use crate::error::Error;
use crate::label::{Label, LabelSet, Pair};
use crate::laws::{is_lawful, quad_shape, QuadShape, QUAD_PAIRS};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum ConfigName {
    Conc41,
    Conv4,
    XEmpty4,
    Conv5,
    Conc51,
    Conc52,
}

impl ConfigName {
    pub const ALL: [ConfigName; 6] = [
        ConfigName::Conc41,
        ConfigName::Conv4,
        ConfigName::XEmpty4,
        ConfigName::Conv5,
        ConfigName::Conc51,
        ConfigName::Conc52,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConfigName::Conc41 => "Conc41",
            ConfigName::Conv4 => "Conv4",
            ConfigName::XEmpty4 => "XEmpty4",
            ConfigName::Conv5 => "Conv5",
            ConfigName::Conc51 => "Conc51",
            ConfigName::Conc52 => "Conc52",
        }
    }
}

impl fmt::Display for ConfigName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConfigName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        ConfigName::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::BadParameters(format!("unknown configuration name {s:?}")))
    }
}

// (divider, one div) per dividon; the other div is the complement.
type Listing = &'static [((u32, u32), &'static [u32])];

const CONC41: Listing =
    &[((1, 2), &[3]), ((1, 3), &[2]), ((1, 4), &[2]), ((2, 3), &[1, 4]), ((2, 4), &[1, 3]), ((3, 4), &[1, 2])];

const XEMPTY4: Listing =
    &[((1, 2), &[3, 4]), ((1, 3), &[2, 4]), ((1, 4), &[2, 3]), ((2, 3), &[1, 4]), ((2, 4), &[1, 3]), ((3, 4), &[1, 2])];

const CONC51: Listing = &[
    ((1, 2), &[3, 4, 5]),
    ((1, 3), &[2]),
    ((1, 4), &[2, 3, 5]),
    ((1, 5), &[2, 3]),
    ((2, 3), &[1, 4, 5]),
    ((2, 4), &[1, 5]),
    ((2, 5), &[1]),
    ((3, 4), &[1, 2, 5]),
    ((3, 5), &[1, 2]),
    ((4, 5), &[1]),
];

// {2,3} splits as {1,5}|{4}; the split {1,4}|{5} would break the star law
// on {1,2,3,4} and is the only single-dividon edit that restores lawfulness.
const CONC52: Listing = &[
    ((1, 2), &[3, 4, 5]),
    ((1, 3), &[2]),
    ((1, 4), &[2, 3, 5]),
    ((1, 5), &[2, 3]),
    ((2, 3), &[1, 5]),
    ((2, 4), &[1, 3, 5]),
    ((2, 5), &[1]),
    ((3, 4), &[1, 5]),
    ((3, 5), &[1, 2]),
    ((4, 5), &[1]),
];

fn from_listing(n: u32, listing: Listing) -> DivPointSet {
    DivPointSet::from_sides(LabelSet::range(n), |d| {
        let (_, side) = listing.iter().find(|((a, b), _)| Pair::of(*a, *b) == d).expect("listing covers every divider");
        LabelSet::of(side)
    })
    .expect("listing is well formed")
}

/// The labeled reference configuration.
pub fn named_config(name: ConfigName) -> DivPointSet {
    match name {
        ConfigName::Conc41 => from_listing(4, CONC41),
        ConfigName::Conv4 => conv_n(4).expect("n = 4"),
        ConfigName::XEmpty4 => from_listing(4, XEMPTY4),
        ConfigName::Conv5 => conv_n(5).expect("n = 5"),
        ConfigName::Conc51 => from_listing(5, CONC51),
        ConfigName::Conc52 => from_listing(5, CONC52),
    }
}

/// Points `1..=n` in convex position: a divider's inside div holds the labels
/// strictly between its two ends.
pub fn conv_n(n: u32) -> Result<DivPointSet, Error> {
    if !(3..=crate::label::MAX_LABEL as u32).contains(&n) {
        return Err(Error::BadN(n));
    }
    DivPointSet::from_sides(LabelSet::range(n), |d| {
        LabelSet::range(d.hi().get() - 1).difference(LabelSet::range(d.lo().get()))
    })
}

/// Dense same-div table over point indices `0..n`.
#[derive(Clone, Debug)]
pub(crate) struct Dense {
    pub n: usize,
    pub labels: Vec<Label>,
    // side[(i*n + j)*n + k]: k lies in the first div of divider {i,j}
    side: Vec<bool>,
}

impl Dense {
    pub fn new(x: &DivPointSet) -> Self {
        let labels = x.points().to_vec();
        let n = labels.len();
        let mut side = vec![false; n * n * n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let d = x.dividon(Pair::new(labels[i], labels[j])).expect("points");
                for (k, &l) in labels.iter().enumerate() {
                    side[(i * n + j) * n + k] = d.divs.first().contains(l);
                }
            }
        }
        Dense { n, labels, side }
    }

    #[inline]
    pub fn same(&self, i: usize, j: usize, a: usize, b: usize) -> bool {
        let base = (i * self.n + j) * self.n;
        self.side[base + a] == self.side[base + b]
    }

    /// Quad word of four distinct indices, taken in the given order.
    #[inline]
    pub fn quad_word(&self, q: [usize; 4]) -> u8 {
        let mut bits = 0u8;
        for (t, &(x, y)) in QUAD_PAIRS.iter().enumerate() {
            let (u, v) = crate::laws::quad_complement(x, y);
            if self.same(q[x], q[y], q[u], q[v]) {
                bits |= 1 << t;
            }
        }
        bits
    }

    /// Per point: joined unit dividons with the point on the divider, and
    /// with the point among the TBD pair.
    fn invariants(&self) -> Vec<(u32, u32)> {
        let n = self.n;
        let mut inv = vec![(0u32, 0u32); n];
        for i in 0..n {
            for j in i + 1..n {
                for a in 0..n {
                    for b in a + 1..n {
                        if a == i || a == j || b == i || b == j || !self.same(i, j, a, b) {
                            continue;
                        }
                        inv[i].0 += 1;
                        inv[j].0 += 1;
                        inv[a].1 += 1;
                        inv[b].1 += 1;
                    }
                }
            }
        }
        inv
    }
}

/// A label bijection between two configurations.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Bijection {
    map: Vec<(Label, Label)>,
}

impl Bijection {
    pub fn get(&self, l: Label) -> Option<Label> {
        self.map.iter().find(|(s, _)| *s == l).map(|&(_, t)| t)
    }

    pub fn pairs(&self) -> &[(Label, Label)] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(s, t)| s == t)
    }
}

impl fmt::Display for Bijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (s, t)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}->{t}")?;
        }
        Ok(())
    }
}

/// A structure-preserving bijection from `a` onto `b`, if any.
pub fn isomorphism(a: &DivPointSet, b: &DivPointSet) -> Option<Bijection> {
    if a.len() != b.len() {
        return None;
    }
    let (da, db) = (Dense::new(a), Dense::new(b));
    let n = da.n;
    let (ia, ib) = (da.invariants(), db.invariants());
    let mut sa = ia.clone();
    let mut sb = ib.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if !extend(&da, &db, &ia, &ib, 0, &mut image, &mut used) {
        return None;
    }
    Some(Bijection { map: (0..n).map(|i| (da.labels[i], db.labels[image[i]])).collect() })
}

fn extend(
    da: &Dense,
    db: &Dense,
    ia: &[(u32, u32)],
    ib: &[(u32, u32)],
    p: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    let n = da.n;
    if p == n {
        return true;
    }
    for q in 0..n {
        if used[q] || ia[p] != ib[q] {
            continue;
        }
        image[p] = q;
        if consistent(da, db, p, image) {
            used[q] = true;
            if extend(da, db, ia, ib, p + 1, image, used) {
                return true;
            }
            used[q] = false;
        }
    }
    image[p] = usize::MAX;
    false
}

// Every quad through `p` and three earlier points keeps its bits.
fn consistent(da: &Dense, db: &Dense, p: usize, image: &[usize]) -> bool {
    for i in 0..p {
        for j in i + 1..p {
            for k in j + 1..p {
                let q = [i, j, k, p];
                let r = [image[i], image[j], image[k], image[p]];
                if da.quad_word(q) != db.quad_word(r) {
                    return false;
                }
            }
        }
    }
    true
}

/// Byte encoding that is equal for two configurations iff they are
/// isomorphic.
///
/// The first byte is the point count. For a relabeling onto `1..=n`, every
/// 4-subset contributes its quad word, subsets ordered by largest label and
/// then colexicographically; the encoding is the smallest such string over
/// all relabelings.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalForm(pub Vec<u8>);

impl CanonicalForm {
    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

pub fn canonical_form(x: &DivPointSet) -> CanonicalForm {
    let d = Dense::new(x);
    let mut search = Canon { d: &d, best: None, cur: vec![d.n as u8], order: Vec::new(), used: vec![false; d.n] };
    search.run();
    CanonicalForm(search.best.expect("at least one relabeling"))
}

struct Canon<'a> {
    d: &'a Dense,
    best: Option<Vec<u8>>,
    cur: Vec<u8>,
    // order[k] = original index given new label k
    order: Vec<usize>,
    used: Vec<bool>,
}

impl Canon<'_> {
    fn run(&mut self) {
        let k = self.order.len();
        if k == self.d.n {
            if self.best.as_ref().is_none_or(|b| self.cur < *b) {
                self.best = Some(self.cur.clone());
            }
            return;
        }
        for p in 0..self.d.n {
            if self.used[p] {
                continue;
            }
            let mark = self.cur.len();
            self.order.push(p);
            self.used[p] = true;
            for c in 0..k {
                for b in 0..c {
                    for a in 0..b {
                        let o = &self.order;
                        let w = self.d.quad_word([o[a], o[b], o[c], p]);
                        self.cur.push(w);
                    }
                }
            }
            let keep = match &self.best {
                None => true,
                Some(best) => self.cur.as_slice() <= &best[..self.cur.len()],
            };
            if keep {
                self.run();
            }
            self.cur.truncate(mark);
            self.order.pop();
            self.used[p] = false;
        }
    }
}

/// The three outcomes of classifying a 4-point configuration.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum FourClass {
    ConcaveOne,
    Convex,
    Unlawful,
}

impl FourClass {
    /// 1 for one point inside the triangle of the others, 0 for convex.
    pub fn assign(self) -> Option<u8> {
        match self {
            FourClass::ConcaveOne => Some(1),
            FourClass::Convex => Some(0),
            FourClass::Unlawful => None,
        }
    }
}

impl fmt::Display for FourClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FourClass::ConcaveOne => "ConcaveOne",
            FourClass::Convex => "Convex",
            FourClass::Unlawful => "Unlawful",
        })
    }
}

/// Classifies by isomorphism against the two lawful 4-point references.
pub fn classify4(x: &DivPointSet) -> Result<FourClass, Error> {
    if x.len() != 4 {
        return Err(Error::NotFourPoints(x.len()));
    }
    if !is_lawful(x) {
        return Ok(FourClass::Unlawful);
    }
    if isomorphism(x, &named_config(ConfigName::Conc41)).is_some() {
        return Ok(FourClass::ConcaveOne);
    }
    if isomorphism(x, &named_config(ConfigName::Conv4)).is_some() {
        return Ok(FourClass::Convex);
    }
    debug_assert!(false, "lawful 4-point configuration matches no reference");
    Ok(FourClass::Unlawful)
}

/// Table lookup equivalent of [`classify4`] on a quad word.
pub fn classify_quad_bits(bits: u8) -> FourClass {
    match quad_shape(bits) {
        QuadShape::Concave(_) => FourClass::ConcaveOne,
        QuadShape::Convex(_) => FourClass::Convex,
        QuadShape::Other => FourClass::Unlawful,
    }
}

/// Every 4-point configuration on labels 1..4, indexed by its quad word.
pub fn all_four_point() -> Vec<DivPointSet> {
    (0u8..64).map(four_point_from_bits).collect()
}

/// The 4-point configuration on labels 1..4 whose quad word is `bits`.
pub fn four_point_from_bits(bits: u8) -> DivPointSet {
    let q = LabelSet::range(4);
    DivPointSet::from_sides(q, |d| {
        let i = d.index_in(q);
        let rest = q.difference(d.set());
        if bits >> i & 1 == 1 {
            rest
        } else {
            LabelSet::EMPTY.with(rest.min().expect("two points"))
        }
    })
    .expect("four points")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dps::Divs;

    #[test]
    fn listings() {
        let c = named_config(ConfigName::Conc41);
        let d = c.dividon(Pair::of(1, 2)).unwrap();
        assert_eq!(d.divs, Divs::new(LabelSet::of(&[3]), LabelSet::of(&[4])));
        let v = named_config(ConfigName::Conv5);
        let d = v.dividon(Pair::of(1, 3)).unwrap();
        assert_eq!(d.divs, Divs::new(LabelSet::of(&[2]), LabelSet::of(&[4, 5])));
        let x = named_config(ConfigName::XEmpty4);
        assert!(x.dividons().iter().all(|d| d.divs.second().is_empty()));
        let c52 = named_config(ConfigName::Conc52);
        let d = c52.dividon(Pair::of(3, 4)).unwrap();
        assert_eq!(d.divs, Divs::new(LabelSet::of(&[1, 5]), LabelSet::of(&[2])));
    }

    #[test]
    fn conv_n_cases() {
        let c3 = conv_n(3).unwrap();
        let d = c3.dividon(Pair::of(1, 2)).unwrap();
        assert_eq!(d.divs.first(), LabelSet::of(&[3]));
        assert!(d.divs.second().is_empty());
        assert_eq!(conv_n(2), Err(Error::BadN(2)));
        assert_eq!(conv_n(64), Err(Error::BadN(64)));
        let c4 = conv_n(4).unwrap();
        assert_eq!(c4.dividon(Pair::of(2, 4)).unwrap().divs, Divs::new(LabelSet::of(&[1]), LabelSet::of(&[3])));
    }

    #[test]
    fn names_parse() {
        for c in ConfigName::ALL {
            assert_eq!(c.as_str().parse::<ConfigName>().unwrap(), c);
        }
        assert!("Conc6".parse::<ConfigName>().is_err());
    }

    #[test]
    fn isomorphism_basics() {
        let c = named_config(ConfigName::Conc41);
        let v = named_config(ConfigName::Conv4);
        assert!(isomorphism(&c, &v).is_none());
        assert!(isomorphism(&c, &c).unwrap().is_identity());
        assert!(isomorphism(&v, &named_config(ConfigName::Conv5)).is_none());
    }

    #[test]
    fn cycle_recovered() {
        let x = named_config(ConfigName::Conv5);
        let cyc = |l: Label| Label::of(l.get() % 5 + 1);
        let y = x.relabel(cyc);
        let f = isomorphism(&x, &y).unwrap();
        assert_eq!(x.relabel(|l| f.get(l).unwrap()), y);
    }

    #[test]
    fn canonical_form_invariant_under_all_relabelings_of_conv4() {
        let v = named_config(ConfigName::Conv4);
        let base = canonical_form(&v);
        let perms = permutations(4);
        assert_eq!(perms.len(), 24);
        for p in perms {
            let y = v.relabel(|l| Label::of(p[l.get() as usize - 1] as u32 + 1));
            assert_eq!(canonical_form(&y), base);
        }
        assert_ne!(canonical_form(&named_config(ConfigName::Conc41)), base);
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn four_point_classes() {
        let all = all_four_point();
        let mut counts = [0; 3];
        for (bits, x) in all.iter().enumerate() {
            assert_eq!(x.quad_bits([1, 2, 3, 4].map(Label::of)), bits as u8);
            let c = classify4(x).unwrap();
            assert_eq!(c, classify_quad_bits(bits as u8));
            counts[c as usize] += 1;
        }
        assert_eq!(counts, [4, 3, 57]);
        assert_eq!(classify4(&named_config(ConfigName::XEmpty4)).unwrap(), FourClass::Unlawful);
        assert_eq!(classify4(&named_config(ConfigName::Conc41)).unwrap().assign(), Some(1));
        assert_eq!(classify4(&named_config(ConfigName::Conv4)).unwrap().assign(), Some(0));
        assert_eq!(classify4(&conv_n(5).unwrap()), Err(Error::NotFourPoints(5)));
    }

    #[test]
    fn canonical_classes_match_isomorphism_on_four_points() {
        let all = all_four_point();
        for a in &all {
            for b in &all {
                assert_eq!(canonical_form(a) == canonical_form(b), isomorphism(a, b).is_some());
            }
        }
    }

    #[test]
    fn conv_n_lawful_and_all_quads_convex() {
        for k in 3..=9 {
            let x = conv_n(k).unwrap();
            assert!(crate::laws::is_lawful(&x));
            for r in x.points().subsets(4) {
                let v = r.to_vec();
                assert_eq!(classify_quad_bits(x.quad_bits([v[0], v[1], v[2], v[3]])), FourClass::Convex);
            }
        }
    }

    #[test]
    fn three_point_configurations_are_isomorphic() {
        let a = conv_n(3).unwrap();
        let b = a.relabel(|l| Label::of(l.get() + 10));
        assert!(isomorphism(&a, &b).is_some());
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }
}
