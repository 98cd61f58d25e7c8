//! Exhaustive enumerations over all 4- and 5-point configurations, and the
//! parity reading of the allowed 5-variable patterns.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{
    all_four_point, canonical_form, classify_quad_bits, isomorphism, named_config, CanonicalForm, ConfigName, FourClass,
};
use crate::dps::DivPointSet;
use crate::error::Error;
use crate::format::RawDivPointSet;
use crate::hypergraph::{check_hudps_laws, hudps_coloring};
use crate::label::{LabelSet, Pair};
use crate::laws::{LAWFUL, QUAD_PAIRS, STAR_LAWFUL};
use crate::unit::to_unit;

/// One isomorphism class among the lawful configurations.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ClassCount {
    pub canonical: CanonicalForm,
    /// Catalog entry isomorphic to this class, if any.
    pub name: Option<ConfigName>,
    /// Labelled configurations in the class.
    pub count: u64,
    /// Number of concave 4-point subsets (same for every member).
    pub sub_conc: usize,
    /// The member with the smallest enumeration index.
    pub exemplar: RawDivPointSet,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct EnumReport {
    pub points: usize,
    pub total: u64,
    pub lawful: u64,
    /// Passing the two star laws, ignoring the triangle law.
    pub star_lawful: u64,
    /// Lawful configurations whose unit hypergraph colouring also passes.
    pub hypergraph_lawful: u64,
    /// Sorted by canonical form.
    pub classes: Vec<ClassCount>,
    /// `sub_conc_distribution[c]`: lawful configurations with `c` concave
    /// 4-point subsets.
    pub sub_conc_distribution: Vec<u64>,
}

fn catalog_name(x: &DivPointSet) -> Option<ConfigName> {
    ConfigName::ALL
        .into_iter()
        .filter(|&c| named_config(c).len() == x.len())
        .find(|&c| isomorphism(x, &named_config(c)).is_some())
}

fn sub_conc(x: &DivPointSet) -> usize {
    x.points()
        .subsets(4)
        .filter(|r| {
            let v = r.to_vec();
            classify_quad_bits(x.quad_bits([v[0], v[1], v[2], v[3]])) == FourClass::ConcaveOne
        })
        .count()
}

// canonical form -> (count, smallest index, exemplar, sub_conc)
type Partial = BTreeMap<CanonicalForm, (u64, u64, DivPointSet, usize)>;

#[derive(Default)]
struct Tally {
    total: u64,
    lawful: u64,
    star_lawful: u64,
    hypergraph_lawful: u64,
    classes: Partial,
    dist: [u64; 6],
}

impl Tally {
    fn add_lawful(&mut self, index: u64, x: DivPointSet) {
        self.lawful += 1;
        let (h, c) = hudps_coloring(&to_unit(&x).expect("four or more points")).expect("valid");
        if check_hudps_laws(&h, &c).passed {
            self.hypergraph_lawful += 1;
        }
        let sc = sub_conc(&x);
        self.dist[sc] += 1;
        let entry = self.classes.entry(canonical_form(&x)).or_insert((0, index, x.clone(), sc));
        entry.0 += 1;
        if index < entry.1 {
            entry.1 = index;
            entry.2 = x;
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.total += other.total;
        self.lawful += other.lawful;
        self.star_lawful += other.star_lawful;
        self.hypergraph_lawful += other.hypergraph_lawful;
        for i in 0..6 {
            self.dist[i] += other.dist[i];
        }
        for (k, v) in other.classes {
            match self.classes.get_mut(&k) {
                Some(e) => {
                    e.0 += v.0;
                    if v.1 < e.1 {
                        e.1 = v.1;
                        e.2 = v.2;
                    }
                }
                None => {
                    self.classes.insert(k, v);
                }
            }
        }
        self
    }

    fn report(self, points: usize) -> EnumReport {
        let classes = self
            .classes
            .into_iter()
            .map(|(canonical, (count, _, x, sc))| ClassCount {
                canonical,
                name: catalog_name(&x),
                count,
                sub_conc: sc,
                exemplar: x.to_raw(),
            })
            .collect();
        let width = if points == 4 { 2 } else { 6 };
        EnumReport {
            points,
            total: self.total,
            lawful: self.lawful,
            star_lawful: self.star_lawful,
            hypergraph_lawful: self.hypergraph_lawful,
            classes,
            sub_conc_distribution: self.dist[..width].to_vec(),
        }
    }
}

/// All 64 configurations on labels 1..4, one same-div bit per dividon.
pub fn enumerate4() -> EnumReport {
    let mut t = Tally::default();
    for (bits, x) in all_four_point().into_iter().enumerate() {
        t.total += 1;
        if STAR_LAWFUL[bits] {
            t.star_lawful += 1;
        }
        if LAWFUL[bits] {
            t.add_lawful(bits as u64, x);
        }
    }
    t.report(4)
}

/// Number of 5-point configurations: four splits per divider, ten dividers.
pub const FIVE_POINT_TOTAL: u64 = 1 << 20;

/// Lookup tables for decoding a 5-point index.
struct Five {
    dividers: Vec<Pair>,
    // side[d][digit]: the first div for divider d
    side: Vec<[LabelSet; 4]>,
    // contrib[d][digit][q]: quad-word bits contributed to the quad missing
    // label q + 1
    contrib: Vec<[[u8; 5]; 4]>,
}

impl Five {
    fn new() -> Self {
        let pts = LabelSet::range(5);
        let dividers: Vec<Pair> = pts.pairs().collect();
        let mut side = Vec::new();
        let mut contrib = Vec::new();
        for &d in &dividers {
            let tbd = pts.difference(d.set()).to_vec();
            // digit 0 keeps all three together, digit i isolates tbd[i - 1]
            let s = [
                pts.difference(d.set()),
                LabelSet::EMPTY.with(tbd[0]),
                LabelSet::EMPTY.with(tbd[1]),
                LabelSet::EMPTY.with(tbd[2]),
            ];
            let mut c = [[0u8; 5]; 4];
            for (digit, row) in c.iter_mut().enumerate() {
                for (q, slot) in row.iter_mut().enumerate() {
                    let missing = crate::label::Label::of(q as u32 + 1);
                    if d.contains(missing) {
                        continue;
                    }
                    let quad = pts.without(missing).to_vec();
                    let pos = QUAD_PAIRS
                        .iter()
                        .position(|&(x, y)| Pair::new(quad[x], quad[y]) == d)
                        .expect("divider inside quad");
                    let joined = digit == 0 || tbd[digit - 1] == missing;
                    if joined {
                        *slot = 1 << pos;
                    }
                }
            }
            side.push(s);
            contrib.push(c);
        }
        Five { dividers, side, contrib }
    }

    fn digits(index: u64) -> [usize; 10] {
        let mut d = [0usize; 10];
        for (i, slot) in d.iter_mut().enumerate() {
            *slot = (index >> (2 * (9 - i)) & 3) as usize;
        }
        d
    }

    fn words(&self, digits: &[usize; 10]) -> [u8; 5] {
        let mut w = [0u8; 5];
        for (d, &g) in digits.iter().enumerate() {
            for (q, slot) in w.iter_mut().enumerate() {
                *slot |= self.contrib[d][g][q];
            }
        }
        w
    }

    fn config(&self, digits: &[usize; 10]) -> DivPointSet {
        DivPointSet::from_sides(LabelSet::range(5), |p| {
            let d = self.dividers.iter().position(|&x| x == p).expect("divider");
            self.side[d][digits[d]]
        })
        .expect("five points")
    }
}

/// The configuration with the given 5-point enumeration index (ten base-4
/// digits, most significant for divider {1,2}).
pub fn five_point_config(index: u64) -> Result<DivPointSet, Error> {
    if index >= FIVE_POINT_TOTAL {
        return Err(Error::OutOfRange { value: index, limit: FIVE_POINT_TOTAL - 1 });
    }
    Ok(Five::new().config(&Five::digits(index)))
}

fn scan(five: &Five, range: std::ops::Range<u64>) -> Tally {
    let mut t = Tally::default();
    for index in range {
        t.total += 1;
        let digits = Five::digits(index);
        let w = five.words(&digits);
        if w.iter().all(|&b| STAR_LAWFUL[b as usize]) {
            t.star_lawful += 1;
        }
        if w.iter().all(|&b| LAWFUL[b as usize]) {
            t.add_lawful(index, five.config(&digits));
        }
    }
    t
}

/// Scans all 4^10 configurations on labels 1..5.
///
/// `threads = Some(1)` runs on the calling thread; otherwise the index space
/// is cut into 64 blocks by leading digits and scanned on a rayon pool
/// (`None` uses the global pool). The report does not depend on the thread
/// count.
pub fn enumerate5(threads: Option<usize>) -> Result<EnumReport, Error> {
    let five = Five::new();
    if threads == Some(1) {
        return Ok(scan(&five, 0..FIVE_POINT_TOTAL).report(5));
    }
    let blocks = 64u64;
    let size = FIVE_POINT_TOTAL / blocks;
    let run = || {
        (0..blocks).into_par_iter().map(|b| scan(&five, b * size..(b + 1) * size)).reduce(Tally::default, Tally::merge)
    };
    let tally = match threads {
        None => run(),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| Error::BadParameters(e.to_string()))?
            .install(run),
    };
    Ok(tally.report(5))
}

/// The three allowed value patterns of a 5-variable group, as sorted
/// multisets.
pub const ALLOWED_PATTERNS: [[u8; 5]; 3] = [[1, 1, 1, 1, 0], [1, 1, 0, 0, 0], [0, 0, 0, 0, 0]];

/// Membership of the value multiset in [`ALLOWED_PATTERNS`].
pub fn pattern_allowed(values: [u8; 5]) -> bool {
    let mut v = values;
    v.sort_unstable_by(|a, b| b.cmp(a));
    ALLOWED_PATTERNS.contains(&v)
}

/// Checks over all 32 assignments that an allowed pattern is exactly an
/// even number of ones.
pub fn parity_equivalence() -> bool {
    (0u8..32).all(|m| {
        let values = [0, 1, 2, 3, 4].map(|i| m >> i & 1);
        pattern_allowed(values) == (m.count_ones() % 2 == 0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_point_report() {
        let r = enumerate4();
        assert_eq!(r.total, 64);
        assert_eq!(r.lawful, 7);
        assert_eq!(r.star_lawful, 8);
        assert_eq!(r.hypergraph_lawful, 7);
        let named: Vec<(Option<ConfigName>, u64)> = r.classes.iter().map(|c| (c.name, c.count)).collect();
        assert_eq!(named.len(), 2);
        assert!(named.contains(&(Some(ConfigName::Conc41), 4)));
        assert!(named.contains(&(Some(ConfigName::Conv4), 3)));
    }

    #[test]
    fn five_point_decoding_matches_quad_bits() {
        let five = Five::new();
        for index in [0u64, 1, 12345, 777_777, FIVE_POINT_TOTAL - 1] {
            let digits = Five::digits(index);
            let x = five.config(&digits);
            let w = five.words(&digits);
            for (q, r) in (1..=5u32).map(|m| LabelSet::range(5).without(crate::label::Label::of(m))).enumerate() {
                let v = r.to_vec();
                assert_eq!(w[q], x.quad_bits([v[0], v[1], v[2], v[3]]));
            }
        }
        assert!(five_point_config(FIVE_POINT_TOTAL).is_err());
        // digit 0 everywhere: every divider keeps its three points together
        assert!(five_point_config(0).unwrap().dividons().iter().all(|d| d.divs.second().is_empty()));
    }

    #[test]
    fn parity() {
        assert!(pattern_allowed([1, 0, 1, 1, 1]));
        assert!(!pattern_allowed([1, 0, 0, 0, 0]));
        assert!(parity_equivalence());
    }
}
