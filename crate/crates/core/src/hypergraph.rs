//! Colouring view of the laws: the 3-uniform hypergraph on the dividers of
//! four points, and the 3-and-6-uniform hypergraph on unit dividons.

use serde::Serialize;

use crate::dps::{psi, DivPointSet};
use crate::error::Error;
use crate::label::{LabelSet, Pair};
use crate::laws::{LawId, LawReport, Violation, STARS};
use crate::unit::{UnitDivPointSet, UnitKey};

/// One bit per vertex, in the hypergraph's vertex order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct BinaryColoring(pub Vec<bool>);

impl BinaryColoring {
    pub fn get(&self, v: usize) -> bool {
        self.0[v]
    }

    pub fn zeros(&self) -> usize {
        self.0.iter().filter(|&&b| !b).count()
    }
}

/// Dividers of four points joined by the stars through each point.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct H4 {
    pub vertices: [Pair; 6],
    pub edges: [[usize; 3]; 4],
}

impl H4 {
    pub fn new(points: LabelSet) -> Result<Self, Error> {
        if points.len() != 4 {
            return Err(Error::NotFourPoints(points.len()));
        }
        let v: Vec<Pair> = points.pairs().collect();
        Ok(H4 { vertices: [v[0], v[1], v[2], v[3], v[4], v[5]], edges: STARS })
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(&v)).count()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Scenario {
    /// Every divider separates.
    I,
    /// Three separating dividers through one point.
    II,
    /// Two separating dividers with disjoint ends.
    III,
    Violation,
}

/// Colours each divider of a 4-point configuration by [`psi`].
pub fn h4_coloring(x: &DivPointSet) -> Result<(H4, BinaryColoring), Error> {
    let h = H4::new(x.points())?;
    let colors = x.dividons().iter().map(|d| psi(&d.divs)).collect::<Result<Vec<_>, _>>()?;
    Ok((h, BinaryColoring(colors)))
}

/// Edges must read `[0,0,0]` or `[0,1,1]` up to order; the lawful colourings
/// are then told apart by their number of zeros.
pub fn h4_scenario(c: &BinaryColoring) -> Scenario {
    let lawful = STARS.iter().all(|e| e.iter().filter(|&&v| c.get(v)).count() % 2 == 0);
    if !lawful {
        return Scenario::Violation;
    }
    match c.zeros() {
        6 => Scenario::I,
        3 => Scenario::II,
        2 => Scenario::III,
        _ => Scenario::Violation,
    }
}

/// Vertices are (divider, TBD pair); `e1` groups the six vertices of each
/// 4-subset and `e2` the same-divider triples over three TBD points.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct HUdps {
    pub points: LabelSet,
    pub vertices: Vec<UnitKey>,
    pub e1: Vec<Vec<usize>>,
    pub e2: Vec<Vec<usize>>,
}

impl HUdps {
    pub fn new(points: LabelSet) -> Result<Self, Error> {
        // vertex order matches the unit dividon order of a unit div point set
        let u = UnitDivPointSet::from_fn(points, |_, _| false)?;
        let vertices: Vec<UnitKey> = u.unit_dividons().iter().map(|d| d.key).collect();
        let index = |k: UnitKey| vertices.binary_search(&k).expect("vertex");
        let mut e1 = Vec::new();
        for r in points.subsets(4) {
            let mut e: Vec<usize> = r
                .pairs()
                .map(|d| index(UnitKey { divider: d, tbd: Pair::from_set(r.difference(d.set())).expect("two") }))
                .collect();
            e.sort_unstable();
            e1.push(e);
        }
        let mut e2 = Vec::new();
        for d in points.pairs() {
            for t in points.difference(d.set()).subsets(3) {
                let mut e: Vec<usize> = t.pairs().map(|p| index(UnitKey { divider: d, tbd: p })).collect();
                e.sort_unstable();
                e2.push(e);
            }
        }
        Ok(HUdps { points, vertices, e1, e2 })
    }
}

/// Colours every unit dividon by its same-div bit.
pub fn hudps_coloring(u: &UnitDivPointSet) -> Result<(HUdps, BinaryColoring), Error> {
    let h = HUdps::new(u.points())?;
    let c = u.unit_dividons().iter().map(|d| d.same_div).collect();
    Ok((h, BinaryColoring(c)))
}

fn quad_edge_ok(h: &HUdps, c: &BinaryColoring, e: &[usize]) -> bool {
    let zeros: Vec<UnitKey> = e.iter().filter(|&&v| !c.get(v)).map(|&v| h.vertices[v]).collect();
    let convex = zeros.len() == 2 && zeros[0].divider == zeros[1].tbd && zeros[1].divider == zeros[0].tbd;
    let concave = zeros.len() == 3 && {
        let common = zeros[0].divider.set().intersection(zeros[1].divider.set()).intersection(zeros[2].divider.set());
        common.len() == 1
    };
    convex != concave
}

/// Checks the 6-edge law (convex pattern iff no concave pattern) and the
/// 3-edge law (an odd number of ones).
///
/// Panics if `c` does not colour every vertex of `h`.
pub fn check_hudps_laws(h: &HUdps, c: &BinaryColoring) -> LawReport {
    assert_eq!(h.vertices.len(), c.0.len(), "colouring must be total");
    let mut out = Vec::new();
    let keys = |e: &[usize]| e.iter().map(|&v| h.vertices[v]).collect::<Vec<_>>();
    let support = |e: &[usize]| e.iter().fold(LabelSet::EMPTY, |s, &v| s.union(h.vertices[v].xi()));
    for e in &h.e1 {
        if !quad_edge_ok(h, c, e) {
            out.push(Violation { law: LawId::QuadEdge, subset: support(e), units: keys(e) });
        }
    }
    for e in &h.e2 {
        if e.iter().filter(|&&v| c.get(v)).count() % 2 == 0 {
            out.push(Violation { law: LawId::DividerEdge, subset: support(e), units: keys(e) });
        }
    }
    LawReport::from_violations(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{all_four_point, conv_n, named_config, ConfigName};
    use crate::combinatorics::binomial;
    use crate::unit::to_unit;

    #[test]
    fn h4_structure() {
        let h = H4::new(LabelSet::range(4)).unwrap();
        assert_eq!(h.vertices.len(), 6);
        assert_eq!(h.edges.len(), 4);
        assert!((0..6).all(|v| h.degree(v) == 2));
        for (c, e) in h.edges.iter().enumerate() {
            let centre = crate::label::Label::of(c as u32 + 1);
            assert!(e.iter().all(|&v| h.vertices[v].contains(centre)));
        }
        assert_eq!(H4::new(LabelSet::range(5)), Err(Error::NotFourPoints(5)));
    }

    #[test]
    fn reference_colourings() {
        let (_, c) = h4_coloring(&named_config(ConfigName::Conc41)).unwrap();
        assert_eq!(c.0, vec![false, false, false, true, true, true]);
        assert_eq!(h4_scenario(&c), Scenario::II);
        let (h, c) = h4_coloring(&named_config(ConfigName::Conv4)).unwrap();
        let zeros: Vec<Pair> = (0..6).filter(|&v| !c.get(v)).map(|v| h.vertices[v]).collect();
        assert_eq!(zeros, vec![Pair::of(1, 3), Pair::of(2, 4)]);
        assert_eq!(h4_scenario(&c), Scenario::III);
        let (_, c) = h4_coloring(&named_config(ConfigName::XEmpty4)).unwrap();
        assert!(c.0.iter().all(|&b| b));
        assert_eq!(h4_scenario(&c), Scenario::Violation);
        assert_eq!(h4_scenario(&BinaryColoring(vec![false; 6])), Scenario::I);
    }

    #[test]
    fn scenario_counts_over_all_colourings() {
        let mut counts = std::collections::HashMap::new();
        for b in 0u8..64 {
            let c = BinaryColoring((0..6).map(|i| b >> i & 1 == 1).collect());
            *counts.entry(h4_scenario(&c)).or_insert(0) += 1;
        }
        assert_eq!(counts[&Scenario::I], 1);
        assert_eq!(counts[&Scenario::II], 4);
        assert_eq!(counts[&Scenario::III], 3);
        assert_eq!(counts[&Scenario::Violation], 56);
    }

    #[test]
    fn scenarios_match_star_laws() {
        for x in all_four_point() {
            let (_, c) = h4_coloring(&x).unwrap();
            let star_ok = crate::laws::check_planarity_laws(&x).violations.iter().all(|v| v.law == LawId::TriangleJoin);
            assert_eq!(matches!(h4_scenario(&c), Scenario::I | Scenario::II | Scenario::III), star_ok);
        }
    }

    #[test]
    fn hudps_shapes() {
        let u = to_unit(&named_config(ConfigName::Conv5)).unwrap();
        let (h, c) = hudps_coloring(&u).unwrap();
        assert_eq!(h.vertices.len(), 30);
        assert_eq!(h.e1.len(), 5);
        assert!(h.e1.iter().all(|e| e.len() == 6));
        assert!(h.e2.iter().all(|e| e.len() == 3));
        let mut seen = std::collections::HashSet::new();
        for e in &h.e2 {
            for v in e {
                assert!(seen.insert(*v), "E2 edges overlap");
            }
        }
        assert!(check_hudps_laws(&h, &c).passed);

        let (h4, _) = hudps_coloring(&to_unit(&named_config(ConfigName::Conc41)).unwrap()).unwrap();
        assert!(h4.e2.is_empty());
        assert_eq!(h4.e1.len(), 1);

        let h6 = HUdps::new(LabelSet::range(6)).unwrap();
        assert_eq!(h6.e1.len() as u64, binomial(6, 4));
        assert_eq!(h6.e2.len(), 60);
    }

    #[test]
    fn hudps_laws_on_references_and_flips() {
        for name in [ConfigName::Conv5, ConfigName::Conc51, ConfigName::Conc52] {
            let (h, c) = hudps_coloring(&to_unit(&named_config(name)).unwrap()).unwrap();
            assert!(check_hudps_laws(&h, &c).passed, "{name}");
        }
        let (h, c) = hudps_coloring(&to_unit(&named_config(ConfigName::Conv5)).unwrap()).unwrap();
        for v in 0..c.0.len() {
            let mut d = c.clone();
            d.0[v] = !d.0[v];
            assert!(!check_hudps_laws(&h, &d).passed);
        }
        let (h, c) = hudps_coloring(&to_unit(&conv_n(6).unwrap()).unwrap()).unwrap();
        assert!(check_hudps_laws(&h, &c).passed);
    }

    #[test]
    fn quad_edge_agrees_with_four_point_laws() {
        for x in all_four_point() {
            let (h, c) = hudps_coloring(&to_unit(&x).unwrap()).unwrap();
            assert_eq!(check_hudps_laws(&h, &c).passed, crate::laws::is_lawful(&x));
        }
    }
}
