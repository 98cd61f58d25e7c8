//! Sub div point sets, the sub relation, convexity, and the subset-family
//! construction behind the shared-sub counting identity.

use std::collections::BTreeSet;

use crate::catalog::{canonical_form, classify_quad_bits, conv_n, CanonicalForm, FourClass};
use crate::dps::DivPointSet;
use crate::error::Error;
use crate::label::{Label, LabelSet};
use crate::unit::{from_unit, to_unit, UnitDivPointSet};

fn check_subset(x: &DivPointSet, subset: LabelSet) -> Result<(), Error> {
    if !subset.is_subset(x.points()) {
        return Err(Error::NotASubset(subset));
    }
    if subset.len() < 4 {
        return Err(Error::SubsetTooSmall(subset.len()));
    }
    Ok(())
}

/// The sub div point set on `subset`: keep the unit dividons supported inside
/// `subset` and rebuild.
pub fn sdps(x: &DivPointSet, subset: LabelSet) -> Result<DivPointSet, Error> {
    check_subset(x, subset)?;
    from_unit(&to_unit(x)?.restrict(subset)?)
}

/// Same result as [`sdps`] by clipping each dividon directly; used on hot
/// paths.
pub(crate) fn restrict(x: &DivPointSet, subset: LabelSet) -> DivPointSet {
    DivPointSet::from_sides(subset, |d| x.dividon(d).expect("subset of points").divs.first()).expect("nonempty subset")
}

/// All sub div point sets on `m` points; empty below four points.
pub fn sdps_of(x: &DivPointSet, m: usize) -> Vec<DivPointSet> {
    if m < 4 {
        return Vec::new();
    }
    x.points().subsets(m).map(|s| restrict(x, s)).collect()
}

fn unit_form(x: &DivPointSet) -> Result<UnitDivPointSet, Error> {
    to_unit(x)
}

/// Whether every unit dividon of `a` is a unit dividon of `b`.
pub fn is_sub(a: &DivPointSet, b: &DivPointSet) -> Result<bool, Error> {
    let ua = unit_form(a)?;
    let ub = unit_form(b)?;
    if !a.points().is_subset(b.points()) {
        return Ok(false);
    }
    Ok(ua.unit_dividons().iter().all(|d| ub.bit(d.key) == Some(d.same_div)))
}

/// Number of unit dividons (key and bit) the two configurations share.
pub fn shared_unit_dividons(a: &DivPointSet, b: &DivPointSet) -> Result<usize, Error> {
    let ua = unit_form(a)?;
    let ub = unit_form(b)?;
    Ok(ua.unit_dividons().iter().filter(|d| ub.bit(d.key) == Some(d.same_div)).count())
}

fn quads_all_convex(x: &DivPointSet, s: LabelSet) -> bool {
    s.subsets(4).all(|r| {
        let v = r.to_vec();
        classify_quad_bits(x.quad_bits([v[0], v[1], v[2], v[3]])) == FourClass::Convex
    })
}

/// Largest `k` with a sub configuration isomorphic to `conv_n(k)`, together
/// with one witnessing point set. Three-point configurations count as 3.
pub fn convexity_witness(x: &DivPointSet) -> Result<(u32, LabelSet), Error> {
    let n = x.len();
    if n < 3 {
        return Err(Error::TooFewPoints(n));
    }
    let fallback = x.points().subsets(3).next().expect("three points");
    for k in (4..=n).rev() {
        let target: CanonicalForm = canonical_form(&conv_n(k as u32)?);
        for s in x.points().subsets(k) {
            if quads_all_convex(x, s) && canonical_form(&restrict(x, s)) == target {
                return Ok((k as u32, s));
            }
        }
    }
    Ok((3, fallback))
}

pub fn convexity(x: &DivPointSet) -> Result<u32, Error> {
    convexity_witness(x).map(|(k, _)| k)
}

/// A family of subset families sharing one fixed subset, as in the counting
/// identity for sub div point sets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CombFamily {
    pub base: LabelSet,
    pub subset: LabelSet,
    pub a: usize,
    pub b: usize,
    /// Each entry: the common core and the `a + b` member sets, all of size
    /// `v - a`, all containing the core, one of them `subset`.
    pub family: Vec<(LabelSet, Vec<LabelSet>)>,
}

/// Builds `v - a` distinct families for `subset`.
///
/// Cores drop a cyclic window of `b` labels from `subset`. Members add to a
/// core each cyclic window of `b` labels from the `a + b` labels outside it,
/// starting with the window that gives back `subset`.
pub fn comb_family(v: u32, a: usize, b: usize, subset: LabelSet) -> Result<CombFamily, Error> {
    let bad = |m: &str| Err(Error::BadParameters(m.to_string()));
    if v == 0 || v > crate::label::MAX_LABEL as u32 {
        return bad("v must be in 1..=63");
    }
    let vu = v as usize;
    if a < 1 || a >= vu {
        return bad("need 1 <= a < v");
    }
    if b < 1 || b >= vu - a {
        return bad("need 1 <= b < v - a");
    }
    let base = LabelSet::range(v);
    if subset.len() != vu - a || !subset.is_subset(base) {
        return bad("subset must be a (v - a)-subset of 1..=v");
    }
    let window = |items: &[Label], start: usize, len: usize| -> LabelSet {
        (0..len).map(|i| items[(start + i) % items.len()]).collect()
    };
    let inside = subset.to_vec();
    let mut family = Vec::with_capacity(vu - a);
    for start in 0..vu - a {
        let dropped = window(&inside, start, b);
        let core = subset.difference(dropped);
        // outside labels, the dropped window first so offset 0 restores subset
        let mut outside: Vec<Label> = dropped.to_vec();
        outside.extend(base.difference(subset).iter());
        let members = (0..a + b).map(|j| core.union(window(&outside, j, b))).collect();
        family.push((core, members));
    }
    Ok(CombFamily { base, subset, a, b, family })
}

impl CombFamily {
    /// `t`-subsets common to every member of family entry `i`, counted by
    /// intersecting the subset families themselves.
    pub fn shared(&self, i: usize, t: usize) -> usize {
        let (_, members) = &self.family[i];
        let mut common: BTreeSet<LabelSet> = members[0].subsets(t).collect();
        for m in &members[1..] {
            let next: BTreeSet<LabelSet> = m.subsets(t).collect();
            common = common.intersection(&next).copied().collect();
        }
        common.len()
    }

    /// Structural checks plus the shared count for `t` on every entry.
    pub fn verify(&self, t: usize) -> bool {
        let size = self.subset.len();
        let cores: BTreeSet<LabelSet> = self.family.iter().map(|(c, _)| *c).collect();
        let expected = crate::combinatorics::binomial((size - self.b) as u64, t as u64) as usize;
        cores.len() == self.family.len()
            && self.family.iter().enumerate().all(|(i, (core, members))| {
                let distinct: BTreeSet<LabelSet> = members.iter().copied().collect();
                distinct.len() == self.a + self.b
                    && members.contains(&self.subset)
                    && members.iter().all(|m| m.len() == size && core.is_subset(*m))
                    && self.shared(i, t) == expected
            })
    }
}
