use serde::Serialize;

use crate::combinatorics::{binomial, rank_subset, unrank_subset, Combinations};
use crate::error::Error;

/// Default cap on stored group entries (A and B together).
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// Lexicographic rank (1-based) of a 4-subset of `1..=m`. The subset may be
/// given in any order.
pub fn rank4(subset: [u32; 4], m: u32) -> Result<u64, Error> {
    let mut s = subset;
    s.sort_unstable();
    if let Some(&bad) = s.iter().find(|&&x| x == 0 || x > m) {
        return Err(Error::OutOfRange { value: bad as u64, limit: m as u64 });
    }
    rank_subset(&s, m).ok_or(Error::BadParameters(format!("{subset:?} has repeated members")))
}

pub fn unrank4(id: u64, m: u32) -> Result<[u32; 4], Error> {
    let v = unrank_subset(id, 4, m).ok_or(Error::OutOfRange { value: id, limit: binomial(m as u64, 4) })?;
    Ok([v[0], v[1], v[2], v[3]])
}

/// `2^(n-2) + 1`
pub fn points_for(n: u32) -> u64 {
    (1u64 << (n - 2)) + 1
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct InstanceOptions {
    /// Keep only B-groups that contain variable 2.
    pub reference_b_filter: bool,
    pub budget: u64,
}

impl Default for InstanceOptions {
    fn default() -> Self {
        InstanceOptions { reference_b_filter: false, budget: DEFAULT_BUDGET }
    }
}

/// Variables are the 4-subsets of `1..=m`; each A-group lists the five
/// 4-subsets of one 5-subset and each B-group the 4-subsets of one `n`-subset.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct SatInstance {
    pub n: u32,
    pub m: u32,
    pub num_vars: u64,
    pub groups_a: Vec<Vec<u64>>,
    pub groups_b: Vec<Vec<u64>>,
    pub options: InstanceOptions,
}

/// Ranks of all 4-subsets of `subset` (ascending `1..=m` labels), ascending.
fn group_of(subset: &[u32], m: u32) -> Vec<u64> {
    Combinations::new(subset.len(), 4)
        .map(|c| rank_subset(&[subset[c[0]], subset[c[1]], subset[c[2]], subset[c[3]]], m).expect("valid"))
        .collect()
}

fn groups(k: usize, m: u32) -> Vec<Vec<u64>> {
    Combinations::new(m as usize, k)
        .map(|c| {
            let s: Vec<u32> = c.iter().map(|&i| i as u32 + 1).collect();
            group_of(&s, m)
        })
        .collect()
}

pub fn gen_instance(n: u32, opts: InstanceOptions) -> Result<SatInstance, Error> {
    if !(5..=20).contains(&n) {
        return Err(Error::BadParameters(format!("n must be in 5..=20, got {n}")));
    }
    let m64 = points_for(n);
    let entries = binomial(m64, 5)
        .saturating_mul(5)
        .saturating_add(binomial(m64, n as u64).saturating_mul(binomial(n as u64, 4)));
    if entries > opts.budget || m64 > u32::MAX as u64 {
        return Err(Error::TooLarge { n, entries, budget: opts.budget });
    }
    let m = m64 as u32;
    let mut groups_b = groups(n as usize, m);
    if opts.reference_b_filter {
        groups_b.retain(|g| g.contains(&2));
    }
    Ok(SatInstance { n, m, num_vars: binomial(m64, 4), groups_a: groups(5, m), groups_b, options: opts })
}

/// Whether a complete assignment (`assign[v - 1]` for variable `v`) puts every
/// A-group in an allowed pattern and leaves no B-group all zero.
pub fn check_assignment(inst: &SatInstance, assign: &[bool]) -> Result<bool, Error> {
    if assign.len() as u64 != inst.num_vars {
        return Err(Error::PartialAssignment(inst.num_vars as usize));
    }
    let value = |v: u64| assign[v as usize - 1] as u8;
    let a_ok = inst.groups_a.iter().all(|g| {
        let vals = [value(g[0]), value(g[1]), value(g[2]), value(g[3]), value(g[4])];
        crate::oracles::pattern_allowed(vals)
    });
    let b_ok = inst.groups_b.iter().all(|g| g.iter().any(|&v| value(v) == 1));
    Ok(a_ok && b_ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_ranks() {
        assert_eq!(rank4([1, 2, 3, 4], 9).unwrap(), 1);
        assert_eq!(rank4([1, 3, 4, 5], 9).unwrap(), 22);
        assert_eq!(rank4([2, 3, 4, 5], 9).unwrap(), 57);
        assert_eq!(rank4([6, 7, 8, 9], 9).unwrap(), 126);
        assert_eq!(rank4([5, 4, 3, 2], 9).unwrap(), 57);
        assert_eq!(rank4([1, 2, 3, 10], 9), Err(Error::OutOfRange { value: 10, limit: 9 }));
        assert!(rank4([1, 1, 3, 4], 9).is_err());
        for id in 1..=126 {
            assert_eq!(rank4(unrank4(id, 9).unwrap(), 9).unwrap(), id);
        }
        assert!(unrank4(127, 9).is_err());
    }

    #[test]
    fn n5_shape() {
        let inst = gen_instance(5, InstanceOptions::default()).unwrap();
        assert_eq!((inst.m, inst.num_vars), (9, 126));
        assert_eq!(inst.groups_a.len(), 126);
        assert_eq!(inst.groups_b.len(), 126);
        assert_eq!(inst.groups_a, inst.groups_b);
        assert_eq!(inst.groups_a[0], vec![1, 2, 7, 22, 57]);
        let mut occurrences = vec![0; 127];
        for g in &inst.groups_a {
            for &v in g {
                occurrences[v as usize] += 1;
            }
        }
        assert!(occurrences[1..].iter().all(|&c| c == 5));
    }

    #[test]
    fn n6_shape() {
        let inst = gen_instance(6, InstanceOptions::default()).unwrap();
        assert_eq!((inst.m, inst.num_vars), (17, 2380));
        assert_eq!(inst.groups_a.len(), 6188);
        assert_eq!(inst.groups_b.len(), 12376);
        assert!(inst.groups_b.iter().all(|g| g.len() == 15));
        let mut occurrences = vec![0; 2381];
        for g in &inst.groups_a {
            for &v in g {
                occurrences[v as usize] += 1;
            }
        }
        assert!(occurrences[1..].iter().all(|&c| c == 13));
    }

    #[test]
    fn n7_refused() {
        assert!(matches!(gen_instance(7, InstanceOptions::default()), Err(Error::TooLarge { n: 7, .. })));
        assert!(gen_instance(4, InstanceOptions::default()).is_err());
    }

    #[test]
    fn reference_filter_keeps_groups_with_variable_two() {
        let opts = InstanceOptions { reference_b_filter: true, ..Default::default() };
        let inst = gen_instance(5, opts).unwrap();
        assert!(inst.groups_b.iter().all(|g| g.contains(&2)));
        assert_eq!(inst.groups_b.len(), 5);
    }

    #[test]
    fn assignments() {
        let inst = gen_instance(5, InstanceOptions::default()).unwrap();
        assert!(!check_assignment(&inst, &[true; 126]).unwrap());
        assert!(!check_assignment(&inst, &[false; 126]).unwrap());
        assert_eq!(check_assignment(&inst, &[true; 3]), Err(Error::PartialAssignment(126)));
    }
}
