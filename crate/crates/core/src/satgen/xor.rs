use std::collections::BTreeMap;

use super::cnf::{CnfFormula, Lit};

/// `vars[0] ^ vars[1] ^ ... = rhs`
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct XorConstraint {
    pub vars: Vec<u32>,
    pub rhs: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum XorOutcome {
    /// The system has no solution.
    Inconsistent,
    /// Rank of the system and the clauses it implies directly: units from
    /// one-variable rows and equivalences from two-variable rows.
    Consistent { rank: usize, implied: Vec<Vec<Lit>> },
}

/// Finds variable sets whose clauses contain a full parity expansion: all
/// `2^(k-1)` clauses over the same `k` variables with negation counts of one
/// parity. Sets wider than 10 variables are ignored.
pub fn extract_xors(cnf: &CnfFormula) -> Vec<XorConstraint> {
    // variable set -> (patterns with odd negation count, with even count)
    let mut by_vars: BTreeMap<Vec<u32>, [Vec<u32>; 2]> = BTreeMap::new();
    for c in &cnf.clauses {
        if c.len() < 2 || c.len() > 10 {
            continue;
        }
        let mut lits = c.clone();
        lits.sort_unstable_by_key(|l| l.unsigned_abs());
        let vars: Vec<u32> = lits.iter().map(|l| l.unsigned_abs()).collect();
        if vars.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let neg = lits.iter().enumerate().fold(0u32, |m, (i, &l)| m | ((l < 0) as u32) << i);
        by_vars.entry(vars).or_default()[(neg.count_ones() % 2 == 0) as usize].push(neg);
    }
    let mut out = Vec::new();
    for (vars, mut parts) in by_vars {
        let full = 1usize << (vars.len() - 1);
        for (slot, pats) in parts.iter_mut().enumerate() {
            pats.sort_unstable();
            pats.dedup();
            if pats.len() == full {
                // odd negation patterns forbid odd weight, so the sum is even
                out.push(XorConstraint { vars: vars.clone(), rhs: slot == 1 });
            }
        }
    }
    out
}

/// Gaussian elimination over GF(2).
pub fn gf2_eliminate(xors: &[XorConstraint], num_vars: u32) -> XorOutcome {
    let words = (num_vars as usize).div_ceil(64) + 1;
    // the last word holds the right-hand side in bit 63
    let rhs_word = words - 1;
    let mut rows: Vec<Vec<u64>> = xors
        .iter()
        .map(|x| {
            let mut r = vec![0u64; words];
            for &v in &x.vars {
                let i = v as usize - 1;
                r[i / 64] ^= 1 << (i % 64);
            }
            if x.rhs {
                r[rhs_word] |= 1 << 63;
            }
            r
        })
        .collect();
    let mut rank = 0;
    for col in 0..num_vars as usize {
        let (w, b) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & b != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[w] & b != 0 {
                row.iter_mut().zip(&pivot).for_each(|(x, y)| *x ^= y);
            }
        }
        rank += 1;
    }
    if rows[rank..].iter().any(|r| r[rhs_word] & 1 << 63 != 0) {
        return XorOutcome::Inconsistent;
    }
    let mut implied = Vec::new();
    for row in &rows[..rank] {
        let vars: Vec<Lit> =
            (0..num_vars as usize).filter(|&i| row[i / 64] & 1 << (i % 64) != 0).map(|i| i as Lit + 1).collect();
        let rhs = row[rhs_word] & 1 << 63 != 0;
        match vars[..] {
            [x] => implied.push(vec![if rhs { x } else { -x }]),
            [x, y] if rhs => implied.extend([vec![x, y], vec![-x, -y]]),
            [x, y] => implied.extend([vec![x, -y], vec![-x, y]]),
            _ => {}
        }
    }
    XorOutcome::Consistent { rank, implied }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::satgen::{gen_instance, to_cnf, InstanceOptions};

    #[test]
    fn recovers_parity_groups() {
        let inst = gen_instance(5, InstanceOptions::default()).unwrap();
        let xors = extract_xors(&to_cnf(&inst));
        assert_eq!(xors.len(), 126);
        assert!(xors.iter().all(|x| !x.rhs && x.vars.len() == 5));
        match gf2_eliminate(&xors, 126) {
            XorOutcome::Consistent { rank, implied } => {
                assert_eq!(rank, 70);
                assert!(implied.is_empty());
            }
            XorOutcome::Inconsistent => panic!("homogeneous system"),
        }
    }

    #[test]
    fn small_systems() {
        let x = |vars: &[u32], rhs| XorConstraint { vars: vars.to_vec(), rhs };
        assert_eq!(gf2_eliminate(&[x(&[1, 2], true), x(&[1, 2], false)], 2), XorOutcome::Inconsistent);
        let out = gf2_eliminate(&[x(&[1, 2, 3], true), x(&[2, 3], false)], 3);
        assert_eq!(out, XorOutcome::Consistent { rank: 2, implied: vec![vec![1], vec![2, -3], vec![-2, 3]] });
        let cnf = CnfFormula { num_vars: 2, clauses: vec![vec![1, 2], vec![-1, -2]] };
        assert_eq!(extract_xors(&cnf), vec![x(&[1, 2], true)]);
    }
}
