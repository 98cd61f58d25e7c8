use serde::Serialize;

use super::instance::SatInstance;

/// Signed variable: `v` or `-v` for variable `v >= 1`.
pub type Lit = i32;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CnfFormula {
    pub num_vars: u32,
    pub clauses: Vec<Vec<Lit>>,
}

impl CnfFormula {
    pub fn new(num_vars: u32) -> Self {
        CnfFormula { num_vars, clauses: Vec::new() }
    }

    /// Checks every literal is nonzero and within `num_vars`, and no clause is
    /// empty.
    pub fn is_valid(&self) -> bool {
        self.clauses.iter().all(|c| !c.is_empty() && c.iter().all(|&l| l != 0 && l.unsigned_abs() <= self.num_vars))
    }

    /// `assign[v - 1]` is the value of variable `v`.
    pub fn evaluate(&self, assign: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|&l| assign[l.unsigned_abs() as usize - 1] == (l > 0)))
    }
}

/// Each A-group becomes the 16 clauses forbidding an odd number of ones; each
/// B-group one positive clause. No auxiliary variables.
pub fn to_cnf(inst: &SatInstance) -> CnfFormula {
    let mut cnf = CnfFormula::new(inst.num_vars as u32);
    cnf.clauses.reserve(inst.groups_a.len() * 16 + inst.groups_b.len());
    for g in &inst.groups_a {
        let k = g.len() as u32;
        // a clause with negation pattern `neg` excludes exactly the assignment
        // setting the negated variables to one and the rest to zero
        for neg in 0u32..1 << k {
            if neg.count_ones() % 2 == 1 {
                let clause = g
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| if neg >> i & 1 == 1 { -(v as Lit) } else { v as Lit })
                    .collect();
                cnf.clauses.push(clause);
            }
        }
    }
    for g in &inst.groups_b {
        cnf.clauses.push(g.iter().map(|&v| v as Lit).collect());
    }
    cnf
}
