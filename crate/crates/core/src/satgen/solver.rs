use std::time::{Duration, Instant};

use serde::Serialize;

use super::cnf::{CnfFormula, Lit};
use super::xor::{extract_xors, gf2_eliminate, XorOutcome};
use crate::error::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SolveOptions {
    /// Conflict-driven clause learning with non-chronological backjumping;
    /// otherwise plain chronological backtracking.
    pub learning: bool,
    pub conflict_budget: Option<u64>,
    pub time_budget: Option<Duration>,
    /// Gaussian elimination over the parity subsystem before search.
    pub xor_preprocess: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { learning: true, conflict_budget: Some(10_000_000), time_budget: None, xor_preprocess: false }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SolveResult {
    /// `model[v - 1]` is the value of variable `v`.
    Sat(Vec<bool>),
    Unsat,
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveResult::Sat(_))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Default, Debug, Serialize)]
pub struct SolveStats {
    pub decisions: u64,
    pub conflicts: u64,
    pub propagations: u64,
    pub learned: u64,
    /// Rank of the parity subsystem when preprocessing ran.
    pub xor_rank: Option<usize>,
}

// literal code: 2 * (v - 1) for v, plus one for its negation
type Code = usize;

fn code(l: Lit) -> Code {
    2 * (l.unsigned_abs() as usize - 1) + (l < 0) as usize
}

fn var(c: Code) -> usize {
    c >> 1
}

struct Search {
    clauses: Vec<Vec<Code>>,
    watches: Vec<Vec<usize>>,
    value: Vec<Option<bool>>,
    level: Vec<usize>,
    reason: Vec<Option<usize>>,
    trail: Vec<Code>,
    trail_lim: Vec<usize>,
    // decision level already tried both ways (chronological mode)
    flipped: Vec<bool>,
    head: usize,
    stats: SolveStats,
}

impl Search {
    fn new(num_vars: usize) -> Self {
        Search {
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * num_vars],
            value: vec![None; num_vars],
            level: vec![0; num_vars],
            reason: vec![None; num_vars],
            trail: Vec::new(),
            trail_lim: Vec::new(),
            flipped: Vec::new(),
            head: 0,
            stats: SolveStats::default(),
        }
    }

    fn lit_value(&self, c: Code) -> Option<bool> {
        self.value[var(c)].map(|v| v ^ (c & 1 == 1))
    }

    fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    fn enqueue(&mut self, c: Code, reason: Option<usize>) {
        let v = var(c);
        self.value[v] = Some(c & 1 == 0);
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(c);
    }

    /// Adds a clause of at least two literals watching its first two.
    fn attach(&mut self, lits: Vec<Code>) -> usize {
        let i = self.clauses.len();
        self.watches[lits[0] ^ 1].push(i);
        self.watches[lits[1] ^ 1].push(i);
        self.clauses.push(lits);
        i
    }

    /// Unit propagation; returns a conflicting clause.
    fn propagate(&mut self) -> Option<usize> {
        while self.head < self.trail.len() {
            let p = self.trail[self.head];
            self.head += 1;
            self.stats.propagations += 1;
            let false_lit = p ^ 1;
            let ws = std::mem::take(&mut self.watches[p]);
            let mut keep = Vec::with_capacity(ws.len());
            let mut conflict = None;
            for (k, &ci) in ws.iter().enumerate() {
                if conflict.is_some() {
                    keep.extend_from_slice(&ws[k..]);
                    break;
                }
                let clause = &mut self.clauses[ci];
                if clause[0] == false_lit {
                    clause.swap(0, 1);
                }
                let first = clause[0];
                if self.value[var(first)].map(|v| v ^ (first & 1 == 1)) == Some(true) {
                    keep.push(ci);
                    continue;
                }
                let replacement = (2..clause.len()).find(|&j| {
                    let l = clause[j];
                    self.value[var(l)].map(|v| v ^ (l & 1 == 1)) != Some(false)
                });
                if let Some(j) = replacement {
                    clause.swap(1, j);
                    let w = clause[1] ^ 1;
                    self.watches[w].push(ci);
                    continue;
                }
                keep.push(ci);
                match self.lit_value(first) {
                    Some(false) => conflict = Some(ci),
                    _ => self.enqueue(first, Some(ci)),
                }
            }
            self.watches[p] = keep;
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    fn backtrack(&mut self, lvl: usize) {
        if self.decision_level() <= lvl {
            return;
        }
        let start = self.trail_lim[lvl];
        for &c in &self.trail[start..] {
            self.value[var(c)] = None;
            self.reason[var(c)] = None;
        }
        self.trail.truncate(start);
        self.trail_lim.truncate(lvl);
        self.flipped.truncate(lvl);
        self.head = start;
    }

    fn decide(&mut self, c: Code, flipped: bool) {
        self.trail_lim.push(self.trail.len());
        self.flipped.push(flipped);
        self.enqueue(c, None);
    }

    /// First unique implication point learning. Returns the learned clause
    /// (asserting literal first, highest remaining level second) and the
    /// backjump level.
    fn analyze(&mut self, conflict: usize) -> (Vec<Code>, usize) {
        let current = self.decision_level();
        let mut seen = vec![false; self.value.len()];
        let mut learnt = vec![0];
        let mut pending = 0;
        let mut idx = self.trail.len();
        let mut clause = conflict;
        let mut p: Option<Code> = None;
        loop {
            for &q in &self.clauses[clause] {
                if Some(q) == p {
                    continue;
                }
                let v = var(q);
                if !seen[v] && self.level[v] > 0 {
                    seen[v] = true;
                    if self.level[v] == current {
                        pending += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if seen[var(self.trail[idx])] {
                    break;
                }
            }
            let lit = self.trail[idx];
            seen[var(lit)] = false;
            pending -= 1;
            p = Some(lit);
            if pending == 0 {
                break;
            }
            clause = self.reason[var(lit)].expect("implied literal has a reason");
        }
        learnt[0] = p.expect("conflict at a decision level") ^ 1;
        let mut back = 0;
        if learnt.len() > 1 {
            let (i, l) = (1..learnt.len()).map(|i| (i, self.level[var(learnt[i])])).max_by_key(|&(_, l)| l).unwrap();
            learnt.swap(1, i);
            back = l;
        }
        (learnt, back)
    }
}

fn normalize(clause: &[Lit]) -> Option<Vec<Code>> {
    let mut c: Vec<Code> = clause.iter().map(|&l| code(l)).collect();
    c.sort_unstable();
    c.dedup();
    // sorted codes put a literal and its negation next to each other
    if c.windows(2).any(|w| w[0] ^ 1 == w[1]) {
        None
    } else {
        Some(c)
    }
}

pub fn solve(cnf: &CnfFormula, opts: SolveOptions) -> Result<SolveResult, Error> {
    solve_with_stats(cnf, opts).map(|(r, _)| r)
}

/// Complete, deterministic search. Branches on the lowest unassigned variable,
/// trying true first.
pub fn solve_with_stats(cnf: &CnfFormula, opts: SolveOptions) -> Result<(SolveResult, SolveStats), Error> {
    let n = cnf.num_vars as usize;
    let mut s = Search::new(n);
    let mut extra = Vec::new();
    if opts.xor_preprocess {
        match gf2_eliminate(&extract_xors(cnf), cnf.num_vars) {
            XorOutcome::Inconsistent => return Ok((SolveResult::Unsat, s.stats)),
            XorOutcome::Consistent { rank, implied } => {
                s.stats.xor_rank = Some(rank);
                extra = implied;
            }
        }
    }
    let mut units = Vec::new();
    for clause in cnf.clauses.iter().chain(&extra) {
        if clause.is_empty() {
            return Ok((SolveResult::Unsat, s.stats));
        }
        match normalize(clause) {
            None => {}
            Some(c) if c.len() == 1 => units.push(c[0]),
            Some(c) => {
                s.attach(c);
            }
        }
    }
    for u in units {
        match s.lit_value(u) {
            Some(false) => return Ok((SolveResult::Unsat, s.stats)),
            Some(true) => {}
            None => s.enqueue(u, None),
        }
    }
    let started = Instant::now();
    loop {
        if let Some(conflict) = s.propagate() {
            s.stats.conflicts += 1;
            if opts.conflict_budget.is_some_and(|b| s.stats.conflicts > b)
                || opts.time_budget.is_some_and(|t| started.elapsed() > t)
            {
                return Err(Error::ResourceLimit { conflicts: s.stats.conflicts });
            }
            if s.decision_level() == 0 {
                return Ok((SolveResult::Unsat, s.stats));
            }
            if opts.learning {
                let (learnt, back) = s.analyze(conflict);
                s.backtrack(back);
                let asserting = learnt[0];
                if learnt.len() == 1 {
                    s.enqueue(asserting, None);
                } else {
                    let ci = s.attach(learnt);
                    s.enqueue(asserting, Some(ci));
                }
                s.stats.learned += 1;
            } else {
                let Some(lvl) = s.flipped.iter().rposition(|&f| !f) else {
                    return Ok((SolveResult::Unsat, s.stats));
                };
                let d = s.trail[s.trail_lim[lvl]];
                s.backtrack(lvl);
                s.decide(d ^ 1, true);
            }
        } else {
            match s.value.iter().position(Option::is_none) {
                None => {
                    let model = s.value.iter().map(|v| v.expect("assigned")).collect();
                    return Ok((SolveResult::Sat(model), s.stats));
                }
                Some(v) => {
                    s.stats.decisions += 1;
                    s.decide(2 * v, false);
                }
            }
        }
    }
}
