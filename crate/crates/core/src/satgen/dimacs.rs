use std::fmt::Write as _;
use std::io::{self, BufRead, Write};

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::cnf::{CnfFormula, Lit};
use super::instance::SatInstance;
use crate::error::Error;

fn render(cnf: &CnfFormula) -> String {
    let mut s = format!("p cnf {} {}\n", cnf.num_vars, cnf.clauses.len());
    for c in &cnf.clauses {
        for l in c {
            write!(s, "{l} ").expect("string write");
        }
        s.push_str("0\n");
    }
    s
}

/// Writes `p cnf <vars> <clauses>` followed by one `0`-terminated clause per
/// line.
pub fn export_dimacs<W: Write>(cnf: &CnfFormula, mut sink: W) -> io::Result<()> {
    sink.write_all(render(cnf).as_bytes())
}

/// Reads DIMACS CNF. Comment lines start with `c`; a clause may span lines.
pub fn parse_dimacs<R: BufRead>(source: R) -> Result<CnfFormula, Error> {
    let bad = |line: usize, message: String| Error::MalformedDimacs { line, message };
    let mut header: Option<(u32, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    let mut last = 0;
    for (i, line) in source.lines().enumerate() {
        let no = i + 1;
        last = no;
        let line = line.map_err(|e| bad(no, e.to_string()))?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('c') || t == "%" {
            continue;
        }
        if t.starts_with('p') {
            let f: Vec<&str> = t.split_whitespace().collect();
            if header.is_some() {
                return Err(bad(no, "second header".into()));
            }
            if f.len() != 4 || f[0] != "p" || f[1] != "cnf" {
                return Err(bad(no, format!("bad header `{t}`")));
            }
            let v = f[2].parse().map_err(|_| bad(no, format!("bad variable count `{}`", f[2])))?;
            let c = f[3].parse().map_err(|_| bad(no, format!("bad clause count `{}`", f[3])))?;
            header = Some((v, c));
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(bad(no, "clause before header".into()));
        };
        for tok in t.split_whitespace() {
            let l: Lit = tok.parse().map_err(|_| bad(no, format!("bad literal `{tok}`")))?;
            if l == 0 {
                if current.is_empty() {
                    return Err(bad(no, "empty clause".into()));
                }
                clauses.push(std::mem::take(&mut current));
            } else if l.unsigned_abs() > num_vars {
                return Err(bad(no, format!("literal {l} exceeds {num_vars} variables")));
            } else {
                current.push(l);
            }
        }
    }
    let Some((num_vars, count)) = header else {
        return Err(bad(last.max(1), "missing header".into()));
    };
    if !current.is_empty() {
        return Err(bad(last, "unterminated clause".into()));
    }
    if clauses.len() != count {
        return Err(bad(last.max(1), format!("header declares {count} clauses, found {}", clauses.len())));
    }
    Ok(CnfFormula { num_vars, clauses })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct InstanceManifest {
    pub n: u32,
    pub m: u32,
    pub num_vars: u64,
    pub groups_a: usize,
    pub groups_b: usize,
    pub clauses: usize,
    pub reference_b_filter: bool,
    /// SHA-256 of the exported DIMACS text.
    pub sha256: String,
}

pub fn manifest(inst: &SatInstance, cnf: &CnfFormula) -> InstanceManifest {
    InstanceManifest {
        n: inst.n,
        m: inst.m,
        num_vars: inst.num_vars,
        groups_a: inst.groups_a.len(),
        groups_b: inst.groups_b.len(),
        clauses: cnf.clauses.len(),
        reference_b_filter: inst.options.reference_b_filter,
        sha256: hex::encode(Sha256::digest(render(cnf).as_bytes())),
    }
}
