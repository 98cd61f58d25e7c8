//! Multiset SAT instances over the 4-subsets of `2^(n-2) + 1` points, their
//! CNF encoding, DIMACS I/O, and an embedded deterministic solver.

mod cnf;
mod dimacs;
mod instance;
mod solver;
mod xor;

pub use cnf::{to_cnf, CnfFormula, Lit};
pub use dimacs::{export_dimacs, manifest, parse_dimacs, InstanceManifest};
pub use instance::{
    check_assignment, gen_instance, points_for, rank4, unrank4, InstanceOptions, SatInstance, DEFAULT_BUDGET,
};
pub use solver::{solve, solve_with_stats, SolveOptions, SolveResult, SolveStats};
pub use xor::{extract_xors, gf2_eliminate, XorConstraint, XorOutcome};
