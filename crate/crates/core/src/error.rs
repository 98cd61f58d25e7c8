use thiserror::Error;

use crate::label::{LabelSet, Pair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("label {0} outside 1..=63")]
    BadLabel(u32),
    #[error("configuration has no points")]
    NoPoints,
    #[error("duplicate point label {0}")]
    DuplicateLabel(u32),

    // structural clauses of a div point set
    #[error("expected {expected} dividons (one per point pair), found {found}")]
    WrongDividonCount { expected: usize, found: usize },
    #[error("divider {divider} has divs that overlap or do not cover the remaining points")]
    OverlappingDivs { divider: Pair },
    #[error("divider must be two distinct configuration points, got {0}")]
    BadDividerSize(LabelSet),
    #[error("divider {0} appears more than once")]
    DuplicateDivider(Pair),

    // unit form
    #[error("expected {expected} unit dividons, found {found}")]
    WrongUnitDividonCount { expected: usize, found: usize },
    #[error("unit dividon ({divider}, {tbd}) is malformed or repeated")]
    BadUnitDividon { divider: Pair, tbd: Pair },
    #[error("operation needs at least 4 points, configuration has {0}")]
    TooFewPoints(usize),
    #[error("divider {divider}: same-div bits need {classes} divs")]
    MoreThanTwoDivs { divider: Pair, classes: usize },
    #[error("divider {divider}: same-div bits are not transitive")]
    InconsistentSameDiv { divider: Pair },

    #[error("TBD pair {0} is not contained in the divs")]
    TbdNotInDivs(Pair),
    #[error("divs must cover exactly two TBD points, cover {0}")]
    NotTwoTbd(usize),
    #[error("need exactly 4 points, got {0}")]
    NotFourPoints(usize),
    #[error("conv_n needs n >= 3 (and at most 63), got {0}")]
    BadN(u32),

    #[error("subset needs at least 4 points, got {0}")]
    SubsetTooSmall(usize),
    #[error("{0} is not a subset of the configuration points")]
    NotASubset(LabelSet),
    #[error("bad parameters: {0}")]
    BadParameters(String),

    // geometry
    #[error("points {0}, {1} and {2} are collinear")]
    CollinearTriple(u32, u32, u32),
    #[error("points {0} and {1} share coordinates")]
    DuplicatePoint(u32, u32),
    #[error("coordinates of point {0} are outside the supported range")]
    CoordinateRange(u32),

    // satgen
    #[error("value {value} out of range (limit {limit})")]
    OutOfRange { value: u64, limit: u64 },
    #[error("instance for n={n} exceeds the memory budget ({entries} group entries > {budget})")]
    TooLarge { n: u32, entries: u64, budget: u64 },
    #[error("assignment does not cover all {0} variables")]
    PartialAssignment(usize),
    #[error("malformed DIMACS at line {line}: {message}")]
    MalformedDimacs { line: usize, message: String },
    #[error("solver resource limit reached after {conflicts} conflicts")]
    ResourceLimit { conflicts: u64 },

    #[error("malformed configuration document: {0}")]
    Format(String),
}
