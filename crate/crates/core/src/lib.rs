//! Div point sets: combinatorial abstractions of planar point sets in general
//! position, their planarity laws, and the search machinery around the
//! convex-subset problem.

pub mod catalog;
pub mod combinatorics;
pub mod dps;
pub mod error;
pub mod format;
pub mod geometry;
pub mod hypergraph;
pub mod label;
pub mod laws;
pub mod oracles;
pub mod satgen;
pub mod subdps;
pub mod unit;

pub use catalog::{canonical_form, classify4, conv_n, isomorphism, named_config, ConfigName, FourClass};
pub use dps::{DivPointSet, Dividon, Divs};
pub use error::Error;
pub use label::{Label, LabelSet, Pair};
pub use laws::{check_planarity_laws, check_unit_laws, is_lawful, LawReport};
pub use unit::{from_unit, to_unit, UnitDivPointSet};

/// Points with 64-bit coordinates (magnitude up to 10^9).
pub type Point = geometry::PlanarPoint<i64>;
pub type PointSet = geometry::PlanarPointSet<i64>;
/// Unbounded coordinates.
pub type BigPoint = geometry::PlanarPoint<num_bigint::BigInt>;
pub type BigPointSet = geometry::PlanarPointSet<num_bigint::BigInt>;

pub type Result<T, E = Error> = std::result::Result<T, E>;
