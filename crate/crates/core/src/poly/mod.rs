//! Polynomial maps over a rig, and finite value tables.

pub mod category;
pub mod finfn;
pub mod parse;
pub mod polynomial;

pub use category::{random_polynomial, random_scalar, PolyCat, PolyFault, PolySampler};
pub use finfn::{table_from_poly, FinFn, FinMap, TableMap};
pub use parse::parse_poly_map;
pub use polynomial::{PolyMap, Polynomial};
