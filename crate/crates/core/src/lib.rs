//! Exact algebra of cartesian differential categories.
//!
//! The crate computes with the structures of differential calculus done
//! categorically: polynomial maps and their total derivatives, the Faa di
//! Bruno construction of higher-order chain rules, the modality `Q` whose
//! co-Kleisli category carries the same calculus, and differential
//! presheaves over finite matrix categories. Everything is exact and generic
//! over a [`Rig`] of scalars; the aliases below name the usual choices.

pub mod algebra;
pub mod cdc;
pub mod combinat;
pub mod dpsh;
mod error;
pub mod faa;
pub mod poly;
pub mod qmodality;
pub mod report;
pub mod suites;

pub use algebra::{FiniteRig, Natural, Rig, RigSpec, RigValue, Zm};
pub use error::{Error, Result};

/// Integers.
pub type Int = num_bigint::BigInt;
/// Rationals in lowest terms.
pub type Rat = num_rational::BigRational;
/// Natural numbers, a rig without negatives.
pub type Nat = Natural;
pub type Z2 = Zm<2>;
pub type Z3 = Zm<3>;
pub type Z5 = Zm<5>;
