//! Exact scalars and finitely supported linear algebra over them.

pub mod monomial;
pub mod rig;
pub mod value;
pub mod vector;

pub use monomial::{monomial_mul, Monomial};
pub use rig::{sub, FiniteRig, Natural, Rig, Zm};
pub use value::{rig_op, RigOp, RigSpec, RigValue};
pub use vector::{linear_combine, tensor_elem, Generator, Key, ModuleElement, Space, Vector};
