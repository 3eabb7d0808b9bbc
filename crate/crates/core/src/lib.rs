//! Closure and interior pair operations, their Matlis duals, cores and hulls,
//! computed exactly on finite-length models of local rings.

pub mod algebra;
pub mod core_hull;
pub mod error;
pub mod inverse_system;
pub mod linalg;
pub mod monomial2;
pub mod pair_ops;
pub mod parse;
pub mod reproduce;
pub mod semigroup_ring;

pub use error::{Error, Result};
