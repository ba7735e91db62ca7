//! Exact computations with contact Lie algebras viewed as quadratic
//! deformations of Heisenberg algebras.

pub mod cli;
pub mod compat;
pub mod error;
pub mod exterior;
pub mod families;
pub mod liealg;
pub mod linalg;
pub mod multilinear;
pub mod rp;
pub mod scalar;
pub mod upoly;

pub use error::{Error, Result};
