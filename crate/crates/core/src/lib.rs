//! Exact computations around plane partitions: generalized MacMahon weights,
//! motivic classes of torus-fixed components of framed moduli of sheaves on
//! the plane, tangent weights at fixed points, and finite-field point counts.

pub mod error;
pub mod fforacle;
pub mod json;
pub mod motivic;
pub mod partitions;
pub mod series;
pub mod suite;
pub mod torus;
pub mod vuletic;

pub use error::{Error, Result};
