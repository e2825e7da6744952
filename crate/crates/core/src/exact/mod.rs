//! Exact Gaussian-rational scalars and dense matrices.

mod json;
mod matrix;
mod scalar;

pub use matrix::{Mat, Relation, Rref, Side};
pub use scalar::GaussRational;
