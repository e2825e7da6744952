//! Exact generalized inverses over the Gaussian rationals, together with
//! checkers for the additive properties and absorption laws that relate the
//! inverse of a sum `a + b` to the inverse of `a`.

pub mod addabs;
pub mod decomp;
pub mod error;
pub mod exact;
pub mod geninv;
pub mod harness;
pub mod weakdrazin;

pub use error::{Error, Result};
pub use exact::{GaussRational, Mat};
