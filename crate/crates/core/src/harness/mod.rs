//! Seeded instance generation and the fuzz driver.

pub mod fuzz;
pub mod gen;
pub mod rng;

pub use fuzz::{evaluate, fuzz_all, fuzz_theorem, FuzzConfig, FuzzReport, Instance, THEOREMS};
pub use gen::{gen_conforming_b, gen_matrix, GenProfile, Profile};
