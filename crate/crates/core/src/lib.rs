//! Exact combinatorics of the torus fixed points and plus cells of the
//! variety of complete quadrics, and of its SL₂-regular subvarieties `X^I`.
//!
//! The Poincaré polynomial of `X^I` is computed twice: by the closed product
//! formula in [`qpoly`] and by summing over fixed-point cells in [`cells`].
//! [`nilfix`] recovers which `I` give regular subvarieties from fixed
//! quadrics of a regular nilpotent, independently of the combinatorial
//! criterion in [`parabolic`].

pub mod cells;
pub mod cli;
pub mod error;
pub mod nilfix;
pub mod parabolic;
pub mod qpoly;
pub mod symmetric_group;

pub use cells::{poincare_full_variety, poincare_sum, CellRecord};
pub use error::{Error, Result};
pub use parabolic::SimpleSubset;
pub use qpoly::{product_formula, QPolynomial};
pub use symmetric_group::{Permutation, WeightVector};
