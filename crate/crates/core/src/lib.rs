//! Exact algebra and recurrence derivation for weighted multinomial sums.

// index loops mirror the matrix and weight formulas; sorting by key would clone monomials
#![allow(clippy::needless_range_loop, clippy::unnecessary_sort_by)]

pub mod error;
pub mod matrix;
pub mod oracle;
pub mod power;
pub mod poly;
pub mod ratfunc;
pub mod recurrence;
pub mod ring;
pub mod scalar;
pub mod tools;
pub mod unit;
pub mod weighted;

pub use error::{Error, Result};
pub use poly::{MultiPoly, Var};
pub use scalar::CycloNumber;
