//! Exact parameters of nonnegative matrices under the restriction preorder
//! `A ≤ B ⇔ A = X B Yᵀ` (`X`, `Y` nonnegative).
//!
//! The crate computes rank, nonnegative subrank (maximum induced matching),
//! fractional cover number (exact LP with primal and dual certificates),
//! bounds on the nonnegative rank, and combines them into two-sided
//! estimates of the asymptotic nonnegative rank and subrank under Kronecker
//! powers.

mod bitset;
pub mod cover;
pub mod error;
pub mod linalg;
pub mod lp;
pub mod matching;
pub mod matrix;
pub mod nnrank;
pub mod random;
pub mod spectra;

pub use error::{Error, Result};
pub use matrix::{MatrixFormat, NonnegativeMatrix, Rational, SupportPattern};
