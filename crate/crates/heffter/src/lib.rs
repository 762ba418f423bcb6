//! Square integer Heffter arrays: constructions, verification, and an
//! exhaustive search oracle.
//!
//! An `H(n;k)` is an `n x n` partial matrix of integers in which every
//! row and column holds exactly `k` filled cells summing to zero, and for
//! every `x` in `{1, ..., nk}` exactly one of `x`, `-x` appears. The
//! crate builds such arrays for every solved parameter class, verifies
//! the axioms independently of the builders, classifies all `(n, k)`
//! into exists / does-not-exist / unknown / out-of-scope, and provides a
//! brute-force oracle for small and open instances.
//!
//! Entry points:
//! - [`dispatch::construct`] and [`dispatch::existence_status`] map
//!   `(n, k)` to a verdict and a built array with its route.
//! - [`HeffterArray::verify`] checks the axioms of any array.
//! - [`search::solve`] finds or refutes arrays by backtracking.
//!
//! With the default `parallel` feature the search oracle and the
//! coverage sweep distribute work with rayon; without it everything
//! runs sequentially with the same results.

pub mod array;
pub mod boosters;
pub mod dispatch;
mod error;
pub mod ladder;
pub mod search;
pub mod shiftable;

pub use array::{
    Axis, DiagonalIndex, FillViolation, HeffterArray, StripOutcome, SumViolation,
    SupportViolations, Transversal, VerificationReport,
};
pub use dispatch::{construct, coverage_table, existence_status, Construction, Route, Verdict};
pub use error::{Error, Result};
