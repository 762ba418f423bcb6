//! Command-line front end for constructing, verifying, and searching
//! square integer Heffter arrays.
//!
//! Exit codes are stable so shell pipelines can branch on verdicts:
//! 0 success / exists / valid, 1 I/O or parse error, 2 does-not-exist or
//! invalid or search exhausted with no solution, 3 unknown class or
//! inconclusive search, 4 out of scope.

pub mod commands;
pub mod format;

pub use commands::{CliError, ExitCode};
pub use format::{ArrayDocument, FormatError};
