//! Campaign driver for the `meanforge` command: fuzz verification of proven
//! statements, counterexample search for conjectural ones, and single
//! instance replay.

// Negated comparisons are how NaN is rejected alongside out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod campaign;
pub mod cli;
pub mod config;
pub mod formats;
pub mod replay;
pub mod report;
pub mod search;

pub use cli::run_cli;
