//! Matrix-analysis core for norm inequalities involving geometric means of
//! positive definite matrices.
//!
//! The crate is `no_std` (it needs `alloc`). It provides:
//!
//! * [`linalg`]: dense complex matrices, Hermitian Jacobi eigensolvers,
//!   one-sided Jacobi singular values, matrix functions and direct sums;
//! * [`means`]: geometric and t-geometric means and the unitary factor of
//!   the midpoint mean;
//! * [`majorization`]: weak, strong and (weak) log majorization verdicts;
//! * [`norms`]: Schatten and Ky Fan norms and Fan dominance;
//! * [`inequalities`]: each checked statement expressed as a predicate that
//!   returns per-index slacks;
//! * [`sampling`]: seeded positive definite, Haar unitary and commuting-pair
//!   generators;
//! * [`instance`]: statement-aware instance generation and evaluation shared
//!   by campaign drivers.
//!
//! Spectra that feed log-majorization or fractional roots are computed through
//! graded factorizations `D1 * K * D2` (diagonal, unitary, diagonal), for which
//! one-sided Jacobi keeps high relative accuracy even when the condition number
//! is far beyond `1 / f64::EPSILON`.
#![no_std]
// Negated comparisons are how NaN is rejected alongside out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod inequalities;
pub mod instance;
pub mod linalg;
pub mod majorization;
pub mod means;
pub mod norms;
pub mod sampling;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, EigenDecomposition, HermitianMatrix, PositiveDefiniteMatrix, SpectrumVector, C64};
