//! Dense complex linear algebra.
//!
//! Every routine is a pure function of immutable inputs. Eigenvalues and
//! singular values are always returned in decreasing order; ties keep the
//! order in which the solver produced them.

mod eig;
mod functions;
mod hermitian;
mod matrix;
mod schur;
mod spectrum;
pub(crate) mod svd;

pub use eig::hermitian_eig;
pub use functions::{direct_sum, matrix_abs, matrix_function, matrix_power, sandwich_power};
pub use hermitian::{hermitize, EigenDecomposition, HermitianMatrix, PositiveDefiniteMatrix};
pub use matrix::{ComplexMatrix, C64};
pub use schur::eigenvalues;
pub(crate) use spectrum::sort_desc as spectrum_sort;
pub use spectrum::SpectrumVector;
pub use svd::{graded_left_svd, singular_values};

/// Relative threshold under which a negative eigenvalue is treated as roundoff
/// and clipped to zero before a fractional power is taken.
pub const CLIP_TOLERANCE: f64 = 1e-12;

/// Hermitian check used at construction of [`HermitianMatrix`].
pub const HERMITIAN_TOLERANCE: f64 = 1e-12;

/// Looser Hermitian check used by [`hermitize`].
pub const HERMITIZE_TOLERANCE: f64 = 1e-8;

/// Positive definiteness: `lambda_min > PD_TOLERANCE * lambda_max`.
pub const PD_TOLERANCE: f64 = 1e-13;
