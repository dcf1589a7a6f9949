//! Weighted geometric means of positive definite matrices.
//!
//! `A #_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}` is never formed as that
//! triple product. In the eigenbasis of `A` the inner matrix is `G G^*` with
//! `G = diag(a^{-1/2}) (V_A^* V_B) diag(b^{1/2})`, and the mean is `H H^*`
//! with `H = diag(a^{1/2}) U_G diag(sigma_G^t)`. Both `G` and `H` are
//! diagonal-times-well-conditioned products, whose singular value
//! decompositions one-sided Jacobi computes to relative accuracy.

use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::svd::jacobi_svd;
use crate::linalg::{graded_left_svd, ComplexMatrix, PositiveDefiniteMatrix};

/// Inputs with a larger condition number are refused: the inverse square
/// root in the definition amplifies their representation error past any
/// useful verdict tolerance.
pub const MAX_CONDITION: f64 = 1e12;

/// The weight `t` of `A #_t B`, within `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "f64", into = "f64"))]
pub struct MeanWeight(f64);

impl MeanWeight {
    pub const HALF: MeanWeight = MeanWeight(0.5);

    pub fn new(t: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&t) {
            Ok(MeanWeight(t))
        } else {
            Err(Error::ParamOutOfRange { name: "t", value: t })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `1 - t`.
    pub fn complement(self) -> Self {
        MeanWeight(1.0 - self.0)
    }
}

impl TryFrom<f64> for MeanWeight {
    type Error = Error;
    fn try_from(t: f64) -> Result<Self> {
        MeanWeight::new(t)
    }
}

impl From<MeanWeight> for f64 {
    fn from(w: MeanWeight) -> f64 {
        w.0
    }
}

fn guard(a: &PositiveDefiniteMatrix, b: &PositiveDefiniteMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    for m in [a, b] {
        let cond = m.condition_number();
        if !(cond <= MAX_CONDITION) {
            return Err(Error::Domain { reason: "condition number exceeds the mean's guard", value: cond });
        }
    }
    Ok(())
}

/// `G = diag(a^{-1/2}) (V_A^* V_B) diag(b^{1/2})`, i.e. `A^{-1/2} B^{1/2}`
/// expressed in the two eigenbases.
fn inner_factor(a: &PositiveDefiniteMatrix, b: &PositiveDefiniteMatrix) -> ComplexMatrix {
    let k = &a.eigen().basis().adjoint() * b.eigen().basis();
    let left: Vec<f64> = a.eigenvalues().iter().map(|&x| 1.0 / Float::sqrt(x)).collect();
    let right: Vec<f64> = b.eigenvalues().iter().map(|&x| Float::sqrt(x)).collect();
    k.scale_rows_cols(&left, &right)
}

/// `A #_t B`; `t = 0` gives `A` and `t = 1` gives `B`.
pub fn t_geometric_mean(
    a: &PositiveDefiniteMatrix,
    b: &PositiveDefiniteMatrix,
    t: MeanWeight,
) -> Result<PositiveDefiniteMatrix> {
    guard(a, b)?;
    let n = a.dim();
    let inner = jacobi_svd(&inner_factor(a, b), false)?;
    let t = t.value();
    let h = ComplexMatrix::from_fn(n, |i, j| {
        inner.u[(i, j)] * (Float::sqrt(a.eigenvalues()[i]) * Float::powf(inner.sigma[j], t))
    });
    let (uh, sigma) = graded_left_svd(&h)?;
    let eigenvalues = sigma.iter().map(|s| s * s).collect();
    PositiveDefiniteMatrix::from_parts(eigenvalues, a.eigen().basis() * &uh)
}

/// `A # B`, the `t = 1/2` mean (same code path).
pub fn geometric_mean(a: &PositiveDefiniteMatrix, b: &PositiveDefiniteMatrix) -> Result<PositiveDefiniteMatrix> {
    t_geometric_mean(a, b, MeanWeight::HALF)
}

/// The unitary `U = (A^{-1/2} B A^{-1/2})^{1/2} A^{1/2} B^{-1/2}` with
/// `A # B = A^{1/2} U B^{1/2}`.
///
/// `U` is the unitary polar factor of `A^{-1/2} B^{1/2}`, which is how it is
/// computed: from the singular vectors of the inner factor.
pub fn unitary_factor(a: &PositiveDefiniteMatrix, b: &PositiveDefiniteMatrix) -> Result<ComplexMatrix> {
    guard(a, b)?;
    let inner = jacobi_svd(&inner_factor(a, b), true)?;
    let w = inner.w.expect("right vectors were requested");
    let polar = &inner.u * &w.adjoint();
    Ok(&(a.eigen().basis() * &polar) * &b.eigen().basis().adjoint())
}
