use alloc::vec::Vec;

use num_traits::Float;

use super::eig::hermitian_eig;
use super::hermitian::{EigenDecomposition, HermitianMatrix, PositiveDefiniteMatrix};
use super::matrix::{ComplexMatrix, C64};
use super::svd::jacobi_svd;
use super::CLIP_TOLERANCE;
use crate::error::{Error, Result};

/// `f(H)` through the eigendecomposition of `H`.
///
/// `f` signals values outside its domain by returning a non-finite number;
/// that surfaces as [`Error::Domain`].
pub fn matrix_function(h: &HermitianMatrix, f: impl Fn(f64) -> f64) -> Result<HermitianMatrix> {
    Ok(hermitian_eig(h)?.map(f)?.to_hermitian())
}

/// `H^alpha`. Integer exponents accept any Hermitian input (negative integers
/// need a nonsingular one). Non-integer exponents need `H` positive
/// semidefinite: eigenvalues in `[-CLIP_TOLERANCE * lambda_max, 0)` are set to
/// zero, anything more negative is a domain error.
pub fn matrix_power(h: &HermitianMatrix, alpha: f64) -> Result<HermitianMatrix> {
    let eig = hermitian_eig(h)?;
    Ok(power_of_decomposition(&eig, alpha)?.to_hermitian())
}

pub(crate) fn power_of_decomposition(eig: &EigenDecomposition, alpha: f64) -> Result<EigenDecomposition> {
    if alpha.fract() == 0.0 && alpha.abs() < 1e6 {
        let k = alpha as i32;
        return eig.map(|x| Float::powi(x, k));
    }
    let top = eig.eigenvalues().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    for &x in eig.eigenvalues() {
        if x < -CLIP_TOLERANCE * top {
            return Err(Error::Domain { reason: "fractional power of a negative eigenvalue", value: x });
        }
    }
    eig.map(|x| Float::powf(x.max(0.0), alpha))
}

/// `|M| = (M^* M)^{1/2}`, assembled from the right singular vectors of `M`.
pub fn matrix_abs(m: &ComplexMatrix) -> Result<HermitianMatrix> {
    let svd = jacobi_svd(m, true)?;
    let w = svd.w.expect("right vectors were requested");
    let n = m.dim();
    let scaled = ComplexMatrix::from_fn(n, |i, j| w[(i, j)] * svd.sigma[j]);
    super::hermitize(&(&scaled * &w.adjoint()))
}

/// Block-diagonal `A (+) B`. A 0x0 matrix is the neutral element.
pub fn direct_sum(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim(), b.dim());
    ComplexMatrix::from_fn(na + nb, |i, j| match (i < na, j < na) {
        (true, true) => a[(i, j)],
        (false, false) => b[(i - na, j - na)],
        _ => C64::new(0.0, 0.0),
    })
}

/// Decomposition of `(P^alpha Q^beta P^alpha)^gamma` for positive definite
/// `P`, `Q`.
///
/// With `P = V_P diag(p) V_P^*` and `Q = V_Q diag(q) V_Q^*`, the inner product
/// is `V_P G G^* V_P^*` where `G = diag(p^alpha) (V_P^* V_Q) diag(q^{beta/2})`.
/// `G` is diagonal-unitary-diagonal, so its singular values are obtained to
/// high relative accuracy even when `P^alpha` and `Q^beta` are extremely
/// ill-conditioned, and the spectrum of the result is `sigma^{2 gamma}`.
pub fn sandwich_power(
    p: &PositiveDefiniteMatrix,
    alpha: f64,
    q: &PositiveDefiniteMatrix,
    beta: f64,
    gamma: f64,
) -> Result<EigenDecomposition> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { left: p.dim(), right: q.dim() });
    }
    let vp = p.eigen().basis();
    let k = &vp.adjoint() * q.eigen().basis();
    let left: Vec<f64> = p.eigenvalues().iter().map(|&x| Float::powf(x, alpha)).collect();
    let right: Vec<f64> = q.eigenvalues().iter().map(|&x| Float::powf(x, beta * 0.5)).collect();
    if left.iter().chain(&right).any(|v| !v.is_finite() || *v == 0.0) {
        return Err(Error::Domain { reason: "power overflows the floating-point range", value: alpha });
    }
    let g = k.scale_rows_cols(&left, &right);
    let svd = jacobi_svd(&g, false)?;
    let values: Vec<f64> = svd.sigma.iter().map(|&s| Float::powf(s, 2.0 * gamma)).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain { reason: "power overflows the floating-point range", value: gamma });
    }
    if svd.sigma.contains(&0.0) {
        return Err(Error::NumericalFailure("sandwich factor lost rank"));
    }
    let basis = vp * &svd.u;
    let order_ok = gamma >= 0.0;
    let decomposition = EigenDecomposition::from_parts(values, basis);
    if order_ok {
        Ok(decomposition)
    } else {
        decomposition.map(|x| x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn square_root_of_diagonal() {
        let h = HermitianMatrix::from_real_diagonal(&[4.0, 9.0]);
        let r = matrix_function(&h, Float::sqrt).unwrap();
        assert!((r.matrix() - &ComplexMatrix::from_diagonal(&[2.0, 3.0])).frobenius_norm() < 1e-15);
        let same = matrix_function(&h, |x| x).unwrap();
        assert_eq!(same.matrix(), h.matrix());
    }

    #[test]
    fn domain_errors() {
        let h = HermitianMatrix::from_real_diagonal(&[1.0, -0.5]);
        assert!(matches!(matrix_power(&h, 0.5), Err(Error::Domain { .. })));
        assert!(matches!(matrix_function(&h, Float::sqrt), Err(Error::Domain { .. })));
        // Integer powers are fine on indefinite input.
        let sq = matrix_power(&h, 2.0).unwrap();
        assert!((sq.matrix() - &ComplexMatrix::from_diagonal(&[1.0, 0.25])).frobenius_norm() < 1e-15);
        // Roundoff-level negatives are clipped.
        let tiny = HermitianMatrix::from_real_diagonal(&[1.0, -1e-14]);
        assert!(matrix_power(&tiny, 0.5).is_ok());
    }

    #[test]
    fn abs_of_nilpotent_and_signed_diagonal() {
        let j = ComplexMatrix::from_real(2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        let a = matrix_abs(&j).unwrap();
        assert!((a.matrix() - &ComplexMatrix::from_diagonal(&[0.0, 1.0])).frobenius_norm() < 1e-15);
        let d = matrix_abs(&ComplexMatrix::from_diagonal(&[-2.0, 3.0])).unwrap();
        assert!((d.matrix() - &ComplexMatrix::from_diagonal(&[2.0, 3.0])).frobenius_norm() < 1e-15);
    }

    #[test]
    fn direct_sum_neutral_element() {
        let a = ComplexMatrix::from_diagonal(&[1.0]);
        let b = ComplexMatrix::from_diagonal(&[2.0]);
        assert_eq!(direct_sum(&a, &b), ComplexMatrix::from_diagonal(&[1.0, 2.0]));
        assert_eq!(direct_sum(&a, &ComplexMatrix::zeros(0)), a);
        assert_eq!(direct_sum(&ComplexMatrix::new(0, vec![]).unwrap(), &b), b);
    }

    #[test]
    fn sandwich_on_commuting_diagonals() {
        let p = PositiveDefiniteMatrix::from_matrix(ComplexMatrix::from_diagonal(&[4.0, 0.25])).unwrap();
        let q = PositiveDefiniteMatrix::from_matrix(ComplexMatrix::from_diagonal(&[9.0, 16.0])).unwrap();
        // (P^{1/2} Q P^{1/2})^{1/2} = diag(6, 2).
        let e = sandwich_power(&p, 0.5, &q, 1.0, 0.5).unwrap();
        assert!((e.eigenvalues()[0] - 6.0).abs() < 1e-14);
        assert!((e.eigenvalues()[1] - 2.0).abs() < 1e-14);
        let m = e.to_hermitian();
        assert!((m.matrix() - &ComplexMatrix::from_diagonal(&[6.0, 2.0])).frobenius_norm() < 1e-13);
    }
}
