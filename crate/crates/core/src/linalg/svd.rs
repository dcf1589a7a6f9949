//! One-sided (Hestenes) Jacobi singular value decomposition.
//!
//! Column rotations are chosen from the Gram entries of column pairs, so the
//! singular values come out as column norms: the method is accurate in the
//! relative sense for matrices of the shape `D1 * K * D2` (diagonal, well
//! conditioned, diagonal) however wide the range of the diagonal scalings.
//! All fractional-power sandwiches in the crate are reduced to that shape.

use alloc::vec::Vec;

use num_traits::Float;

use super::eig::{Rotation, MAX_SWEEPS};
use super::matrix::{ComplexMatrix, C64};
use super::spectrum::{decreasing_order, SpectrumVector};
use crate::error::{Error, Result};

/// `M W = U diag(sigma)`, sigma decreasing. Columns of `U` belonging to zero
/// singular values are left as zero vectors.
pub(crate) struct Svd {
    pub u: ComplexMatrix,
    pub sigma: Vec<f64>,
    pub w: Option<ComplexMatrix>,
}

fn column_norm(col: &[C64]) -> f64 {
    // Scaled accumulation so that squares of very large or very small
    // columns neither overflow nor underflow.
    let big = col.iter().fold(0.0f64, |m, z| m.max(z.re.abs()).max(z.im.abs()));
    if big == 0.0 || !big.is_finite() {
        return big;
    }
    let s: f64 = col.iter().map(|z| (z / big).norm_sqr()).sum();
    big * Float::sqrt(s)
}

pub(crate) fn jacobi_svd(m: &ComplexMatrix, want_w: bool) -> Result<Svd> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let n = m.dim();
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| m.column(j)).collect();
    let mut w: Vec<Vec<C64>> = if want_w {
        (0..n).map(|j| (0..n).map(|i| C64::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect()).collect()
    } else {
        Vec::new()
    };
    let tol = f64::EPSILON * (n.max(1) as f64);

    let mut converged = n <= 1;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NumericalFailure("one-sided Jacobi sweeps did not converge"));
        }
        sweeps += 1;
        converged = true;
        for i in 0..n - 1 {
            for j in i + 1..n {
                let ni = column_norm(&cols[i]);
                let nj = column_norm(&cols[j]);
                if ni == 0.0 || nj == 0.0 {
                    continue;
                }
                // Gram entries of the normalised pair, then rescaled: keeps
                // the rotation angle exact for columns of very different size.
                let mut g = C64::new(0.0, 0.0);
                for (x, y) in cols[i].iter().zip(&cols[j]) {
                    g += (x / ni).conj() * (y / nj);
                }
                if g.norm() <= tol {
                    continue;
                }
                converged = false;
                let gamma = g * (ni * nj);
                let rot = Rotation::annihilating(ni * ni, nj * nj, gamma);
                let rot = if rot.c.is_finite() && rot.s.is_finite() {
                    rot
                } else {
                    // Squares overflowed: compute the angle on the scaled pair.
                    let scale = ni.max(nj);
                    let (a, b) = (ni / scale, nj / scale);
                    Rotation::annihilating(a * a, b * b, g * (a * b))
                };
                let (left, right) = cols.split_at_mut(j);
                for (xp, xq) in left[i].iter_mut().zip(right[0].iter_mut()) {
                    rot.apply_columns(xp, xq);
                }
                if want_w {
                    let (left, right) = w.split_at_mut(j);
                    for (xp, xq) in left[i].iter_mut().zip(right[0].iter_mut()) {
                        rot.apply_columns(xp, xq);
                    }
                }
            }
        }
    }

    let raw: Vec<f64> = cols.iter().map(|c| column_norm(c)).collect();
    if raw.iter().any(|s| !s.is_finite()) {
        return Err(Error::NumericalFailure("non-finite singular value"));
    }
    let order = decreasing_order(&raw);
    let sigma: Vec<f64> = order.iter().map(|&i| raw[i]).collect();
    let u = ComplexMatrix::from_fn(n, |r, c| {
        let s = sigma[c];
        if s > 0.0 {
            cols[order[c]][r] / s
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let w = if want_w { Some(ComplexMatrix::from_fn(n, |r, c| w[order[c]][r])) } else { None };
    Ok(Svd { u, sigma, w })
}

/// Left singular vectors and singular values of a nonsingular matrix:
/// `M M^* = U diag(sigma^2) U^*`.
pub fn graded_left_svd(m: &ComplexMatrix) -> Result<(ComplexMatrix, Vec<f64>)> {
    let svd = jacobi_svd(m, false)?;
    if svd.sigma.last() == Some(&0.0) {
        return Err(Error::NumericalFailure("singular factor has no complete left basis"));
    }
    Ok((svd.u, svd.sigma))
}

/// Singular values in decreasing order.
pub fn singular_values(m: &ComplexMatrix) -> Result<SpectrumVector> {
    let svd = jacobi_svd(m, false)?;
    SpectrumVector::new(svd.sigma)
}
