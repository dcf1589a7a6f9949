//! Cyclic two-sided Jacobi for Hermitian matrices.
//!
//! Jacobi is slower than tridiagonal QR but, with the relative off-diagonal
//! test used here, it resolves small eigenvalues of well-scaled positive
//! definite matrices to high relative accuracy, which the log-majorization
//! checks depend on.

use alloc::vec::Vec;

use num_traits::Float;

use super::hermitian::{EigenDecomposition, HermitianMatrix};
use super::matrix::{ComplexMatrix, C64};
use super::spectrum::decreasing_order;
use crate::error::{Error, Result};

pub(crate) const MAX_SWEEPS: usize = 60;

/// Parameters of the complex rotation that annihilates the `(p, q)` entry of
/// the Hermitian 2x2 block `[[app, apq], [conj(apq), aqq]]`.
///
/// The rotation is `J = [[c, s e], [-s conj(e), c]]` with `e = apq / |apq|`,
/// and `J^* block J = diag(app - t |apq|, aqq + t |apq|)`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Rotation {
    pub c: f64,
    pub s: f64,
    pub e: C64,
    pub t: f64,
}

impl Rotation {
    pub(crate) fn annihilating(app: f64, aqq: f64, apq: C64) -> Rotation {
        let r = apq.norm();
        let e = apq / r;
        let theta = (aqq - app) / (2.0 * r);
        let t = if theta.is_infinite() {
            0.5 / theta
        } else {
            let sign = if theta >= 0.0 { 1.0 } else { -1.0 };
            sign / (theta.abs() + Float::sqrt(theta * theta + 1.0))
        };
        let c = 1.0 / Float::sqrt(t * t + 1.0);
        Rotation { c, s: t * c, e, t }
    }

    /// Right-multiplies the column pair `(xp, xq)` by `J`.
    #[inline]
    pub(crate) fn apply_columns(&self, xp: &mut C64, xq: &mut C64) {
        let (p, q) = (*xp, *xq);
        *xp = p * self.c - q * (self.e.conj() * self.s);
        *xq = p * (self.e * self.s) + q * self.c;
    }

    /// Left-multiplies the row pair `(yp, yq)` by `J^*`.
    #[inline]
    fn apply_rows(&self, yp: &mut C64, yq: &mut C64) {
        let (p, q) = (*yp, *yq);
        *yp = p * self.c - q * (self.e * self.s);
        *yq = p * (self.e.conj() * self.s) + q * self.c;
    }
}

/// Eigendecomposition of a Hermitian matrix; eigenvalues decreasing.
pub fn hermitian_eig(h: &HermitianMatrix) -> Result<EigenDecomposition> {
    let n = h.dim();
    let mut a = h.matrix().clone();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm();
    let tol = f64::EPSILON * (n.max(1) as f64);
    let floor = f64::EPSILON * f64::EPSILON * scale;

    let mut converged = n <= 1 || scale == 0.0;
    let mut sweeps = 0;
    while !converged {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NumericalFailure("Jacobi eigenvalue sweeps did not converge"));
        }
        sweeps += 1;
        converged = true;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                if mag <= tol * Float::sqrt(app.abs() * aqq.abs()) || mag <= floor {
                    continue;
                }
                converged = false;
                let rot = Rotation::annihilating(app, aqq, apq);
                for k in 0..n {
                    let (mut xp, mut xq) = (a[(k, p)], a[(k, q)]);
                    rot.apply_columns(&mut xp, &mut xq);
                    a[(k, p)] = xp;
                    a[(k, q)] = xq;
                }
                for k in 0..n {
                    let (mut yp, mut yq) = (a[(p, k)], a[(q, k)]);
                    rot.apply_rows(&mut yp, &mut yq);
                    a[(p, k)] = yp;
                    a[(q, k)] = yq;
                }
                a[(p, p)] = C64::new(app - rot.t * mag, 0.0);
                a[(q, q)] = C64::new(aqq + rot.t * mag, 0.0);
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                for k in 0..n {
                    let (mut xp, mut xq) = (v[(k, p)], v[(k, q)]);
                    rot.apply_columns(&mut xp, &mut xq);
                    v[(k, p)] = xp;
                    v[(k, q)] = xq;
                }
            }
        }
    }

    let raw: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    if raw.iter().any(|x| !x.is_finite()) {
        return Err(Error::NumericalFailure("non-finite eigenvalue"));
    }
    let order = decreasing_order(&raw);
    let eigenvalues = order.iter().map(|&i| raw[i]).collect();
    let basis = ComplexMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(EigenDecomposition::from_parts(eigenvalues, basis))
}
