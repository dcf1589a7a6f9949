use alloc::vec::Vec;

use num_traits::Float;

use super::eig::hermitian_eig;
use super::matrix::{ComplexMatrix, C64};
use super::spectrum::SpectrumVector;
use super::svd::graded_left_svd;
use super::{HERMITIAN_TOLERANCE, HERMITIZE_TOLERANCE, PD_TOLERANCE};
use crate::error::{Error, Result};

/// A matrix equal to its adjoint up to `HERMITIAN_TOLERANCE`.
///
/// The stored entries are exactly Hermitian: the constructor replaces the
/// input by `(M + M^*)/2` once the tolerance check passes.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    inner: ComplexMatrix,
}

fn symmetrized(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.dim();
    ComplexMatrix::from_fn(
        n,
        |i, j| {
            if i == j {
                C64::new(m[(i, i)].re, 0.0)
            } else {
                (m[(i, j)] + m[(j, i)].conj()) * 0.5
            }
        },
    )
}

fn check_hermitian(m: &ComplexMatrix, tol: f64) -> Result<()> {
    let deviation = m.hermitian_defect();
    if deviation <= tol * m.frobenius_norm().max(1.0) {
        Ok(())
    } else {
        Err(Error::NotHermitian { deviation })
    }
}

impl HermitianMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        check_hermitian(&m, HERMITIAN_TOLERANCE)?;
        Ok(HermitianMatrix { inner: symmetrized(&m) })
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        HermitianMatrix { inner: ComplexMatrix::from_diagonal(diag) }
    }

    pub fn dim(&self) -> usize {
        self.inner.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.inner
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.inner
    }

    pub fn eig(&self) -> Result<EigenDecomposition> {
        hermitian_eig(self)
    }

    /// Sum of two Hermitian matrices (exactly Hermitian again).
    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(HermitianMatrix { inner: self.inner.try_add(&other.inner)? })
    }

    pub fn scale(&self, factor: f64) -> Self {
        HermitianMatrix { inner: self.inner.scale(factor) }
    }
}

/// `(M + M^*)/2`, refusing inputs that are far from Hermitian: those indicate
/// a wrongly assembled product rather than roundoff.
pub fn hermitize(m: &ComplexMatrix) -> Result<HermitianMatrix> {
    check_hermitian(m, HERMITIZE_TOLERANCE)?;
    Ok(HermitianMatrix { inner: symmetrized(m) })
}

/// Eigenvalues in decreasing order with matching eigenvector columns.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenDecomposition {
    eigenvalues: Vec<f64>,
    basis: ComplexMatrix,
}

impl EigenDecomposition {
    pub(crate) fn from_parts(eigenvalues: Vec<f64>, basis: ComplexMatrix) -> Self {
        debug_assert_eq!(eigenvalues.len(), basis.dim());
        EigenDecomposition { eigenvalues, basis }
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// `basis * diag(f(lambda)) * basis^*`; reorders if `f` is not monotone.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<EigenDecomposition> {
        let values: Vec<f64> = self.eigenvalues.iter().map(|&x| f(x)).collect();
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain {
                reason: "function is not finite on the spectrum",
                value: self
                    .eigenvalues
                    .iter()
                    .zip(&values)
                    .find(|(_, v)| !v.is_finite())
                    .map(|(x, _)| *x)
                    .unwrap_or(f64::NAN),
            });
        }
        let order = super::spectrum::decreasing_order(&values);
        let n = self.dim();
        Ok(EigenDecomposition {
            eigenvalues: order.iter().map(|&i| values[i]).collect(),
            basis: ComplexMatrix::from_fn(n, |i, j| self.basis[(i, order[j])]),
        })
    }

    /// Reassembles `basis * diag(eigenvalues) * basis^*`.
    pub fn to_hermitian(&self) -> HermitianMatrix {
        let n = self.dim();
        let scaled = ComplexMatrix::from_fn(n, |i, j| self.basis[(i, j)] * self.eigenvalues[j]);
        HermitianMatrix { inner: symmetrized(&(&scaled * &self.basis.adjoint())) }
    }

    /// Eigenvalues as a spectrum, clipping roundoff-level negatives.
    pub fn spectrum(&self) -> Result<SpectrumVector> {
        SpectrumVector::from_psd_eigenvalues(self.eigenvalues.clone())
    }
}

/// A Hermitian matrix whose eigenvalues are all positive, stored together with
/// its eigendecomposition.
///
/// Keeping the factorization lets fractional powers and the graded mean
/// routines work from the eigenvalues directly instead of re-deriving them
/// from rounded entries.
#[derive(Clone, Debug, PartialEq)]
pub struct PositiveDefiniteMatrix {
    hermitian: HermitianMatrix,
    eigen: EigenDecomposition,
}

fn check_pd(eigenvalues: &[f64]) -> Result<()> {
    let max = eigenvalues.first().copied().unwrap_or(1.0);
    let min = eigenvalues.last().copied().unwrap_or(1.0);
    if eigenvalues.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    if !(max > 0.0) || !(min > PD_TOLERANCE * max) {
        return Err(Error::NotPositiveDefinite { min_eigenvalue: min, max_eigenvalue: max });
    }
    Ok(())
}

impl PositiveDefiniteMatrix {
    pub fn new(h: HermitianMatrix) -> Result<Self> {
        let eigen = hermitian_eig(&h)?;
        check_pd(&eigen.eigenvalues)?;
        Ok(PositiveDefiniteMatrix { hermitian: h, eigen })
    }

    pub fn from_matrix(m: ComplexMatrix) -> Result<Self> {
        Self::new(HermitianMatrix::new(m)?)
    }

    /// Builds `basis * diag(eigenvalues) * basis^*` from a decomposition; the
    /// basis must be unitary and the eigenvalues decreasing and positive.
    pub fn from_eigen(eigen: EigenDecomposition) -> Result<Self> {
        if eigen.eigenvalues.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain { reason: "eigenvalues are not decreasing", value: 0.0 });
        }
        check_pd(&eigen.eigenvalues)?;
        let defect = eigen.basis.unitarity_defect();
        if !(defect <= 1e-10 * (eigen.dim().max(1) as f64)) {
            return Err(Error::NumericalFailure("eigenvector basis is not unitary"));
        }
        Ok(PositiveDefiniteMatrix { hermitian: eigen.to_hermitian(), eigen })
    }

    pub fn from_parts(eigenvalues: Vec<f64>, basis: ComplexMatrix) -> Result<Self> {
        if eigenvalues.len() != basis.dim() {
            return Err(Error::LengthMismatch { left: eigenvalues.len(), right: basis.dim() });
        }
        Self::from_eigen(EigenDecomposition::from_parts(eigenvalues, basis))
    }

    /// `F F^*` for a nonsingular factor `F`, decomposed through the singular
    /// value decomposition of `F` itself.
    pub fn from_factor(f: &ComplexMatrix) -> Result<Self> {
        let (u, sigma) = graded_left_svd(f)?;
        let eigenvalues = sigma.iter().map(|s| s * s).collect();
        Self::from_parts(eigenvalues, u)
    }

    pub fn identity(dim: usize) -> Self {
        PositiveDefiniteMatrix {
            hermitian: HermitianMatrix::from_real_diagonal(&alloc::vec![1.0; dim]),
            eigen: EigenDecomposition::from_parts(alloc::vec![1.0; dim], ComplexMatrix::identity(dim)),
        }
    }

    pub fn dim(&self) -> usize {
        self.hermitian.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.hermitian.matrix()
    }

    pub fn hermitian(&self) -> &HermitianMatrix {
        &self.hermitian
    }

    pub fn eigen(&self) -> &EigenDecomposition {
        &self.eigen
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigen.eigenvalues
    }

    pub fn spectrum(&self) -> SpectrumVector {
        SpectrumVector::new(self.eigen.eigenvalues.clone()).expect("positive decreasing eigenvalues")
    }

    pub fn condition_number(&self) -> f64 {
        self.eigenvalues()[0] / self.eigenvalues()[self.dim() - 1]
    }

    /// `A^alpha` as a Hermitian matrix (no positivity re-check, so extreme
    /// exponents that push the condition number past the PD threshold are
    /// still representable).
    pub fn power_hermitian(&self, alpha: f64) -> HermitianMatrix {
        self.power_eigen(alpha).to_hermitian()
    }

    /// Decomposition of `A^alpha`, reusing the stored eigenvectors.
    pub fn power_eigen(&self, alpha: f64) -> EigenDecomposition {
        self.eigen.map(|x| Float::powf(x, alpha)).expect("powers of positive reals are finite")
    }

    pub fn power(&self, alpha: f64) -> Result<Self> {
        Self::from_eigen(self.power_eigen(alpha))
    }

    pub fn sqrt(&self) -> Self {
        self.power(0.5).expect("square root preserves definiteness")
    }

    /// Sum of positive definite matrices, re-decomposed.
    pub fn add(&self, other: &Self) -> Result<Self> {
        Self::new(self.hermitian.add(&other.hermitian)?)
    }

    pub fn sum<'a>(items: impl IntoIterator<Item = &'a Self>) -> Result<Self> {
        let mut iter = items.into_iter();
        let first = iter.next().ok_or(Error::EmptyTuple)?;
        let mut acc: Option<ComplexMatrix> = None;
        for m in iter {
            acc = Some(acc.as_ref().unwrap_or(first.matrix()).try_add(m.matrix())?);
        }
        match acc {
            // A single term keeps its own (exact) decomposition.
            None => Ok(first.clone()),
            Some(total) => Self::new(HermitianMatrix::new(total)?),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn hermitian_tolerance() {
        let mut m = ComplexMatrix::identity(2);
        m[(0, 1)] = C64::new(1e-14, 0.0);
        assert!(HermitianMatrix::new(m.clone()).is_ok());
        m[(0, 1)] = C64::new(1e-6, 0.0);
        assert!(matches!(HermitianMatrix::new(m.clone()), Err(Error::NotHermitian { .. })));
        m[(0, 1)] = C64::new(1.0, 0.0);
        assert!(matches!(hermitize(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn hermitize_is_identity_on_hermitian_input() {
        let m = ComplexMatrix::new(
            2,
            vec![C64::new(1.0, 0.0), C64::new(2.0, 3.0), C64::new(2.0, -3.0), C64::new(-1.0, 0.0)],
        )
        .unwrap();
        assert_eq!(hermitize(&m).unwrap().matrix(), &m);
    }

    #[test]
    fn hermitize_averages_small_skew_part() {
        let h = ComplexMatrix::from_real(2, &[1.0, 2.0, 2.0, 3.0]).unwrap();
        let k = ComplexMatrix::from_real(2, &[0.0, 1.0, -1.0, 0.0]).unwrap();
        let m = &h + &k.scale(1e-10);
        let avg = &k + &k.adjoint();
        let expected = &h + &avg.scale(0.5e-10);
        assert!((hermitize(&m).unwrap().matrix() - &expected).frobenius_norm() < 1e-16);
    }

    #[test]
    fn pd_rejection() {
        let m = ComplexMatrix::from_diagonal(&[1.0, 1e-14]);
        assert!(matches!(PositiveDefiniteMatrix::from_matrix(m), Err(Error::NotPositiveDefinite { .. })));
        assert!(PositiveDefiniteMatrix::from_matrix(ComplexMatrix::from_diagonal(&[1.0, 1e-12])).is_ok());
    }

    #[test]
    fn powers_reuse_eigenbasis() {
        let a = PositiveDefiniteMatrix::from_matrix(ComplexMatrix::from_diagonal(&[4.0, 9.0])).unwrap();
        let s = a.sqrt();
        assert_eq!(s.eigenvalues(), &[3.0, 2.0]);
        assert!((s.matrix() - &ComplexMatrix::from_diagonal(&[2.0, 3.0])).frobenius_norm() < 1e-15);
    }

    #[test]
    fn factor_round_trip() {
        let f = ComplexMatrix::new(
            2,
            vec![C64::new(1.0, 0.5), C64::new(0.0, 0.0), C64::new(2.0, -1.0), C64::new(0.5, 0.0)],
        )
        .unwrap();
        let a = PositiveDefiniteMatrix::from_factor(&f).unwrap();
        let direct = &f * &f.adjoint();
        assert!((a.matrix() - &direct).frobenius_norm() < 1e-14 * direct.frobenius_norm());
    }
}
