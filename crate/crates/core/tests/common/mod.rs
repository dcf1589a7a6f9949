//! Helpers shared by the integration tests.
#![allow(dead_code)]

use meanforge_core::sampling::{random_ginibre, random_pd, rng_from_seed, SamplerConfig};
use meanforge_core::{ComplexMatrix, HermitianMatrix, PositiveDefiniteMatrix, C64};
use nalgebra::DMatrix;

pub fn to_na(m: &ComplexMatrix) -> DMatrix<C64> {
    let n = m.dim();
    DMatrix::from_fn(n, n, |i, j| m[(i, j)])
}

pub fn from_na(m: &DMatrix<C64>) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.nrows(), |i, j| m[(i, j)])
}

pub fn rel_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    (a - b).frobenius_norm() / b.frobenius_norm().max(f64::MIN_POSITIVE)
}

pub fn random_hermitian(dim: usize, seed: u64) -> HermitianMatrix {
    let g = random_ginibre(dim, &mut rng_from_seed(seed));
    HermitianMatrix::new((&g + &g.adjoint()).scale(0.5)).unwrap()
}

pub fn pd(dim: usize, seed: u64, lo: f64, hi: f64) -> PositiveDefiniteMatrix {
    let config = SamplerConfig::new(dim, seed).with_range(lo, hi);
    random_pd(&config, &mut config.rng()).unwrap()
}

pub fn pd_pair(dim: usize, seed: u64, lo: f64, hi: f64) -> (PositiveDefiniteMatrix, PositiveDefiniteMatrix) {
    let config = SamplerConfig::new(dim, seed).with_range(lo, hi);
    let mut rng = config.rng();
    (random_pd(&config, &mut rng).unwrap(), random_pd(&config, &mut rng).unwrap())
}

/// `A^alpha` from nalgebra's Hermitian eigensolver.
pub fn na_power(a: &DMatrix<C64>, alpha: f64) -> DMatrix<C64> {
    let eig = a.clone().symmetric_eigen();
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|x| C64::new(x.max(0.0).powf(alpha), 0.0)));
    &eig.eigenvectors * d * eig.eigenvectors.adjoint()
}
