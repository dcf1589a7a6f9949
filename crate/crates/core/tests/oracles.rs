//! Cross-checks against independent implementations: nalgebra's
//! decompositions and 256-bit arithmetic for closed-form means.

mod common;
#[path = "support/high_precision.rs"]
mod high_precision;

use astro_float::Consts;
use common::*;
use high_precision::*;
use meanforge_core::linalg::{eigenvalues, hermitian_eig, matrix_abs, singular_values};
use meanforge_core::means::{geometric_mean, t_geometric_mean, unitary_factor, MeanWeight};
use meanforge_core::sampling::{random_ginibre, rng_from_seed};
use meanforge_core::{ComplexMatrix, PositiveDefiniteMatrix, C64};

#[test]
fn hermitian_spectrum_matches_nalgebra() {
    for dim in 1..=8 {
        for seed in 0..20u64 {
            let h = random_hermitian(dim, 1000 * dim as u64 + seed);
            let ours = hermitian_eig(&h).unwrap();
            let mut theirs: Vec<f64> = to_na(h.matrix()).symmetric_eigen().eigenvalues.iter().copied().collect();
            theirs.sort_by(|a, b| b.partial_cmp(a).unwrap());
            let scale = h.matrix().frobenius_norm();
            for (x, y) in ours.eigenvalues().iter().zip(&theirs) {
                assert!((x - y).abs() <= 1e-12 * scale, "dim {dim}: {x} vs {y}");
            }
            // Eigenvectors: H V = V diag(lambda).
            let v = ours.basis();
            let lv = ComplexMatrix::from_fn(dim, |i, j| v[(i, j)] * ours.eigenvalues()[j]);
            assert!((&(h.matrix() * v) - &lv).frobenius_norm() <= 1e-12 * scale);
            assert!(v.unitarity_defect() < 1e-12);
        }
    }
}

#[test]
fn singular_values_match_nalgebra() {
    for dim in 1..=8 {
        for seed in 0..20u64 {
            let m = random_ginibre(dim, &mut rng_from_seed(77 + seed * 31 + dim as u64));
            let ours = singular_values(&m).unwrap();
            let theirs = to_na(&m).singular_values();
            let mut theirs: Vec<f64> = theirs.iter().copied().collect();
            theirs.sort_by(|a, b| b.partial_cmp(a).unwrap());
            for (x, y) in ours.values().iter().zip(&theirs) {
                assert!((x - y).abs() <= 1e-12 * theirs[0], "{x} vs {y}");
            }
            // |M| has the same singular values.
            let abs = matrix_abs(&m).unwrap();
            let s_abs = hermitian_eig(&abs).unwrap();
            for (x, y) in s_abs.eigenvalues().iter().zip(ours.values()) {
                assert!((x - y).abs() <= 1e-12 * theirs[0]);
            }
        }
    }
}

#[test]
fn general_eigenvalues_match_nalgebra() {
    for dim in 1..=8 {
        for seed in 0..10u64 {
            let m = random_ginibre(dim, &mut rng_from_seed(5000 + seed * 17 + dim as u64));
            let ours = eigenvalues(&m).unwrap();
            let theirs: Vec<C64> = to_na(&m).schur().eigenvalues().unwrap().iter().copied().collect();
            let scale = m.frobenius_norm();
            let mut used = vec![false; dim];
            for z in &ours {
                let (k, d) = theirs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| !used[*k])
                    .map(|(k, w)| (k, (z - w).norm()))
                    .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                    .unwrap();
                used[k] = true;
                assert!(d <= 1e-10 * scale, "dim {dim}: eigenvalue {z} off by {d}");
            }
        }
    }
}

#[test]
fn fractional_powers_match_nalgebra() {
    for dim in [2, 3, 5, 8] {
        for seed in 0..10u64 {
            let a = pd(dim, seed, 1e-2, 1e2);
            for alpha in [-1.0, -0.5, 0.3, 0.5, 1.5, 2.0] {
                let ours = a.power_hermitian(alpha);
                let theirs = from_na(&na_power(&to_na(a.matrix()), alpha));
                assert!(rel_diff(ours.matrix(), &theirs) < 1e-11, "alpha {alpha}");
            }
        }
    }
}

#[test]
fn midpoint_mean_matches_high_precision_oracle() {
    for dim in [2, 4] {
        for seed in 0..40u64 {
            let (a, b) = pd_pair(dim, 300 * dim as u64 + seed, 1e-3, 1e3);
            let ours = geometric_mean(&a, &b).unwrap();
            let oracle = big_geometric_mean(&big_from_eigen(&a), &big_from_eigen(&b)).to_matrix();
            let err = rel_diff(ours.matrix(), &oracle);
            assert!(err < 1e-12, "dim {dim}, seed {seed}: relative error {err:e}");
        }
    }
}

#[test]
fn scalar_mean_matches_high_precision_power() {
    let mut consts = Consts::new().unwrap();
    let values = [1e-3, 0.37, 1.0, 2.5, 640.0, 1e3];
    for &x in &values {
        for &y in &values {
            for t in [0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0] {
                let a = PositiveDefiniteMatrix::from_matrix(ComplexMatrix::from_diagonal(&[x])).unwrap();
                let b = PositiveDefiniteMatrix::from_matrix(ComplexMatrix::from_diagonal(&[y])).unwrap();
                let ours = t_geometric_mean(&a, &b, MeanWeight::new(t).unwrap()).unwrap().eigenvalues()[0];
                let l = big(x).pow(&big(1.0 - t), PREC, RM, &mut consts);
                let r = big(y).pow(&big(t), PREC, RM, &mut consts);
                let exact = to_f64(&l.mul(&r, PREC, RM));
                assert!((ours - exact).abs() <= 1e-12 * exact, "{x} #_{t} {y}: {ours} vs {exact}");
            }
        }
    }
}

#[test]
fn weighted_mean_matches_direct_formula() {
    // Well-conditioned inputs, where the textbook formula is itself accurate.
    for dim in [2, 3, 5, 8] {
        for seed in 0..10u64 {
            let (a, b) = pd_pair(dim, 900 + seed, 0.1, 10.0);
            let (na_a, na_b) = (to_na(a.matrix()), to_na(b.matrix()));
            let half = na_power(&na_a, 0.5);
            let inv_half = na_power(&na_a, -0.5);
            let inner = &inv_half * &na_b * &inv_half;
            let inner = (&inner + inner.adjoint()) * C64::new(0.5, 0.0);
            for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
                let direct = from_na(&(&half * na_power(&inner, t) * &half));
                let ours = t_geometric_mean(&a, &b, MeanWeight::new(t).unwrap()).unwrap();
                assert!(rel_diff(ours.matrix(), &direct) < 1e-11, "dim {dim} t {t}");
            }
        }
    }
}

#[test]
fn midpoint_mean_solves_riccati_equation() {
    for (i, dim) in [2, 3, 5, 8].iter().cycle().take(200).enumerate() {
        let (a, b) = pd_pair(*dim, 40_000 + i as u64, 1e-3, 1e3);
        let x = geometric_mean(&a, &b).unwrap();
        let a_inv = a.power_hermitian(-1.0);
        let residual = &(&(x.matrix() * a_inv.matrix()) * x.matrix()) - b.matrix();
        let rel = residual.frobenius_norm() / b.matrix().frobenius_norm();
        assert!(rel < 1e-9, "dim {dim}: riccati residual {rel:e}");
    }
}

#[test]
fn unitary_factor_is_unitary_and_factorizes_the_mean() {
    for (i, dim) in [2, 3, 5, 8].iter().cycle().take(200).enumerate() {
        let (a, b) = pd_pair(*dim, 70_000 + i as u64, 1e-3, 1e3);
        let u = unitary_factor(&a, &b).unwrap();
        assert!(u.unitarity_defect() < 1e-9);
        let mean = geometric_mean(&a, &b).unwrap();
        let rebuilt = &(a.sqrt().matrix() * &u) * b.sqrt().matrix();
        assert!(rel_diff(&rebuilt, mean.matrix()) < 1e-9, "dim {dim}");
    }
}

#[test]
fn high_precision_eigensolver_agrees_with_the_crate() {
    for dim in [1, 2, 4, 5] {
        let h = random_hermitian(dim, 8_000 + dim as u64);
        let (values, v) = hermitian_eigen(&BigMat::from_matrix(h.matrix()));
        let mut values: Vec<f64> = values.iter().map(to_f64).collect();
        values.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let ours = hermitian_eig(&h).unwrap();
        let scale = h.matrix().frobenius_norm();
        for (x, y) in ours.eigenvalues().iter().zip(&values) {
            assert!((x - y).abs() <= 1e-13 * scale);
        }
        assert!(v.to_matrix().unitarity_defect() < 1e-14);
    }
}
