//! Statement checks on sampled instances: proven statements hold, and
//! overlapping statements agree with each other and with direct codings.

mod common;
#[path = "support/high_precision.rs"]
mod high_precision;

use common::*;
use high_precision::*;
use meanforge_core::inequalities::{
    check_conjecture, check_dinh, check_main_theorem, check_trace_theorem, main_theorem_proof_chain, ChainRelation,
    InequalityParams, MatrixTuple, StatementId,
};
use meanforge_core::instance::{generate, parameter_cells, ParamGrid};
use meanforge_core::majorization::{dominates, DominanceMode};
use meanforge_core::sampling::SamplerConfig;

const TAU: f64 = 1e-8;

fn tuple(dim: usize, m: usize, seed: u64) -> MatrixTuple {
    let pairs = (0..m).map(|i| pd_pair(dim, seed * 10 + i as u64, 1e-3, 1e3)).collect();
    MatrixTuple::from_pairs(pairs).unwrap()
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / x.abs().max(y.abs()).max(f64::MIN_POSITIVE)
}

fn max_rel(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    x.iter().zip(y).map(|(a, b)| rel(*a, *b)).fold(0.0, f64::max)
}

#[test]
fn sampled_proven_statements_hold() {
    let base = SamplerConfig::default();
    let grid = ParamGrid::default();
    for statement in StatementId::ALL.into_iter().filter(|s| s.is_proven()) {
        for (c, cell) in parameter_cells(statement, &grid).into_iter().enumerate() {
            for dim in [2, 3] {
                let seed = 1_000 * c as u64 + dim as u64;
                let v = generate(statement, cell, dim, seed, &base).unwrap().evaluate(TAU).unwrap();
                assert!(v.holds, "{statement} {cell:?} dim {dim}: min slack {}", v.min_slack());
            }
        }
    }
}

#[test]
fn conjecture_reproduces_main_theorem_at_midpoint() {
    for seed in 0..20 {
        let t = tuple(4, 2, seed);
        for p in [1.0, 2.0, 3.0] {
            for r in [1.0, 2.0] {
                let main = check_main_theorem(&t, p, r, TAU).unwrap();
                let conj = check_conjecture(&t, InequalityParams::new(2, 0.5, p, r).unwrap(), TAU).unwrap();
                assert!(max_rel(&main.lhs_values, &conj.lhs_values) <= 1e-12);
                assert!(max_rel(&main.rhs_values, &conj.rhs_values) <= 1e-12);
                assert_eq!(main.holds, conj.holds);
            }
        }
    }
}

#[test]
fn trace_theorem_is_the_top_ky_fan_value() {
    for seed in 0..20 {
        let t = tuple(3, 2, 500 + seed);
        for p in [1.0, 2.0] {
            let main = check_main_theorem(&t, p, 1.5, TAU).unwrap();
            let trace = check_trace_theorem(&t, p, 1.5, TAU).unwrap();
            let n = t.dim();
            assert!(rel(main.lhs_values[n - 1], trace.lhs_values[0]) <= 1e-12);
            assert!(rel(main.rhs_values[n - 1], trace.rhs_values[0]) <= 1e-12);
        }
    }
}

/// The two sides of the midpoint, two-pair case of the Dinh inequality,
/// `(A # B)^r + (C # D)^r` and `((A + C)^{r/2} (B + D)^r (A + C)^{r/2})^{1/2}`,
/// coded directly in 256-bit arithmetic.
fn direct_midpoint_sides(t: &MatrixTuple, r: f64) -> (Vec<f64>, Vec<f64>) {
    let a: Vec<BigMat> = t.a().iter().map(big_from_eigen).collect();
    let b: Vec<BigMat> = t.b().iter().map(big_from_eigen).collect();
    let lhs = power(&big_geometric_mean(&a[0], &b[0]), r).add(&power(&big_geometric_mean(&a[1], &b[1]), r));
    let s = power(&a[0].add(&a[1]), r / 2.0);
    let rhs = power(&s.mul(&power(&b[0].add(&b[1]), r)).mul(&s), 0.5);
    (ky_fan_sums(&lhs), ky_fan_sums(&rhs))
}

#[test]
fn dinh_midpoint_case_matches_direct_coding() {
    let mut worst: f64 = 0.0;
    for seed in 0..6 {
        let t = tuple(3, 2, 900 + seed);
        for r in [1.0, 1.5, 2.0, 3.0] {
            let v = check_dinh(&t, InequalityParams::new(2, 0.5, 2.0, r).unwrap(), TAU).unwrap();
            let (lhs, rhs) = direct_midpoint_sides(&t, r);
            worst = worst.max(max_rel(&v.lhs_values, &lhs)).max(max_rel(&v.rhs_values, &rhs));
        }
    }
    assert!(worst <= 1e-12, "worst relative disagreement {worst:e}");
}

#[test]
fn ky_fan_verdicts_match_weak_majorization_of_spectra() {
    for seed in 0..20 {
        let t = tuple(3, 2, 2_000 + seed);
        let v = check_main_theorem(&t, 2.0, 2.0, TAU).unwrap();
        let d = dominates(&v.lhs_spectrum, &v.rhs_spectrum, DominanceMode::Weak, TAU).unwrap();
        assert_eq!(v.holds, d.holds);
    }
}

#[test]
fn proof_chain_is_monotone() {
    for seed in 0..10 {
        let t = tuple(3, 2, 3_000 + seed);
        let chain = main_theorem_proof_chain(&t, 2.0, 1.5, TAU).unwrap();
        assert!(chain.holds, "link slacks {:?}", chain.link_slacks);
        assert_eq!(chain.steps.len(), chain.relations.len() + 1);
        assert!(chain.relations.contains(&ChainRelation::Equal));
    }
}
