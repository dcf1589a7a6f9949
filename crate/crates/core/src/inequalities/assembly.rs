//! The two shapes every mean-versus-sandwich statement is built from. Each
//! statement that compares them goes through these routines, so overlapping
//! statements see bit-identical intermediates.

use alloc::vec::Vec;

use num_traits::Float;

use super::MatrixTuple;
use crate::error::Result;
use crate::linalg::{sandwich_power, EigenDecomposition, HermitianMatrix, PositiveDefiniteMatrix, SpectrumVector};
use crate::means::{t_geometric_mean, MeanWeight};

/// `sum_i (A_i^e #_t B_i^e)^r` together with its spectrum.
pub struct PowerSum {
    pub matrix: HermitianMatrix,
    pub spectrum: SpectrumVector,
}

/// `sum_i (A_i^e #_t B_i^e)^r` where `e` is the power applied to every input
/// before the mean (`e = 2` for the conjectures and the main theorem, `e = 1`
/// for the weighted-mean inequality).
pub fn mean_power_sum(tuple: &MatrixTuple, e: f64, t: MeanWeight, r: f64) -> Result<PowerSum> {
    let mut terms: Vec<EigenDecomposition> = Vec::with_capacity(tuple.m());
    for (a, b) in tuple.pairs() {
        let mean = if e == 1.0 { t_geometric_mean(a, b, t)? } else { t_geometric_mean(&a.power(e)?, &b.power(e)?, t)? };
        terms.push(mean.power_eigen(r));
    }
    if terms.len() == 1 {
        let term = terms.pop().expect("one term");
        return Ok(PowerSum { matrix: term.to_hermitian(), spectrum: term.spectrum()? });
    }
    let mut total = terms[0].to_hermitian();
    for term in &terms[1..] {
        total = total.add(&term.to_hermitian())?;
    }
    let spectrum = total.eig()?.spectrum()?;
    Ok(PowerSum { matrix: total, spectrum })
}

/// `((sum A_i)^alpha (sum B_i)^beta (sum A_i)^alpha)^gamma`, decomposed.
pub fn power_sandwich_of_sums(tuple: &MatrixTuple, alpha: f64, beta: f64, gamma: f64) -> Result<EigenDecomposition> {
    let sa = PositiveDefiniteMatrix::sum(tuple.a())?;
    let sb = PositiveDefiniteMatrix::sum(tuple.b())?;
    sandwich_power(&sa, alpha, &sb, beta, gamma)
}

/// Entrywise `x^r` of a decreasing nonnegative vector.
pub(crate) fn powers(values: &[f64], r: f64) -> Vec<f64> {
    values.iter().map(|&v| Float::powf(v, r)).collect()
}
