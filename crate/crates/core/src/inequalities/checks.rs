use alloc::vec::Vec;

use num_traits::Float;

use super::assembly::{mean_power_sum, power_sandwich_of_sums, powers};
use super::verdict::{CheckVerdict, ComparisonKind};
use super::{require, InequalityParams, MatrixTuple, StatementId};
use crate::error::{Error, Result};
use crate::linalg::{
    eigenvalues, hermitize, sandwich_power, singular_values, ComplexMatrix, EigenDecomposition, HermitianMatrix,
    PositiveDefiniteMatrix, CLIP_TOLERANCE,
};
use crate::majorization::sort_decreasing;
use crate::means::{t_geometric_mean, MeanWeight};

/// Commuting hypothesis: `||AB - BA||_F <= COMMUTATOR_TOLERANCE ||A||_F ||B||_F`.
pub const COMMUTATOR_TOLERANCE: f64 = 1e-10;

/// Singular values of a Hermitian matrix: sorted absolute eigenvalues.
fn hermitian_singular_values(h: &HermitianMatrix) -> Result<Vec<f64>> {
    let eig = h.eig()?;
    Ok(sort_decreasing(&eig.eigenvalues().iter().map(|v| v.abs()).collect::<Vec<_>>()))
}

fn spectrum_of(e: &EigenDecomposition) -> Result<Vec<f64>> {
    Ok(e.spectrum()?.into_values())
}

/// Both sides of the general conjecture:
/// `sum (A_i^2 #_t B_i^2)^r` and
/// `((sum A)^{(1-t)pr} (sum B)^{2tpr} (sum A)^{(1-t)pr})^{1/p}`.
fn conjecture_sides(tuple: &MatrixTuple, t: MeanWeight, p: f64, r: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let tv = t.value();
    let lhs = mean_power_sum(tuple, 2.0, t, r)?.spectrum.into_values();
    let rhs = power_sandwich_of_sums(tuple, (1.0 - tv) * p * r, 2.0 * tv * p * r, 1.0 / p)?;
    Ok((lhs, spectrum_of(&rhs)?))
}

fn tuple_params(tuple: &MatrixTuple, t: MeanWeight, p: f64, r: f64) -> InequalityParams {
    InequalityParams { m: tuple.m(), t, p, r }
}

/// `s(sum_{i=1,2} (A_i^2 # B_i^2)^r)` weakly majorized by
/// `s(((A+C)^{rp/2} (B+D)^{rp} (A+C)^{rp/2})^{1/p})`, for `p, r >= 1`.
pub fn check_main_theorem(tuple: &MatrixTuple, p: f64, r: f64, tau: f64) -> Result<CheckVerdict> {
    require("m", tuple.m() as f64, tuple.m() == 2)?;
    require("p", p, p >= 1.0)?;
    require("r", r, r >= 1.0)?;
    let (lhs, rhs) = conjecture_sides(tuple, MeanWeight::HALF, p, r)?;
    Ok(CheckVerdict::from_spectra(
        StatementId::MainTheorem,
        tuple_params(tuple, MeanWeight::HALF, p, r),
        ComparisonKind::KyFan,
        lhs,
        rhs,
        tau,
    ))
}

/// The open conjecture, for any `m`, `t` in `[0, 1]`, `p > 0`, `r >= 1`.
/// At `t = 1/2, p = r = 1` the verdict is reported under the narrower
/// `m`-sum conjecture's identifier.
pub fn check_conjecture(tuple: &MatrixTuple, params: InequalityParams, tau: f64) -> Result<CheckVerdict> {
    check_params_m(tuple, &params)?;
    require("p", params.p, params.p > 0.0 && params.p.is_finite())?;
    require("r", params.r, params.r >= 1.0 && params.r.is_finite())?;
    let (lhs, rhs) = conjecture_sides(tuple, params.t, params.p, params.r)?;
    let id = if params.t == MeanWeight::HALF && params.p == 1.0 && params.r == 1.0 {
        StatementId::ConjectureMSum
    } else {
        StatementId::ConjectureGeneral
    };
    Ok(CheckVerdict::from_spectra(id, params, ComparisonKind::KyFan, lhs, rhs, tau))
}

fn check_params_m(tuple: &MatrixTuple, params: &InequalityParams) -> Result<()> {
    if params.m != tuple.m() {
        return Err(Error::LengthMismatch { left: params.m, right: tuple.m() });
    }
    Ok(())
}

/// Trace-norm form of the conjecture at `t = 1/2`, any `m`, `p > 0`,
/// `r >= 1`.
pub fn check_trace_theorem(tuple: &MatrixTuple, p: f64, r: f64, tau: f64) -> Result<CheckVerdict> {
    require("p", p, p > 0.0 && p.is_finite())?;
    require("r", r, r >= 1.0 && r.is_finite())?;
    let (lhs, rhs) = conjecture_sides(tuple, MeanWeight::HALF, p, r)?;
    Ok(CheckVerdict::from_spectra(
        StatementId::TraceTheorem,
        tuple_params(tuple, MeanWeight::HALF, p, r),
        ComparisonKind::TraceNorm,
        lhs,
        rhs,
        tau,
    ))
}

/// `sum (A_i #_t B_i)^r` against
/// `((sum A)^{(1-t)pr/2} (sum B)^{tpr} (sum A)^{(1-t)pr/2})^{1/p}`.
pub fn check_dinh(tuple: &MatrixTuple, params: InequalityParams, tau: f64) -> Result<CheckVerdict> {
    check_params_m(tuple, &params)?;
    require("p", params.p, params.p > 0.0 && params.p.is_finite())?;
    require("r", params.r, params.r >= 1.0 && params.r.is_finite())?;
    let (t, p, r) = (params.t.value(), params.p, params.r);
    let lhs = mean_power_sum(tuple, 1.0, params.t, r)?.spectrum.into_values();
    let rhs = power_sandwich_of_sums(tuple, 0.5 * (1.0 - t) * p * r, t * p * r, 1.0 / p)?;
    Ok(CheckVerdict::from_spectra(StatementId::Dinh, params, ComparisonKind::KyFan, lhs, spectrum_of(&rhs)?, tau))
}

/// `|||sum A_i B_i||| <= |||sum (A_i^{1/2} B_i^{1/2})^2||| <=
/// |||(sum A)^{1/2} (sum B) (sum A)^{1/2}|||` for commuting pairs. The
/// returned verdict spans the whole chain; `links` holds the two steps.
pub fn check_commuting_chain(tuple: &MatrixTuple, tau: f64) -> Result<CheckVerdict> {
    let n = tuple.dim();
    let mut products = ComplexMatrix::zeros(n);
    let mut squares = ComplexMatrix::zeros(n);
    for (i, (a, b)) in tuple.pairs().enumerate() {
        let ab = a.matrix() * b.matrix();
        let ba = b.matrix() * a.matrix();
        let scale = a.matrix().frobenius_norm() * b.matrix().frobenius_norm();
        let relative = (&ab - &ba).frobenius_norm() / scale;
        if !(relative <= COMMUTATOR_TOLERANCE) {
            return Err(Error::NotCommuting { index: i, relative_commutator: relative });
        }
        let root = a.sqrt().matrix() * b.sqrt().matrix();
        products = &products + &ab;
        squares = &squares + &(&root * &root);
    }
    let left = hermitian_singular_values(&hermitize(&products)?)?;
    let middle = hermitian_singular_values(&hermitize(&squares)?)?;
    let right = spectrum_of(&power_sandwich_of_sums(tuple, 0.5, 1.0, 1.0)?)?;
    let params = tuple_params(tuple, MeanWeight::HALF, 1.0, 1.0);
    let id = StatementId::AudenaertChain;
    let first = CheckVerdict::from_spectra(id, params, ComparisonKind::KyFan, left, middle.clone(), tau);
    let second = CheckVerdict::from_spectra(id, params, ComparisonKind::KyFan, middle, right, tau);
    Ok(CheckVerdict::chained(first, second))
}

/// Direction of a function-of-sums comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum FunctionShape {
    /// Nonnegative convex `f` with `f(0) = 0`:
    /// `|||sum f(A_i)||| <= |||f(sum A_i)|||`.
    Convex,
    /// Nonnegative concave `f`: `|||f(sum A_i)||| <= |||sum f(A_i)|||`.
    Concave,
}

fn psd_function(h: &HermitianMatrix, f: &impl Fn(f64) -> f64) -> Result<HermitianMatrix> {
    let eig = h.eig()?;
    let top = eig.eigenvalues().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if let Some(&bad) = eig.eigenvalues().iter().find(|&&v| v < -CLIP_TOLERANCE * top) {
        return Err(Error::Domain { reason: "matrix is not positive semidefinite", value: bad });
    }
    Ok(eig.map(|x| f(x.max(0.0)))?.to_hermitian())
}

/// Compares `f(sum A_i)` with `sum f(A_i)` for positive semidefinite `A_i`,
/// in the direction `shape` declares.
pub fn check_function_sum(
    matrices: &[HermitianMatrix],
    f: impl Fn(f64) -> f64,
    shape: FunctionShape,
    tau: f64,
) -> Result<CheckVerdict> {
    let first = matrices.first().ok_or(Error::EmptyTuple)?;
    if shape == FunctionShape::Convex {
        let f0 = f(0.0);
        require("f(0)", f0, f0.abs() <= 1e-12)?;
    }
    let mut sum = first.clone();
    let mut sum_of_f = psd_function(first, &f)?;
    for m in &matrices[1..] {
        sum = sum.add(m)?;
        sum_of_f = sum_of_f.add(&psd_function(m, &f)?)?;
    }
    let f_of_sum = psd_function(&sum, &f)?;
    let s_sum_of_f = hermitian_singular_values(&sum_of_f)?;
    let s_f_of_sum = hermitian_singular_values(&f_of_sum)?;
    let (id, lhs, rhs) = match shape {
        FunctionShape::Convex => (StatementId::ConvexSum, s_sum_of_f, s_f_of_sum),
        FunctionShape::Concave => (StatementId::BourinUchiyama, s_f_of_sum, s_sum_of_f),
    };
    let params = InequalityParams { m: matrices.len(), ..InequalityParams::default() };
    Ok(CheckVerdict::from_spectra(id, params, ComparisonKind::KyFan, lhs, rhs, tau))
}

/// `s_i^2([[B^{1/2}, 0], [D^{1/2}, 0]] [[A^{1/2}, C^{1/2}], [0, 0]])` equals
/// `s_i((A+C)^{1/2} (B+D) (A+C)^{1/2} (+) 0)` for every `i`.
pub fn check_block_identity(
    a: &PositiveDefiniteMatrix,
    b: &PositiveDefiniteMatrix,
    c: &PositiveDefiniteMatrix,
    d: &PositiveDefiniteMatrix,
    tau: f64,
) -> Result<CheckVerdict> {
    let n = a.dim();
    for m in [b, c, d] {
        if m.dim() != n {
            return Err(Error::DimensionMismatch { left: n, right: m.dim() });
        }
    }
    let (ra, rb, rc, rd) = (a.sqrt(), b.sqrt(), c.sqrt(), d.sqrt());
    let zero = ComplexMatrix::zeros(n);
    let left = ComplexMatrix::from_blocks(rb.matrix(), &zero, rd.matrix(), &zero);
    let right = ComplexMatrix::from_blocks(ra.matrix(), rc.matrix(), &zero, &zero);
    let lhs = powers(singular_values(&(&left * &right))?.values(), 2.0);
    let inner = sandwich_power(&a.add(c)?, 0.5, &b.add(d)?, 1.0, 1.0)?;
    let mut rhs = spectrum_of(&inner)?;
    rhs.resize(2 * n, 0.0);
    let params = InequalityParams::default();
    Ok(CheckVerdict::from_spectra(StatementId::BlockIdentity, params, ComparisonKind::Identity, lhs, rhs, tau))
}

/// For `r >= 1`, `s((ABA)^{rp})` is weakly log-majorized by
/// `s((A^r B^r A^r)^p)`; for `0 < r <= 1` the relation reverses, and `r = 1`
/// is checked as an identity.
pub fn check_sandwich_lemmas(
    a: &PositiveDefiniteMatrix,
    b: &PositiveDefiniteMatrix,
    p: f64,
    r: f64,
    tau: f64,
) -> Result<CheckVerdict> {
    require("p", p, p > 0.0 && p.is_finite())?;
    require("r", r, r > 0.0 && r.is_finite())?;
    let plain = spectrum_of(&sandwich_power(a, 1.0, b, 1.0, r * p)?)?;
    let powered = spectrum_of(&sandwich_power(a, r, b, r, p)?)?;
    let (kind, lhs, rhs) = if r > 1.0 {
        (ComparisonKind::WeakLog, plain, powered)
    } else if r < 1.0 {
        (ComparisonKind::WeakLog, powered, plain)
    } else {
        (ComparisonKind::LogIdentity, plain, powered)
    };
    let params = InequalityParams { m: 1, t: MeanWeight::HALF, p, r };
    Ok(CheckVerdict::from_spectra(StatementId::Sandwich, params, kind, lhs, rhs, tau))
}

/// Inputs of the spectral lemmas.
#[derive(Clone, Copy, Debug)]
pub enum SpectralLemma<'a> {
    /// `lambda(A^r #_t B^r)` log-majorized by `lambda((A #_t B)^r)`, `r >= 1`.
    AndoHiai { a: &'a PositiveDefiniteMatrix, b: &'a PositiveDefiniteMatrix, t: MeanWeight, r: f64 },
    /// `|lambda(A)|^p` weakly majorized by `s(A)^p`, `p >= 0`.
    Weyl { a: &'a ComplexMatrix, p: f64 },
    /// `s^p(AB)` weakly majorized by `s^p(A) s^p(B)`, `p > 0`.
    SvProduct { a: &'a ComplexMatrix, b: &'a ComplexMatrix, p: f64 },
}

pub fn check_spectral_lemmas(lemma: SpectralLemma<'_>, tau: f64) -> Result<CheckVerdict> {
    match lemma {
        SpectralLemma::AndoHiai { a, b, t, r } => {
            require("r", r, r >= 1.0 && r.is_finite())?;
            let powered = t_geometric_mean(&a.power(r)?, &b.power(r)?, t)?;
            let mean = t_geometric_mean(a, b, t)?;
            let lhs = powered.eigenvalues().to_vec();
            let rhs = powers(mean.eigenvalues(), r);
            let params = InequalityParams { m: 1, t, p: 1.0, r };
            Ok(CheckVerdict::from_spectra(StatementId::AndoHiai, params, ComparisonKind::Log, lhs, rhs, tau))
        }
        SpectralLemma::Weyl { a, p } => {
            require("p", p, p >= 0.0 && p.is_finite())?;
            let moduli: Vec<f64> = eigenvalues(a)?.iter().map(|z| z.norm()).collect();
            let lhs = powers(&sort_decreasing(&moduli), p);
            let rhs = powers(singular_values(a)?.values(), p);
            let params = InequalityParams { m: 1, t: MeanWeight::HALF, p, r: 1.0 };
            Ok(CheckVerdict::from_spectra(StatementId::Weyl, params, ComparisonKind::KyFan, lhs, rhs, tau))
        }
        SpectralLemma::SvProduct { a, b, p } => {
            require("p", p, p > 0.0 && p.is_finite())?;
            if a.dim() != b.dim() {
                return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
            }
            let lhs = powers(singular_values(&(a * b))?.values(), p);
            let sa = singular_values(a)?;
            let sb = singular_values(b)?;
            let rhs =
                sa.values().iter().zip(sb.values()).map(|(&x, &y)| Float::powf(x, p) * Float::powf(y, p)).collect();
            let params = InequalityParams { m: 1, t: MeanWeight::HALF, p, r: 1.0 };
            Ok(CheckVerdict::from_spectra(StatementId::SvProduct, params, ComparisonKind::KyFan, lhs, rhs, tau))
        }
    }
}
