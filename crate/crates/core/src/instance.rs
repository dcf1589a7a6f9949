//! Statement-aware instance generation and evaluation.
//!
//! A campaign cell is a statement, a dimension and one point of the
//! parameter grid. Each instance inside it is fully determined by its 64-bit
//! seed, which is what reports record for replay.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Float;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::inequalities::{
    check_block_identity, check_commuting_chain, check_conjecture, check_dinh, check_function_sum, check_main_theorem,
    check_sandwich_lemmas, check_spectral_lemmas, check_trace_theorem, CheckVerdict, FunctionShape, InequalityParams,
    MatrixTuple, SpectralLemma, StatementId,
};
use crate::linalg::{ComplexMatrix, HermitianMatrix, PositiveDefiniteMatrix};
use crate::means::MAX_CONDITION;
use crate::sampling::{random_commuting_pair, random_ginibre, random_pd, rng_from_seed, SamplerConfig};

/// Parameter values a campaign sweeps over.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct ParamGrid {
    pub t: Vec<f64>,
    pub p: Vec<f64>,
    pub r: Vec<f64>,
    pub m: Vec<usize>,
}

impl Default for ParamGrid {
    fn default() -> Self {
        ParamGrid {
            t: vec![0.0, 0.25, 0.5, 0.75, 1.0],
            p: vec![0.5, 1.0, 2.0, 3.0],
            r: vec![1.0, 1.5, 2.0, 3.0],
            m: vec![1, 2, 3, 4],
        }
    }
}

fn params(m: usize, t: f64, p: f64, r: f64) -> Option<InequalityParams> {
    InequalityParams::new(m, t, p, r).ok()
}

fn dedup_sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite grid values"));
    v.dedup();
    v
}

/// Points of `grid` inside the hypotheses of `statement`, in a fixed order.
/// Parameters a statement does not use are pinned to their defaults.
pub fn parameter_cells(statement: StatementId, grid: &ParamGrid) -> Vec<InequalityParams> {
    let finite = |v: &f64| v.is_finite();
    let ps: Vec<f64> = grid.p.iter().copied().filter(finite).collect();
    let rs: Vec<f64> = grid.r.iter().copied().filter(finite).collect();
    let ts: Vec<f64> = grid.t.iter().copied().filter(|t| (0.0..=1.0).contains(t)).collect();
    let ms: Vec<usize> = grid.m.iter().copied().filter(|&m| m >= 1).collect();
    let mut out = Vec::new();
    match statement {
        StatementId::MainTheorem => {
            for &p in ps.iter().filter(|&&p| p >= 1.0) {
                for &r in rs.iter().filter(|&&r| r >= 1.0) {
                    out.extend(params(2, 0.5, p, r));
                }
            }
        }
        StatementId::ConjectureGeneral | StatementId::Dinh => {
            for &m in &ms {
                for &t in &ts {
                    for &p in ps.iter().filter(|&&p| p > 0.0) {
                        for &r in rs.iter().filter(|&&r| r >= 1.0) {
                            // The midpoint, p = r = 1 point is the m-sum conjecture.
                            let narrow = t == 0.5 && p == 1.0 && r == 1.0;
                            if statement == StatementId::ConjectureGeneral && narrow {
                                continue;
                            }
                            out.extend(params(m, t, p, r));
                        }
                    }
                }
            }
        }
        StatementId::ConjectureMSum => {
            for &m in &ms {
                out.extend(params(m, 0.5, 1.0, 1.0));
            }
        }
        StatementId::TraceTheorem => {
            for &m in &ms {
                for &p in ps.iter().filter(|&&p| p > 0.0) {
                    for &r in rs.iter().filter(|&&r| r >= 1.0) {
                        out.extend(params(m, 0.5, p, r));
                    }
                }
            }
        }
        StatementId::AudenaertChain | StatementId::ConvexSum => {
            for &m in &ms {
                out.extend(params(m, 0.5, 1.0, 1.0));
            }
        }
        StatementId::BourinUchiyama | StatementId::BlockIdentity => out.extend(params(2, 0.5, 1.0, 1.0)),
        StatementId::Sandwich => {
            // Both directions: every r >= 1 together with its reciprocal.
            let mut all = Vec::new();
            for &r in rs.iter().filter(|&&r| r > 0.0) {
                all.push(r);
                all.push(1.0 / r);
            }
            let all = dedup_sorted(all);
            for &p in ps.iter().filter(|&&p| p > 0.0) {
                for &r in &all {
                    out.extend(params(1, 0.5, p, r));
                }
            }
        }
        StatementId::AndoHiai => {
            for &t in &ts {
                for &r in rs.iter().filter(|&&r| r >= 1.0) {
                    out.extend(params(1, t, 1.0, r));
                }
            }
        }
        StatementId::Weyl => {
            for &p in ps.iter().filter(|&&p| p >= 0.0) {
                out.extend(params(1, 0.5, p, 1.0));
            }
        }
        StatementId::SvProduct => {
            for &p in ps.iter().filter(|&&p| p > 0.0) {
                out.extend(params(1, 0.5, p, 1.0));
            }
        }
    }
    out
}

/// Power applied to sampled matrices before they reach a mean, which is what
/// the mean's conditioning guard sees.
fn mean_input_power(statement: StatementId, params: &InequalityParams) -> Option<f64> {
    match statement {
        StatementId::MainTheorem
        | StatementId::ConjectureGeneral
        | StatementId::ConjectureMSum
        | StatementId::TraceTheorem => Some(2.0),
        StatementId::Dinh => Some(1.0),
        StatementId::AndoHiai => Some(params.r),
        _ => None,
    }
}

/// The sampler used for one cell: `base` with the instance's dimension and
/// seed, and with the eigenvalue range narrowed (about its geometric centre)
/// when powers taken before a mean would otherwise exceed the mean's
/// conditioning guard.
pub fn sampler_for(
    statement: StatementId,
    params: &InequalityParams,
    dim: usize,
    seed: u64,
    base: &SamplerConfig,
) -> SamplerConfig {
    let mut config = SamplerConfig { dim, seed, ..base.clone() };
    if let Some(e) = mean_input_power(statement, params) {
        let ratio = config.eig_max / config.eig_min;
        let cap = Float::powf(MAX_CONDITION, 1.0 / e) / (1.0 + 1e-6);
        if ratio > cap {
            let centre = Float::sqrt(config.eig_min * config.eig_max);
            let half = Float::sqrt(cap);
            config.eig_min = centre / half;
            config.eig_max = centre * half;
        }
    }
    config
}

/// Matrices of one instance, shaped by its statement.
#[derive(Clone, Debug, PartialEq)]
pub enum InstanceData {
    /// Pairs `(A_i, B_i)`.
    Tuple(MatrixTuple),
    /// Positive semidefinite summands of a function-of-sums comparison.
    Summands(Vec<HermitianMatrix>),
    /// `(A, B, C, D)`.
    Quadruple(Vec<PositiveDefiniteMatrix>),
    /// A single positive definite pair.
    Pair(PositiveDefiniteMatrix, PositiveDefiniteMatrix),
    /// Arbitrary square matrices.
    General(Vec<ComplexMatrix>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub statement: StatementId,
    pub dim: usize,
    pub params: InequalityParams,
    pub seed: u64,
    pub data: InstanceData,
}

/// Regenerates the instance with the given seed; bit-identical for equal
/// arguments.
pub fn generate(
    statement: StatementId,
    params: InequalityParams,
    dim: usize,
    seed: u64,
    base: &SamplerConfig,
) -> Result<Instance> {
    let config = sampler_for(statement, &params, dim, seed, base);
    config.validate()?;
    let mut rng = rng_from_seed(seed);
    let rng = &mut rng;
    let data = match statement {
        StatementId::MainTheorem
        | StatementId::ConjectureGeneral
        | StatementId::ConjectureMSum
        | StatementId::TraceTheorem
        | StatementId::Dinh => {
            let mut pairs = Vec::with_capacity(params.m);
            for _ in 0..params.m {
                let a = random_pd(&config, rng)?;
                let b = random_pd(&config, rng)?;
                pairs.push((a, b));
            }
            InstanceData::Tuple(MatrixTuple::from_pairs(pairs)?)
        }
        StatementId::AudenaertChain => {
            let pairs = (0..params.m).map(|_| random_commuting_pair(&config, rng)).collect::<Result<Vec<_>>>()?;
            InstanceData::Tuple(MatrixTuple::from_pairs(pairs)?)
        }
        StatementId::BourinUchiyama | StatementId::ConvexSum => {
            let ms = (0..params.m)
                .map(|_| random_pd(&config, rng).map(|a| a.hermitian().clone()))
                .collect::<Result<Vec<_>>>()?;
            InstanceData::Summands(ms)
        }
        StatementId::BlockIdentity => {
            InstanceData::Quadruple((0..4).map(|_| random_pd(&config, rng)).collect::<Result<Vec<_>>>()?)
        }
        StatementId::Sandwich | StatementId::AndoHiai => {
            let a = random_pd(&config, rng)?;
            let b = random_pd(&config, rng)?;
            InstanceData::Pair(a, b)
        }
        StatementId::Weyl => InstanceData::General(vec![random_ginibre(dim, rng)]),
        StatementId::SvProduct => InstanceData::General(vec![random_ginibre(dim, rng), random_ginibre(dim, rng)]),
    };
    Ok(Instance { statement, dim, params, seed, data })
}

fn mismatch() -> crate::error::Error {
    crate::error::Error::NumericalFailure("instance data does not fit its statement")
}

impl Instance {
    /// Checks the instance's statement on its data.
    pub fn evaluate(&self, tau: f64) -> Result<CheckVerdict> {
        let p = &self.params;
        match (&self.data, self.statement) {
            (InstanceData::Tuple(t), StatementId::MainTheorem) => check_main_theorem(t, p.p, p.r, tau),
            (InstanceData::Tuple(t), StatementId::ConjectureGeneral | StatementId::ConjectureMSum) => {
                check_conjecture(t, *p, tau)
            }
            (InstanceData::Tuple(t), StatementId::TraceTheorem) => check_trace_theorem(t, p.p, p.r, tau),
            (InstanceData::Tuple(t), StatementId::Dinh) => check_dinh(t, *p, tau),
            (InstanceData::Tuple(t), StatementId::AudenaertChain) => check_commuting_chain(t, tau),
            (InstanceData::Summands(ms), StatementId::BourinUchiyama) => {
                check_function_sum(ms, Float::sqrt, FunctionShape::Concave, tau)
            }
            (InstanceData::Summands(ms), StatementId::ConvexSum) => {
                check_function_sum(ms, |x| x * x, FunctionShape::Convex, tau)
            }
            (InstanceData::Quadruple(q), StatementId::BlockIdentity) if q.len() == 4 => {
                check_block_identity(&q[0], &q[1], &q[2], &q[3], tau)
            }
            (InstanceData::Pair(a, b), StatementId::Sandwich) => check_sandwich_lemmas(a, b, p.p, p.r, tau),
            (InstanceData::Pair(a, b), StatementId::AndoHiai) => {
                check_spectral_lemmas(SpectralLemma::AndoHiai { a, b, t: p.t, r: p.r }, tau)
            }
            (InstanceData::General(g), StatementId::Weyl) if g.len() == 1 => {
                check_spectral_lemmas(SpectralLemma::Weyl { a: &g[0], p: p.p }, tau)
            }
            (InstanceData::General(g), StatementId::SvProduct) if g.len() == 2 => {
                check_spectral_lemmas(SpectralLemma::SvProduct { a: &g[0], b: &g[1], p: p.p }, tau)
            }
            _ => Err(mismatch()),
        }
    }

    /// Every input matrix with a short label, in generation order.
    pub fn labeled_matrices(&self) -> Vec<(String, ComplexMatrix)> {
        match &self.data {
            InstanceData::Tuple(t) => t
                .pairs()
                .enumerate()
                .flat_map(|(i, (a, b))| {
                    [(format!("A{}", i + 1), a.matrix().clone()), (format!("B{}", i + 1), b.matrix().clone())]
                })
                .collect(),
            InstanceData::Summands(ms) => {
                ms.iter().enumerate().map(|(i, m)| (format!("A{}", i + 1), m.matrix().clone())).collect()
            }
            InstanceData::Quadruple(q) => {
                ["A", "B", "C", "D"].iter().zip(q).map(|(l, m)| (String::from(*l), m.matrix().clone())).collect()
            }
            InstanceData::Pair(a, b) => {
                vec![(String::from("A"), a.matrix().clone()), (String::from("B"), b.matrix().clone())]
            }
            InstanceData::General(g) => g.iter().enumerate().map(|(i, m)| (format!("M{}", i + 1), m.clone())).collect(),
        }
    }

    pub fn tuple(&self) -> Option<&MatrixTuple> {
        match &self.data {
            InstanceData::Tuple(t) => Some(t),
            _ => None,
        }
    }

    pub fn with_tuple(&self, tuple: MatrixTuple) -> Instance {
        Instance { data: InstanceData::Tuple(tuple), ..self.clone() }
    }
}
