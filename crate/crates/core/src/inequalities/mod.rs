//! Checkable forms of the norm inequalities, lemmas and conjectures.
//!
//! Every check builds the two sides of a statement on concrete matrices and
//! compares them index by index. Results are [`CheckVerdict`]s carrying the
//! full slack vectors, so that near-violations can be ranked rather than just
//! counted.
//!
//! Whether a statement is a theorem or an open conjecture is a static
//! property of its [`StatementId`]. Harnesses assert on the former and only
//! record the latter.

mod assembly;
mod chain;
mod checks;
mod verdict;

pub use assembly::{mean_power_sum, power_sandwich_of_sums, PowerSum};
pub use chain::{main_theorem_proof_chain, ChainRelation, ChainStep, ProofChain};
pub use checks::{
    check_block_identity, check_commuting_chain, check_conjecture, check_dinh, check_function_sum, check_main_theorem,
    check_sandwich_lemmas, check_spectral_lemmas, check_trace_theorem, FunctionShape, SpectralLemma,
    COMMUTATOR_TOLERANCE,
};
pub use verdict::{CheckVerdict, ComparisonKind};

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::PositiveDefiniteMatrix;
use crate::means::MeanWeight;

/// Tolerance under which proven statements must hold on every sample.
pub const PROVEN_TOLERANCE: f64 = 1e-8;

/// Stable, wire-visible identifiers of the checked statements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum StatementId {
    MainTheorem,
    ConjectureGeneral,
    ConjectureMSum,
    TraceTheorem,
    Dinh,
    AudenaertChain,
    BourinUchiyama,
    ConvexSum,
    BlockIdentity,
    Sandwich,
    AndoHiai,
    Weyl,
    SvProduct,
}

impl StatementId {
    pub const ALL: [StatementId; 13] = [
        StatementId::MainTheorem,
        StatementId::ConjectureGeneral,
        StatementId::ConjectureMSum,
        StatementId::TraceTheorem,
        StatementId::Dinh,
        StatementId::AudenaertChain,
        StatementId::BourinUchiyama,
        StatementId::ConvexSum,
        StatementId::BlockIdentity,
        StatementId::Sandwich,
        StatementId::AndoHiai,
        StatementId::Weyl,
        StatementId::SvProduct,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StatementId::MainTheorem => "main_theorem",
            StatementId::ConjectureGeneral => "conjecture_general",
            StatementId::ConjectureMSum => "conjecture_m_sum",
            StatementId::TraceTheorem => "trace_theorem",
            StatementId::Dinh => "dinh",
            StatementId::AudenaertChain => "audenaert_chain",
            StatementId::BourinUchiyama => "bourin_uchiyama",
            StatementId::ConvexSum => "convex_sum",
            StatementId::BlockIdentity => "block_identity",
            StatementId::Sandwich => "sandwich",
            StatementId::AndoHiai => "ando_hiai",
            StatementId::Weyl => "weyl",
            StatementId::SvProduct => "sv_product",
        }
    }

    /// False exactly for the two open conjectures.
    pub const fn is_proven(self) -> bool {
        !matches!(self, StatementId::ConjectureGeneral | StatementId::ConjectureMSum)
    }
}

impl fmt::Display for StatementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StatementId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        StatementId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or(Error::Domain { reason: "unknown statement id", value: f64::NAN })
    }
}

/// The scalars `m`, `t`, `p`, `r`. Which ranges are admissible depends on
/// the statement and is checked by each `check_*` function.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InequalityParams {
    pub m: usize,
    pub t: MeanWeight,
    pub p: f64,
    pub r: f64,
}

impl Default for InequalityParams {
    fn default() -> Self {
        InequalityParams { m: 2, t: MeanWeight::HALF, p: 1.0, r: 1.0 }
    }
}

impl InequalityParams {
    pub fn new(m: usize, t: f64, p: f64, r: f64) -> Result<Self> {
        Ok(InequalityParams { m, t: MeanWeight::new(t)?, p, r })
    }
}

pub(crate) fn require(name: &'static str, value: f64, ok: bool) -> Result<()> {
    if ok && !value.is_nan() {
        Ok(())
    } else {
        Err(Error::ParamOutOfRange { name, value })
    }
}

/// `m` pairs `(A_i, B_i)` of positive definite matrices of one dimension.
/// For `m = 2` the pairs are `(A, B)` and `(C, D)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixTuple {
    a: Vec<PositiveDefiniteMatrix>,
    b: Vec<PositiveDefiniteMatrix>,
}

impl MatrixTuple {
    pub fn new(a: Vec<PositiveDefiniteMatrix>, b: Vec<PositiveDefiniteMatrix>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch { left: a.len(), right: b.len() });
        }
        let first = a.first().ok_or(Error::EmptyTuple)?.dim();
        for m in a.iter().chain(&b) {
            if m.dim() != first {
                return Err(Error::DimensionMismatch { left: first, right: m.dim() });
            }
        }
        Ok(MatrixTuple { a, b })
    }

    pub fn from_pairs(pairs: Vec<(PositiveDefiniteMatrix, PositiveDefiniteMatrix)>) -> Result<Self> {
        let (a, b) = pairs.into_iter().unzip();
        Self::new(a, b)
    }

    pub fn m(&self) -> usize {
        self.a.len()
    }

    pub fn dim(&self) -> usize {
        self.a[0].dim()
    }

    pub fn a(&self) -> &[PositiveDefiniteMatrix] {
        &self.a
    }

    pub fn b(&self) -> &[PositiveDefiniteMatrix] {
        &self.b
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&PositiveDefiniteMatrix, &PositiveDefiniteMatrix)> {
        self.a.iter().zip(&self.b)
    }

    /// Same tuple with one matrix replaced; `second` selects the `B` side.
    pub fn with_replaced(&self, index: usize, second: bool, m: PositiveDefiniteMatrix) -> Result<Self> {
        let mut out = self.clone();
        let side = if second { &mut out.b } else { &mut out.a };
        let len = side.len();
        *side.get_mut(index).ok_or(Error::IndexOutOfRange { index, len })? = m;
        Self::new(out.a, out.b)
    }
}
