//! Bit-exact regeneration and verbose evaluation of a single instance.

use meanforge_core::inequalities::{
    main_theorem_proof_chain, ChainRelation, ComparisonKind, InequalityParams, StatementId,
};
use meanforge_core::instance::generate;
use meanforge_core::sampling::{SamplerConfig, RNG_ALGORITHM_VERSION};
use serde::Serialize;

use crate::formats::{matrix_rows, reals, Real};

#[derive(Clone, Debug, PartialEq)]
pub struct ReplayRequest {
    pub statement: StatementId,
    pub dim: usize,
    pub params: InequalityParams,
    /// The instance seed as recorded in a report.
    pub seed: u64,
    /// Eigenvalue range of the originating campaign.
    pub sampler: SamplerConfig,
    pub tolerance: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LabeledMatrix {
    pub label: String,
    pub entries: Vec<Vec<[Real; 2]>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainStepOut {
    pub label: &'static str,
    pub values: Vec<Real>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainOut {
    pub steps: Vec<ChainStepOut>,
    pub relations: Vec<&'static str>,
    pub link_slacks: Vec<Real>,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LinkOut {
    pub lhs_values: Vec<Real>,
    pub rhs_values: Vec<Real>,
    pub slacks: Vec<Real>,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReplayOutput {
    pub rng_algorithm_version: &'static str,
    pub statement_id: StatementId,
    pub is_proven_statement: bool,
    pub dim: usize,
    pub m: usize,
    pub t: Real,
    pub p: Real,
    pub r: Real,
    pub seed: u64,
    pub eig_min: Real,
    pub eig_max: Real,
    pub tolerance: Real,
    pub matrices: Vec<LabeledMatrix>,
    pub comparison: ComparisonKind,
    pub lhs_values: Vec<Real>,
    pub rhs_values: Vec<Real>,
    pub lhs_spectrum: Vec<Real>,
    pub rhs_spectrum: Vec<Real>,
    pub slacks: Vec<Real>,
    pub min_slack: Real,
    pub worst_index: usize,
    pub holds: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub links: Vec<LinkOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proof_chain: Option<ChainOut>,
}

impl ReplayOutput {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("replay output serializes");
        s.push('\n');
        s
    }
}

pub fn replay(req: &ReplayRequest) -> meanforge_core::Result<ReplayOutput> {
    let inst = generate(req.statement, req.params, req.dim, req.seed, &req.sampler)?;
    let v = inst.evaluate(req.tolerance)?;
    let proof_chain = match (req.statement, inst.tuple()) {
        (StatementId::MainTheorem, Some(t)) => {
            let c = main_theorem_proof_chain(t, req.params.p, req.params.r, req.tolerance)?;
            Some(ChainOut {
                steps: c.steps.iter().map(|s| ChainStepOut { label: s.label, values: reals(&s.values) }).collect(),
                relations: c
                    .relations
                    .iter()
                    .map(|r| match r {
                        ChainRelation::LessEqual => "<=",
                        ChainRelation::Equal => "=",
                    })
                    .collect(),
                link_slacks: reals(&c.link_slacks),
                holds: c.holds,
            })
        }
        _ => None,
    };
    let p = &req.params;
    Ok(ReplayOutput {
        rng_algorithm_version: RNG_ALGORITHM_VERSION,
        statement_id: req.statement,
        is_proven_statement: req.statement.is_proven(),
        dim: req.dim,
        m: p.m,
        t: Real(p.t.value()),
        p: Real(p.p),
        r: Real(p.r),
        seed: req.seed,
        eig_min: Real(req.sampler.eig_min),
        eig_max: Real(req.sampler.eig_max),
        tolerance: Real(req.tolerance),
        matrices: inst
            .labeled_matrices()
            .into_iter()
            .map(|(label, m)| LabeledMatrix { label, entries: matrix_rows(&m) })
            .collect(),
        comparison: v.kind,
        lhs_values: reals(&v.lhs_values),
        rhs_values: reals(&v.rhs_values),
        lhs_spectrum: reals(&v.lhs_spectrum),
        rhs_spectrum: reals(&v.rhs_spectrum),
        slacks: reals(&v.slacks),
        min_slack: Real(v.min_slack()),
        worst_index: v.worst_index(),
        holds: v.holds,
        links: v
            .links
            .iter()
            .map(|l| LinkOut {
                lhs_values: reals(&l.lhs_values),
                rhs_values: reals(&l.rhs_values),
                slacks: reals(&l.slacks),
                holds: l.holds,
            })
            .collect(),
        proof_chain,
    })
}
