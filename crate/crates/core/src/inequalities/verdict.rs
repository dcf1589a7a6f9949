use alloc::vec::Vec;

use super::{InequalityParams, StatementId};
use crate::majorization::{log_difference, log_prefix_sums, prefix_sums};

/// How the two sides of a statement are compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ComparisonKind {
    /// Values are Ky Fan norms (prefix sums of the spectra); slack
    /// `(rhs_k - lhs_k) / max(1, rhs_k)`.
    KyFan,
    /// A single trace-norm value on each side, same slack formula.
    TraceNorm,
    /// Values are prefix sums of logarithms; slack `rhs_k - lhs_k`.
    WeakLog,
    /// As `WeakLog`, with the total required to agree.
    Log,
    /// Values are the spectra themselves and must agree entry by entry;
    /// slack `-|rhs_i - lhs_i| / max(1, |lhs_i|, |rhs_i|)`.
    Identity,
    /// Log prefix sums that must agree (two-sided).
    LogIdentity,
}

/// Outcome of checking one statement on one instance.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CheckVerdict {
    pub statement_id: StatementId,
    pub params: InequalityParams,
    pub kind: ComparisonKind,
    pub lhs_values: Vec<f64>,
    pub rhs_values: Vec<f64>,
    /// Decreasing spectra the values were built from.
    pub lhs_spectrum: Vec<f64>,
    pub rhs_spectrum: Vec<f64>,
    pub slacks: Vec<f64>,
    pub holds: bool,
    pub is_proven_statement: bool,
    pub tolerance: f64,
    /// Constituent verdicts for chained statements (empty otherwise).
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Vec::is_empty"))]
    pub links: Vec<CheckVerdict>,
}

fn relative_identity_slack(l: f64, r: f64) -> f64 {
    if l == r {
        return 0.0;
    }
    -(r - l).abs() / 1f64.max(l.abs()).max(r.abs())
}

impl CheckVerdict {
    /// Compares two decreasing spectra according to `kind`.
    pub fn from_spectra(
        statement_id: StatementId,
        params: InequalityParams,
        kind: ComparisonKind,
        lhs_spectrum: Vec<f64>,
        rhs_spectrum: Vec<f64>,
        tolerance: f64,
    ) -> Self {
        debug_assert_eq!(lhs_spectrum.len(), rhs_spectrum.len());
        let (lhs_values, rhs_values, slacks) = match kind {
            ComparisonKind::KyFan | ComparisonKind::TraceNorm => {
                let mut l = prefix_sums(&lhs_spectrum);
                let mut r = prefix_sums(&rhs_spectrum);
                if kind == ComparisonKind::TraceNorm {
                    l = l.last().copied().into_iter().collect();
                    r = r.last().copied().into_iter().collect();
                }
                let s = l.iter().zip(&r).map(|(&a, &b)| (b - a) / b.max(1.0)).collect();
                (l, r, s)
            }
            ComparisonKind::WeakLog | ComparisonKind::Log => {
                let l = log_prefix_sums(&lhs_spectrum);
                let r = log_prefix_sums(&rhs_spectrum);
                let mut s: Vec<f64> = l.iter().zip(&r).map(|(&a, &b)| log_difference(b, a)).collect();
                if kind == ComparisonKind::Log {
                    if let Some(last) = s.last_mut() {
                        *last = -last.abs();
                    }
                }
                (l, r, s)
            }
            ComparisonKind::Identity => {
                let s = lhs_spectrum.iter().zip(&rhs_spectrum).map(|(&a, &b)| relative_identity_slack(a, b)).collect();
                (lhs_spectrum.clone(), rhs_spectrum.clone(), s)
            }
            ComparisonKind::LogIdentity => {
                let l = log_prefix_sums(&lhs_spectrum);
                let r = log_prefix_sums(&rhs_spectrum);
                let s = l
                    .iter()
                    .zip(&r)
                    .map(|(&a, &b)| {
                        let d = log_difference(b, a);
                        if d == 0.0 {
                            0.0
                        } else if d.is_infinite() {
                            f64::NEG_INFINITY
                        } else {
                            relative_identity_slack(a, b)
                        }
                    })
                    .collect();
                (l, r, s)
            }
        };
        Self::from_values(
            statement_id,
            params,
            kind,
            lhs_values,
            rhs_values,
            lhs_spectrum,
            rhs_spectrum,
            slacks,
            tolerance,
        )
    }

    #[allow(clippy::too_many_arguments)]
    fn from_values(
        statement_id: StatementId,
        params: InequalityParams,
        kind: ComparisonKind,
        lhs_values: Vec<f64>,
        rhs_values: Vec<f64>,
        lhs_spectrum: Vec<f64>,
        rhs_spectrum: Vec<f64>,
        slacks: Vec<f64>,
        tolerance: f64,
    ) -> Self {
        let holds = slacks.iter().all(|&s| s >= -tolerance);
        CheckVerdict {
            statement_id,
            params,
            kind,
            lhs_values,
            rhs_values,
            lhs_spectrum,
            rhs_spectrum,
            slacks,
            holds,
            is_proven_statement: statement_id.is_proven(),
            tolerance,
            links: Vec::new(),
        }
    }

    /// A chain `x <= y <= z` reported as one verdict: values are the outer
    /// ends, each slack is the smaller of the two links' slacks.
    pub(crate) fn chained(first: CheckVerdict, second: CheckVerdict) -> Self {
        let slacks = first.slacks.iter().zip(&second.slacks).map(|(a, b)| a.min(*b)).collect();
        let mut v = Self::from_values(
            first.statement_id,
            first.params,
            first.kind,
            first.lhs_values.clone(),
            second.rhs_values.clone(),
            first.lhs_spectrum.clone(),
            second.rhs_spectrum.clone(),
            slacks,
            first.tolerance,
        );
        v.links = alloc::vec![first, second];
        v
    }

    /// Smallest slack (`+inf` for an empty comparison).
    pub fn min_slack(&self) -> f64 {
        self.slacks.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Index of the smallest slack, first one on ties.
    pub fn worst_index(&self) -> usize {
        let mut best = 0;
        for (i, &s) in self.slacks.iter().enumerate() {
            if s < self.slacks[best] {
                best = i;
            }
        }
        best
    }

    /// Largest `|slack|` among indices; meaningful for identity checks.
    pub fn max_deviation(&self) -> f64 {
        self.slacks.iter().fold(0.0f64, |m, s| m.max(s.abs()))
    }
}
