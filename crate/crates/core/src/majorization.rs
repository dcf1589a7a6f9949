//! Majorization, weak majorization and their logarithmic versions, with a
//! signed slack for every prefix.
//!
//! `dominates(x, y, ..)` asks whether `x` is dominated by `y`. Prefix slacks
//! are positive when the constraint holds with room to spare and negative by
//! the amount it is violated:
//!
//! * additive modes: `(sum_{i<=k} y_i - sum_{i<=k} x_i) / max(1, |sum y|)`;
//! * logarithmic modes: the difference of prefix sums of logarithms, which
//!   avoids the overflow that raw products of large spectra would hit.
//!
//! The total-sum (or total-product) condition of the strong modes replaces
//! the slack of the last prefix by `-|difference|`.

use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};

/// Relative tolerance used when a caller has no better value.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Entries below this are treated as exact zeros in the logarithmic modes.
pub const LOG_ZERO: f64 = 1e-300;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum DominanceMode {
    Weak,
    Strong,
    WeakLog,
    Log,
}

impl DominanceMode {
    pub fn is_logarithmic(self) -> bool {
        matches!(self, DominanceMode::WeakLog | DominanceMode::Log)
    }

    pub fn requires_equality(self) -> bool {
        matches!(self, DominanceMode::Strong | DominanceMode::Log)
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DominanceVerdict {
    pub holds: bool,
    pub worst_index: usize,
    pub worst_slack: f64,
    pub per_index_slacks: Vec<f64>,
}

impl DominanceVerdict {
    /// Summarises a slack vector: `holds` iff no slack is below `-tau`.
    pub fn from_slacks(per_index_slacks: Vec<f64>, tau: f64) -> Self {
        let mut worst_index = 0;
        let mut worst_slack = f64::INFINITY;
        for (i, &s) in per_index_slacks.iter().enumerate() {
            if s < worst_slack {
                worst_slack = s;
                worst_index = i;
            }
        }
        DominanceVerdict { holds: worst_slack >= -tau, worst_index, worst_slack, per_index_slacks }
    }
}

pub fn sort_decreasing(x: &[f64]) -> Vec<f64> {
    let mut v = x.to_vec();
    crate::linalg::spectrum_sort(&mut v);
    v
}

/// Prefix sums of logarithms of a decreasing nonnegative vector; once an
/// entry below [`LOG_ZERO`] appears, every later prefix is `-inf`.
pub fn log_prefix_sums(sorted: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    sorted
        .iter()
        .map(|&v| {
            acc += if v < LOG_ZERO { f64::NEG_INFINITY } else { Float::ln(v) };
            acc
        })
        .collect()
}

/// `ly - lx` with the conventions `log 0 = -inf` and `-inf - -inf = 0`.
pub fn log_difference(ly: f64, lx: f64) -> f64 {
    match (ly == f64::NEG_INFINITY, lx == f64::NEG_INFINITY) {
        (true, true) => 0.0,
        (false, true) => f64::INFINITY,
        (true, false) => f64::NEG_INFINITY,
        (false, false) => ly - lx,
    }
}

pub fn prefix_sums(sorted: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    sorted
        .iter()
        .map(|&v| {
            acc += v;
            acc
        })
        .collect()
}

/// Is `x` dominated by `y` in the given mode?
pub fn dominates(x: &[f64], y: &[f64], mode: DominanceMode, tau: f64) -> Result<DominanceVerdict> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { left: x.len(), right: y.len() });
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    if mode.is_logarithmic() {
        for (i, &v) in x.iter().chain(y).enumerate() {
            if v < 0.0 {
                return Err(Error::NegativeEntry { index: i % x.len(), value: v });
            }
        }
    }
    let xs = sort_decreasing(x);
    let ys = sort_decreasing(y);
    let n = xs.len();
    let mut slacks: Vec<f64> = if mode.is_logarithmic() {
        let lx = log_prefix_sums(&xs);
        let ly = log_prefix_sums(&ys);
        lx.iter().zip(&ly).map(|(&a, &b)| log_difference(b, a)).collect()
    } else {
        let px = prefix_sums(&xs);
        let py = prefix_sums(&ys);
        let scale = py.last().map_or(1.0, |t| t.abs().max(1.0));
        px.iter().zip(&py).map(|(a, b)| (b - a) / scale).collect()
    };
    if mode.requires_equality() && n > 0 {
        let last = slacks[n - 1];
        slacks[n - 1] = if last.is_nan() { f64::NEG_INFINITY } else { -last.abs() };
    }
    Ok(DominanceVerdict::from_slacks(slacks, tau))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    const TAU: f64 = DEFAULT_TOLERANCE;

    #[test]
    fn sorting() {
        assert_eq!(sort_decreasing(&[1.0, 3.0, 2.0]), vec![3.0, 2.0, 1.0]);
        assert_eq!(sort_decreasing(&[3.0, 2.0, 1.0]), vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn two_term_examples() {
        let x = [3.0, 1.0];
        let y = [4.0, 0.0];
        let weak = dominates(&x, &y, DominanceMode::Weak, TAU).unwrap();
        assert!(weak.holds);
        assert_eq!(weak.per_index_slacks, vec![0.25, 0.0]);
        assert!(dominates(&x, &y, DominanceMode::Strong, TAU).unwrap().holds);
        let wl = dominates(&x, &y, DominanceMode::WeakLog, TAU).unwrap();
        assert!(!wl.holds);
        assert_eq!(wl.worst_index, 1);
        assert_eq!(wl.worst_slack, f64::NEG_INFINITY);
    }

    #[test]
    fn strong_requires_equal_totals() {
        let v = dominates(&[1.0, 1.0], &[2.0, 1.0], DominanceMode::Strong, TAU).unwrap();
        assert!(!v.holds);
        assert!(dominates(&[1.0, 1.0], &[2.0, 1.0], DominanceMode::Weak, TAU).unwrap().holds);
        let l = dominates(&[2.0, 2.0], &[4.0, 1.0], DominanceMode::Log, TAU).unwrap();
        assert!(l.holds && l.worst_slack.abs() < 1e-15);
    }

    #[test]
    fn reflexive_including_zeros() {
        let x = [2.0, 0.0, 1.0];
        for mode in [DominanceMode::Weak, DominanceMode::Strong, DominanceMode::WeakLog, DominanceMode::Log] {
            let v = dominates(&x, &x, mode, TAU).unwrap();
            assert!(v.holds, "{mode:?}");
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(dominates(&[1.0], &[1.0, 2.0], DominanceMode::Weak, TAU), Err(Error::LengthMismatch { .. })));
        assert!(matches!(
            dominates(&[1.0, -1.0], &[1.0, 2.0], DominanceMode::WeakLog, TAU),
            Err(Error::NegativeEntry { index: 1, .. })
        ));
        // Signed vectors are fine in additive modes.
        assert!(dominates(&[-1.0, 0.0], &[0.0, 0.0], DominanceMode::Weak, TAU).unwrap().holds);
    }

    #[test]
    fn huge_spectra_do_not_overflow_log_modes() {
        let x = [1e200, 1e200, 1e-200];
        let y = [1e201, 1e200, 1e-201];
        let v = dominates(&x, &y, DominanceMode::Log, TAU).unwrap();
        assert!(v.holds);
        assert!(v.per_index_slacks[0] > 2.0);
    }
}
