use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Finite nonnegative values in decreasing order: singular values, or the
/// eigenvalues of a positive semidefinite matrix.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpectrumVector {
    values: Vec<f64>,
}

impl SpectrumVector {
    /// Accepts values that are already sorted.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite);
            }
            if v < 0.0 {
                return Err(Error::NegativeEntry { index: i, value: v });
            }
        }
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain { reason: "spectrum is not in decreasing order", value: 0.0 });
        }
        Ok(SpectrumVector { values })
    }

    /// Sorts (stably) and validates.
    pub fn from_unsorted(mut values: Vec<f64>) -> Result<Self> {
        sort_desc(&mut values);
        Self::new(values)
    }

    /// Eigenvalues of a PSD matrix may come back as tiny negatives from
    /// roundoff; values down to `-CLIP_TOLERANCE * max` are set to zero.
    pub fn from_psd_eigenvalues(mut values: Vec<f64>) -> Result<Self> {
        let top = values.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
        for (i, v) in values.iter_mut().enumerate() {
            if *v < 0.0 {
                if *v >= -super::CLIP_TOLERANCE * top {
                    *v = 0.0;
                } else {
                    return Err(Error::NegativeEntry { index: i, value: *v });
                }
            }
        }
        Self::from_unsorted(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest value, or zero for the empty spectrum.
    pub fn max(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    /// Partial sums `sum_{i<=k} values[i]` for every k.
    pub fn prefix_sums(&self) -> Vec<f64> {
        let mut acc = 0.0;
        self.values
            .iter()
            .map(|v| {
                acc += v;
                acc
            })
            .collect()
    }

    /// Multiset union, kept decreasing.
    pub fn merge(&self, other: &Self) -> Self {
        let mut values = Vec::with_capacity(self.len() + other.len());
        values.extend_from_slice(&self.values);
        values.extend_from_slice(&other.values);
        sort_desc(&mut values);
        SpectrumVector { values }
    }

    /// Entrywise `x -> x^p`; order is preserved for `p >= 0`.
    pub fn powf(&self, p: f64) -> Self {
        use num_traits::Float;
        assert!(p >= 0.0, "negative powers reverse the order");
        SpectrumVector { values: self.values.iter().map(|&v| Float::powf(v, p)).collect() }
    }
}

/// Stable decreasing sort. NaNs are not expected here.
pub(crate) fn sort_desc(values: &mut [f64]) {
    values.sort_by(|a, b| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal));
}

/// Permutation that sorts `values` decreasingly, ties in original order.
pub(crate) fn decreasing_order(values: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).unwrap_or(core::cmp::Ordering::Equal));
    idx
}
