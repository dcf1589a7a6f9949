//! Unitarily invariant norms through singular values.
//!
//! By Fan dominance, `s(A)` weakly majorized by `s(B)` is equivalent to
//! `|||A||| <= |||B|||` for every unitarily invariant norm, so the full sweep of
//! Ky Fan norms is the complete finite test for "all norms".

use alloc::vec::Vec;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{singular_values, ComplexMatrix, SpectrumVector};
use crate::majorization::{dominates, DominanceMode, DominanceVerdict};

/// `(sum s_i^p)^{1/p}` of a spectrum; `p = inf` gives the largest value.
pub fn schatten_of_spectrum(s: &SpectrumVector, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::Domain { reason: "Schatten exponent must be at least 1", value: p });
    }
    let top = s.max();
    if p.is_infinite() || top == 0.0 {
        return Ok(top);
    }
    if p == 1.0 {
        return Ok(s.values().iter().sum());
    }
    // Factor out the largest value so that large p neither overflows nor
    // underflows.
    let sum: f64 = s.values().iter().map(|&v| Float::powf(v / top, p)).sum();
    Ok(top * Float::powf(sum, 1.0 / p))
}

pub fn ky_fan_of_spectrum(s: &SpectrumVector, k: usize) -> Result<f64> {
    if k == 0 || k > s.len() {
        return Err(Error::IndexOutOfRange { index: k, len: s.len() });
    }
    Ok(s.values()[..k].iter().sum())
}

pub fn schatten_norm(m: &ComplexMatrix, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::Domain { reason: "Schatten exponent must be at least 1", value: p });
    }
    schatten_of_spectrum(&singular_values(m)?, p)
}

pub fn ky_fan_norm(m: &ComplexMatrix, k: usize) -> Result<f64> {
    if k == 0 || k > m.dim() {
        return Err(Error::IndexOutOfRange { index: k, len: m.dim() });
    }
    ky_fan_of_spectrum(&singular_values(m)?, k)
}

pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    schatten_norm(m, 1.0)
}

/// Largest singular value; the same number as Schatten-inf and Ky Fan 1.
pub fn spectral_norm(m: &ComplexMatrix) -> Result<f64> {
    schatten_norm(m, f64::INFINITY)
}

/// Weak majorization of singular values, i.e. `|||A||| <= |||B|||` in every
/// unitarily invariant norm.
pub fn fan_dominance(a: &ComplexMatrix, b: &ComplexMatrix, tau: f64) -> Result<DominanceVerdict> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    let sa = singular_values(a)?;
    let sb = singular_values(b)?;
    dominates(sa.values(), sb.values(), DominanceMode::Weak, tau)
}

/// A unitarily invariant norm, or the whole Ky Fan family.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum NormSpec {
    Schatten {
        #[cfg_attr(feature = "serde", serde(with = "exponent"))]
        p: f64,
    },
    #[cfg_attr(feature = "serde", serde(rename = "kyfan"))]
    KyFan {
        k: usize,
    },
    Trace,
    Spectral,
    #[cfg_attr(feature = "serde", serde(rename = "kyfan_all"))]
    KyFanAll,
}

impl NormSpec {
    pub fn validate(&self, dim: usize) -> Result<()> {
        match *self {
            NormSpec::Schatten { p } if !(p >= 1.0) => Err(Error::ParamOutOfRange { name: "p", value: p }),
            NormSpec::KyFan { k } if k == 0 || k > dim => Err(Error::IndexOutOfRange { index: k, len: dim }),
            _ => Ok(()),
        }
    }

    /// One value per norm; `KyFanAll` yields the `dim` Ky Fan norms in
    /// order of `k`.
    pub fn evaluate_spectrum(&self, s: &SpectrumVector) -> Result<Vec<f64>> {
        self.validate(s.len())?;
        Ok(match *self {
            NormSpec::Schatten { p } => alloc::vec![schatten_of_spectrum(s, p)?],
            NormSpec::KyFan { k } => alloc::vec![ky_fan_of_spectrum(s, k)?],
            NormSpec::Trace => alloc::vec![schatten_of_spectrum(s, 1.0)?],
            NormSpec::Spectral => alloc::vec![s.max()],
            NormSpec::KyFanAll => s.prefix_sums(),
        })
    }

    pub fn evaluate(&self, m: &ComplexMatrix) -> Result<Vec<f64>> {
        self.evaluate_spectrum(&singular_values(m)?)
    }
}

/// JSON has no infinity; an infinite exponent is written as `"inf"`.
#[cfg(feature = "serde")]
mod exponent {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr<'a> {
        Number(f64),
        Text(&'a str),
    }

    pub fn serialize<S: Serializer>(p: &f64, s: S) -> Result<S::Ok, S::Error> {
        if p.is_infinite() && *p > 0.0 {
            Repr::Text("inf").serialize(s)
        } else {
            Repr::Number(*p).serialize(s)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Number(p) => Ok(p),
            Repr::Text("inf" | "infinity" | "Infinity") => Ok(f64::INFINITY),
            Repr::Text(other) => Err(serde::de::Error::custom(alloc::format!("unknown exponent {other:?}"))),
        }
    }
}
