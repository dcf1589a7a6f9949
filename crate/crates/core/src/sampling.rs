//! Seeded generation of Haar unitaries, positive definite matrices and
//! commuting pairs.
//!
//! Every instance of a campaign gets its own generator, seeded from
//! [`derive_instance_seed`], so results never depend on how instances are
//! scheduled across threads.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::Float;
use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, PositiveDefiniteMatrix, C64};

/// Identifies the generator and the transforms layered on top of it. Bump
/// whenever any sampled value could change for a fixed seed.
pub const RNG_ALGORITHM_VERSION: &str = "chacha20/seed_from_u64+splitmix64-instance+box-muller/v1";

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
const MAX_REDRAWS: usize = 3;

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct SamplerConfig {
    pub dim: usize,
    pub eig_min: f64,
    pub eig_max: f64,
    pub seed: u64,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig { dim: 4, eig_min: 1e-3, eig_max: 1e3, seed: 42 }
    }
}

impl SamplerConfig {
    pub fn new(dim: usize, seed: u64) -> Self {
        SamplerConfig { dim, seed, ..Self::default() }
    }

    pub fn with_range(mut self, eig_min: f64, eig_max: f64) -> Self {
        self.eig_min = eig_min;
        self.eig_max = eig_max;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::ParamOutOfRange { name: "dim", value: 0.0 });
        }
        if !(self.eig_min > 0.0) || !self.eig_min.is_finite() {
            return Err(Error::ParamOutOfRange { name: "eig_min", value: self.eig_min });
        }
        if !(self.eig_max >= self.eig_min) || !self.eig_max.is_finite() {
            return Err(Error::ParamOutOfRange { name: "eig_max", value: self.eig_max });
        }
        Ok(())
    }

    /// Generator for this configuration's own seed.
    pub fn rng(&self) -> ChaCha20Rng {
        rng_from_seed(self.seed)
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Splitmix64 finaliser.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of instance `index` in the campaign seeded by `campaign_seed`.
///
/// For a fixed campaign seed this is a bijection of the index (and vice
/// versa), so distinct instances can never share a stream.
pub fn derive_instance_seed(campaign_seed: u64, instance_index: u64) -> u64 {
    mix64(campaign_seed ^ instance_index.wrapping_mul(GOLDEN_GAMMA))
}

/// Uniform on `[0, 1)` with 53 random bits.
pub fn uniform<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Standard complex Gaussian: real and imaginary parts independent with
/// variance 1/2 each.
pub fn complex_gaussian<R: RngCore + ?Sized>(rng: &mut R) -> C64 {
    let u1 = 1.0 - uniform(rng);
    let u2 = uniform(rng);
    let radius = Float::sqrt(-Float::ln(u1));
    let angle = 2.0 * PI * u2;
    C64::new(radius * Float::cos(angle), radius * Float::sin(angle))
}

/// Matrix of independent standard complex Gaussians.
pub fn random_ginibre<R: RngCore + ?Sized>(dim: usize, rng: &mut R) -> ComplexMatrix {
    let data: Vec<C64> = (0..dim * dim).map(|_| complex_gaussian(rng)).collect();
    ComplexMatrix::new(dim, data).expect("gaussian draws are finite")
}

/// Gram–Schmidt with re-orthogonalisation on the columns; `None` if some
/// column is numerically dependent on the earlier ones.
fn orthonormal_columns(z: &ComplexMatrix) -> Option<ComplexMatrix> {
    let n = z.dim();
    let mut q: Vec<Vec<C64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = z.column(j);
        let original = Float::sqrt(v.iter().map(|x| x.norm_sqr()).sum::<f64>());
        for _ in 0..2 {
            for prev in &q {
                let dot: C64 = prev.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, pi) in v.iter_mut().zip(prev) {
                    *vi -= dot * pi;
                }
            }
        }
        let norm = Float::sqrt(v.iter().map(|x| x.norm_sqr()).sum::<f64>());
        if !(norm > 1e-10 * original) {
            return None;
        }
        // Dividing by the (positive) norm is what makes the triangular
        // factor's diagonal positive, and the distribution Haar.
        for vi in v.iter_mut() {
            *vi /= norm;
        }
        q.push(v);
    }
    Some(ComplexMatrix::from_fn(n, |i, j| q[j][i]))
}

/// Haar-distributed unitary.
pub fn random_unitary<R: RngCore + ?Sized>(dim: usize, rng: &mut R) -> Result<ComplexMatrix> {
    if dim == 0 {
        return Err(Error::ParamOutOfRange { name: "dim", value: 0.0 });
    }
    for _ in 0..=MAX_REDRAWS {
        if let Some(q) = orthonormal_columns(&random_ginibre(dim, rng)) {
            return Ok(q);
        }
    }
    Err(Error::NumericalFailure("degenerate Gaussian draws for a unitary"))
}

fn log_uniform_spectrum<R: RngCore + ?Sized>(config: &SamplerConfig, rng: &mut R) -> Vec<f64> {
    let (lo, hi) = (Float::ln(config.eig_min), Float::ln(config.eig_max));
    let mut values: Vec<f64> = (0..config.dim)
        .map(|_| Float::exp(lo + (hi - lo) * uniform(rng)).clamp(config.eig_min, config.eig_max))
        .collect();
    values.sort_by(|a, b| b.partial_cmp(a).expect("finite draws"));
    values
}

/// `Q diag(lambda) Q^*` with `Q` Haar and `lambda` log-uniform on
/// `[eig_min, eig_max]`.
pub fn random_pd<R: RngCore + ?Sized>(config: &SamplerConfig, rng: &mut R) -> Result<PositiveDefiniteMatrix> {
    config.validate()?;
    let q = random_unitary(config.dim, rng)?;
    let spectrum = log_uniform_spectrum(config, rng);
    PositiveDefiniteMatrix::from_parts(spectrum, q)
}

/// Two positive definite matrices sharing a Haar eigenbasis, with
/// independent spectra.
pub fn random_commuting_pair<R: RngCore + ?Sized>(
    config: &SamplerConfig,
    rng: &mut R,
) -> Result<(PositiveDefiniteMatrix, PositiveDefiniteMatrix)> {
    config.validate()?;
    let q = random_unitary(config.dim, rng)?;
    let first = log_uniform_spectrum(config, rng);
    let second = log_uniform_spectrum(config, rng);
    // Both spectra are sorted, so the eigenvectors pair up in the same order
    // and the shared basis can be reused as-is; the pairing of eigenvalues
    // is then randomised by a permutation of the second spectrum.
    let mut perm: Vec<usize> = (0..config.dim).collect();
    for i in (1..perm.len()).rev() {
        let j = (uniform(rng) * (i + 1) as f64) as usize;
        perm.swap(i, j.min(i));
    }
    let second_basis = ComplexMatrix::from_fn(config.dim, |i, j| q[(i, perm[j])]);
    Ok((PositiveDefiniteMatrix::from_parts(first, q)?, PositiveDefiniteMatrix::from_parts(second, second_basis)?))
}
