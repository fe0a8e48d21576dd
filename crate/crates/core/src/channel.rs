//! Bounded-density channel gains and seeded draws.
//!
//! Gains have their magnitude bounded away from zero and infinity and follow
//! a law whose density is bounded by a finite constant. The default draw is
//! magnitude-uniform with an independent fair sign; a triangular-magnitude
//! alternative exists for density-swap experiments.

use crate::error::{Error, Result};
use crate::gdof::SystemParams;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Magnitude bounds and the density bound of the admissible gain laws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelBounds {
    delta1: f64,
    delta2: f64,
    f_max: f64,
}

impl ChannelBounds {
    /// Bounds for the default magnitude-uniform law. Requires
    /// `0 < delta1 <= delta2 < inf`. On a nondegenerate interval the density
    /// bound is `1/(delta2 - delta1)`; a degenerate interval carries an
    /// infinite bound and is rejected by operations that need a finite one.
    pub fn new(delta1: f64, delta2: f64) -> Result<Self> {
        if !(delta1.is_finite() && delta2.is_finite()) || delta1 <= 0.0 || delta2 < delta1 {
            return Err(Error::InvalidBounds { delta1, delta2 });
        }
        let f_max = if delta2 > delta1 {
            1.0 / (delta2 - delta1)
        } else {
            f64::INFINITY
        };
        Ok(Self {
            delta1,
            delta2,
            f_max,
        })
    }

    /// Bounds with an explicit density bound, for laws other than the
    /// default.
    pub fn with_f_max(delta1: f64, delta2: f64, f_max: f64) -> Result<Self> {
        let mut b = Self::new(delta1, delta2)?;
        if !f_max.is_finite() || f_max <= 0.0 {
            return Err(Error::InvalidDensityBound(f_max));
        }
        b.f_max = f_max;
        Ok(b)
    }

    pub fn delta1(&self) -> f64 {
        self.delta1
    }

    pub fn delta2(&self) -> f64 {
        self.delta2
    }

    pub fn f_max(&self) -> f64 {
        self.f_max
    }
}

/// Gain magnitude law on `[delta1, delta2]`; the sign is always an
/// independent fair coin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GainLaw {
    /// Uniform magnitude; density bound `1/(delta2 - delta1)`.
    Uniform,
    /// Symmetric triangular magnitude; density bound `2/(delta2 - delta1)`.
    Triangular,
}

impl GainLaw {
    /// Density bound of this law on the given interval; infinite when the
    /// interval is degenerate.
    pub fn f_max(&self, b: &ChannelBounds) -> f64 {
        let width = b.delta2() - b.delta1();
        if width <= 0.0 {
            return f64::INFINITY;
        }
        match self {
            GainLaw::Uniform => 1.0 / width,
            GainLaw::Triangular => 2.0 / width,
        }
    }

    /// One signed gain. Consumes a fixed number of uniforms per law so that
    /// draws are reproducible across call sites.
    pub fn sample_gain<R: Rng>(&self, b: &ChannelBounds, rng: &mut R) -> f64 {
        let width = b.delta2() - b.delta1();
        let magnitude = match self {
            GainLaw::Uniform => b.delta1() + width * rng.gen::<f64>(),
            GainLaw::Triangular => {
                b.delta1() + width * (rng.gen::<f64>() + rng.gen::<f64>()) / 2.0
            }
        };
        if rng.gen::<bool>() {
            magnitude
        } else {
            -magnitude
        }
    }
}

/// One realization of the K x K fading gains; row = receiver, column =
/// transmitter. Exponent scaling by powers of P happens inside SINR and
/// quantizer computations, never here.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelMatrix {
    k_users: usize,
    gains: Vec<f64>,
}

impl ChannelMatrix {
    /// Matrix with every entry equal to `gain`; handy for closed-form
    /// cross-checks.
    pub fn constant(k_users: usize, gain: f64) -> Self {
        Self {
            k_users,
            gains: vec![gain; k_users * k_users],
        }
    }

    /// Builds a matrix from receiver-major rows. Rows must form a square
    /// matrix of side >= 2.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let k = rows.len();
        if k < 2 || rows.iter().any(|r| r.len() != k) {
            return Err(Error::InvalidUserCount(k));
        }
        Ok(Self {
            k_users: k,
            gains: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn k_users(&self) -> usize {
        self.k_users
    }

    /// Gain from transmitter `tx` to receiver `rx`.
    pub fn gain(&self, rx: usize, tx: usize) -> f64 {
        self.gains[rx * self.k_users + tx]
    }
}

/// Draws one channel realization with the default magnitude-uniform law.
///
/// Entries are drawn independently in receiver-major order, magnitude first
/// and then sign, so a given seed always produces the same matrix.
pub fn draw_channel(p: &SystemParams, b: &ChannelBounds, seed: u64) -> ChannelMatrix {
    draw_channel_with_law(p, b, GainLaw::Uniform, seed)
}

/// Seeded draw under an explicit magnitude law.
pub fn draw_channel_with_law(
    p: &SystemParams,
    b: &ChannelBounds,
    law: GainLaw,
    seed: u64,
) -> ChannelMatrix {
    let k = p.k_users();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gains = (0..k * k).map(|_| law.sample_gain(b, &mut rng)).collect();
    ChannelMatrix { k_users: k, gains }
}

/// Stable per-trial seed derivation: a splitmix64 finalizer over the base
/// seed and the trial index. Identical inputs give identical streams on
/// every platform.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
