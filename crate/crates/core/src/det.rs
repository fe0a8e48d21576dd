//! Quantized deterministic channel model over a single channel use.
//!
//! Inputs are integers from `{0, 1, ..., input_max}`; the receiver output is
//! a sum of ceiling-quantized scaled terms, one per transmitter. The direct
//! term is scaled by `p_bar^(1 - max(1, alpha))` and every cross term by
//! `p_bar^(alpha - max(1, alpha))`, so all scales lie in `(0, 1]` and the
//! alphabet grows as `p_bar^max(1, alpha)`. The quantizer is the ceiling
//! throughout.

use crate::channel::{ChannelBounds, ChannelMatrix};
use crate::error::{Error, Result};

/// Instance parameters for the deterministic model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetParams {
    p_bar: u64,
    alpha: f64,
    k_users: usize,
    input_max: i64,
}

impl DetParams {
    /// Requires `p_bar >= 2`, finite nonnegative `alpha` and `k_users >= 2`.
    pub fn new(p_bar: u64, alpha: f64, k_users: usize) -> Result<Self> {
        if p_bar < 2 {
            return Err(Error::InvalidPBar(p_bar));
        }
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::InvalidAlpha(alpha));
        }
        if k_users < 2 {
            return Err(Error::InvalidUserCount(k_users));
        }
        let input_max = if alpha <= 1.0 {
            p_bar as i64
        } else {
            ceil_snapped((p_bar as f64).powf(alpha))
        };
        Ok(Self {
            p_bar,
            alpha,
            k_users,
            input_max,
        })
    }

    pub fn p_bar(&self) -> u64 {
        self.p_bar
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn k_users(&self) -> usize {
        self.k_users
    }

    /// Largest admissible input symbol, `ceil(p_bar^max(1, alpha))`.
    pub fn input_max(&self) -> i64 {
        self.input_max
    }

    /// Number of symbols in the input alphabet.
    pub fn alphabet_size(&self) -> u64 {
        (self.input_max + 1) as u64
    }

    /// Scale applied to the direct term, `p_bar^(1 - max(1, alpha))`.
    pub fn direct_scale(&self) -> f64 {
        (self.p_bar as f64).powf(1.0 - self.alpha.max(1.0))
    }

    /// Scale applied to every cross term, `p_bar^(alpha - max(1, alpha))`.
    pub fn cross_scale(&self) -> f64 {
        (self.p_bar as f64).powf(self.alpha - self.alpha.max(1.0))
    }
}

/// Ceiling that first snaps values within 1e-9 of an integer, so that
/// integer powers computed through `powf` (for example 9^1.5 = 27) do not
/// round up spuriously.
fn ceil_snapped(v: f64) -> i64 {
    if (v - v.round()).abs() < 1e-9 {
        v.round() as i64
    } else {
        v.ceil() as i64
    }
}

/// Ceiling-quantized product of a scale, a gain and an integer symbol.
pub(crate) fn quantize(scale: f64, gain: f64, x: i64) -> i64 {
    (scale * gain * x as f64).ceil() as i64
}

/// One input per transmitter, a single channel use.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DetCodeword {
    x: Vec<i64>,
}

impl DetCodeword {
    /// Validates the length against `k_users` and every symbol against the
    /// alphabet.
    pub fn new(x: Vec<i64>, d: &DetParams) -> Result<Self> {
        if x.len() != d.k_users() {
            return Err(Error::CodewordLength {
                got: x.len(),
                expected: d.k_users(),
            });
        }
        for &v in &x {
            if v < 0 || v > d.input_max() {
                return Err(Error::OutOfAlphabet {
                    value: v,
                    max: d.input_max(),
                });
            }
        }
        Ok(Self { x })
    }

    pub fn symbols(&self) -> &[i64] {
        &self.x
    }
}

/// Deterministic-model output at receiver `rx`: the quantized direct term
/// plus the quantized cross terms, summed in exact integer arithmetic.
pub fn det_output(ch: &ChannelMatrix, cw: &DetCodeword, d: &DetParams, rx: usize) -> i64 {
    assert_eq!(ch.k_users(), d.k_users(), "channel size mismatch");
    assert!(rx < d.k_users(), "receiver index out of range");
    let cross = d.cross_scale();
    let direct = d.direct_scale();
    let mut y = 0i64;
    for (tx, &x) in cw.symbols().iter().enumerate() {
        let scale = if tx == rx { direct } else { cross };
        y += quantize(scale, ch.gain(rx, tx), x);
    }
    y
}

/// Proven upper bound on `|output|` over all admissible inputs and gains:
/// each quantized term is at most `scale * delta2 * input_max + 1` in
/// magnitude.
pub fn output_range(d: &DetParams, b: &ChannelBounds) -> i64 {
    let m = d.input_max() as f64;
    let km1 = (d.k_users() - 1) as f64;
    let bound =
        km1 * (b.delta2() * d.cross_scale() * m + 1.0) + (b.delta2() * d.direct_scale() * m + 1.0);
    bound.ceil() as i64
}
