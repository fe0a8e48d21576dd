//! Finite-SNR evaluation of the layered achievability schemes.
//!
//! Each message splits into a private layer, decoded only by its own
//! receiver and treated as noise elsewhere, and a public layer decoded by
//! every receiver. Decodability is asserted through finite-P Gaussian
//! capacity inequalities — residual interference counts as Gaussian noise at
//! its exact power — rather than simulated codewords, which keeps every run
//! deterministic. Rates are measured in bits per real channel use against
//! the reference `C_o(P) = (1/2) log2 P`.
//!
//! All power bookkeeping is done in the log domain so that no intermediate
//! value overflows even for very large strength exponents.

use crate::channel::{derive_seed, draw_channel, ChannelBounds, ChannelMatrix};
use crate::error::{Error, Result};
use crate::gdof::{classify_regime, Regime, SystemParams};
use crate::stats::{mean, population_std};
use rayon::prelude::*;
use std::f64::consts::LOG2_10;

/// Per-regime power split and per-layer GDoF rate targets.
///
/// The private layer, when present, transmits at power `P^(-alpha)`; the
/// public layer takes the remaining power (all of it when there is no
/// private layer). The two layer targets always sum to the finite-precision
/// GDoF value of the regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LayeredScheme {
    pub regime: Regime,
    /// Per-user GDoF target of the private layer.
    pub private_gdof: f64,
    /// Per-user GDoF target of the public layer.
    pub public_gdof: f64,
    /// Private transmit power is `P^private_power_exponent`.
    pub private_power_exponent: f64,
}

impl LayeredScheme {
    pub fn has_private(&self) -> bool {
        !matches!(self.regime, Regime::Strong | Regime::VeryStrong)
    }

    pub fn has_public(&self) -> bool {
        !matches!(self.regime, Regime::VeryWeak)
    }

    /// log10 of the private transmit power at `P = 10^p_exponent`.
    fn log10_private_power(&self, p_exponent: f64) -> f64 {
        self.private_power_exponent * p_exponent
    }

    /// log10 of the public transmit power at `P = 10^p_exponent`:
    /// `1 - P^(-alpha)` above a private layer, full unit power otherwise.
    fn log10_public_power(&self, p_exponent: f64) -> f64 {
        if self.has_private() {
            (-10f64.powf(self.log10_private_power(p_exponent))).ln_1p() / std::f64::consts::LN_10
        } else {
            0.0
        }
    }
}

/// Rate split and power split for the regime of `(K, alpha)`.
///
/// Very weak: all-private at `1 - alpha`. Weak: private `1 - alpha`, public
/// `(2 alpha - 1)/(K - 1)`. Moderate: private `1 - alpha`, public
/// `alpha / K`. Strong: all-public at `alpha / K`. Very strong: all-public
/// at 1, with every receiver decoding every message.
pub fn scheme_for_regime(p: &SystemParams) -> LayeredScheme {
    let a = p.alpha();
    let k = p.k_f64();
    let regime = classify_regime(p);
    let (private_gdof, public_gdof) = match regime {
        Regime::VeryWeak => (1.0 - a, 0.0),
        Regime::Weak => (1.0 - a, (2.0 * a - 1.0) / (k - 1.0)),
        Regime::Moderate => (1.0 - a, a / k),
        Regime::Strong => (0.0, a / k),
        Regime::VeryStrong => (0.0, 1.0),
    };
    LayeredScheme {
        regime,
        private_gdof,
        public_gdof,
        private_power_exponent: -a,
    }
}

// ---------------------------------------------------------------------------
// Log-domain power arithmetic
// ---------------------------------------------------------------------------

/// log10(sum of 10^t over terms); negative infinity for an empty list.
fn log10_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    let sum: f64 = terms.iter().map(|t| 10f64.powf(t - max)).sum();
    max + sum.log10()
}

/// (1/2) log2(1 + r) for r given as log10(r); switches to the asymptote
/// once the unit term is below double precision.
fn half_log2_1p(log10_ratio: f64) -> f64 {
    if log10_ratio > 18.0 {
        0.5 * log10_ratio * LOG2_10
    } else {
        0.5 * 10f64.powf(log10_ratio).ln_1p() / std::f64::consts::LN_2
    }
}

fn log10_gain_sq(ch: &ChannelMatrix, rx: usize, tx: usize) -> f64 {
    2.0 * ch.gain(rx, tx).abs().log10()
}

fn validate_p_exponent(p_exponent: f64) -> Result<()> {
    if !p_exponent.is_finite() || p_exponent <= 0.0 {
        return Err(Error::InvalidPowerExponent(p_exponent));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// SINR expressions
// ---------------------------------------------------------------------------

/// SINR (linear) for decoding the private layer of receiver `k` by treating
/// the other private layers as noise, all public contributions having been
/// subtracted already:
///
/// `P P^(-alpha) |G_kk|^2 / (1 + sum_{l != k} P^alpha P^(-alpha) |G_kl|^2)`.
///
/// With every gain at its extreme this equals
/// `P^(1-alpha) delta1^2 / (1 + (K-1) delta2^2)` exactly.
pub fn sinr_private_tin(
    ch: &ChannelMatrix,
    k: usize,
    p_exponent: f64,
    alpha: f64,
    s: &LayeredScheme,
) -> Result<f64> {
    validate_p_exponent(p_exponent)?;
    if !s.has_private() {
        return Err(Error::WrongRegime {
            expected: "private",
            actual: s.regime,
        });
    }
    let pe = p_exponent;
    let num = pe + s.log10_private_power(pe) + log10_gain_sq(ch, k, k);
    let mut den = vec![0.0]; // unit noise
    for tx in 0..ch.k_users() {
        if tx != k {
            den.push(alpha * pe + s.log10_private_power(pe) + log10_gain_sq(ch, k, tx));
        }
    }
    Ok(10f64.powf(num - log10_sum_exp(&den)))
}

/// SINR (linear) for the first decoding step of the weak regime: receiver
/// `k` decodes its own public layer treating everything else as noise,
///
/// `P (1-P^(-alpha)) |G_kk|^2 /
///  (1 + P^(1-alpha) |G_kk|^2 + sum_{l != k} [P^alpha (1-P^(-alpha)) + 1] |G_kl|^2)`.
pub fn sinr_own_public(
    ch: &ChannelMatrix,
    k: usize,
    p_exponent: f64,
    alpha: f64,
    s: &LayeredScheme,
) -> Result<f64> {
    validate_p_exponent(p_exponent)?;
    if s.regime != Regime::Weak {
        return Err(Error::WrongRegime {
            expected: "own-public",
            actual: s.regime,
        });
    }
    let pe = p_exponent;
    let num = pe + s.log10_public_power(pe) + log10_gain_sq(ch, k, k);
    let mut den = vec![
        0.0,
        pe + s.log10_private_power(pe) + log10_gain_sq(ch, k, k),
    ];
    for tx in 0..ch.k_users() {
        if tx != k {
            let g = log10_gain_sq(ch, k, tx);
            den.push(alpha * pe + s.log10_public_power(pe) + g);
            den.push(alpha * pe + s.log10_private_power(pe) + g);
        }
    }
    Ok(10f64.powf(num - log10_sum_exp(&den)))
}

// ---------------------------------------------------------------------------
// MAC feasibility
// ---------------------------------------------------------------------------

/// Which family of subset constraints bounds a joint decoding step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MacVariant {
    /// The remaining K-1 public messages after the own public layer is
    /// removed: every signal carries exponent `alpha` over a noise floor of
    /// exponent `1 - alpha`, so every nonempty subset sums to at most
    /// `(2 alpha - 1)+`.
    WeakRemainder,
    /// All K public layers decoded jointly above the private layers. The
    /// first target is the own message: subsets containing it sum to at most
    /// `alpha`, subsets of the others to at most `(2 alpha - 1)+`.
    ModeratePublic,
    /// All K full-power messages over unit noise. The first target is the
    /// own message, bounded by 1; every nonempty subset sums to at most
    /// `alpha`.
    StrongAll,
}

/// Closure slack for subset-sum comparisons: region vertices assembled in
/// floating point still classify as members.
const MAC_EPS: f64 = 1e-12;

/// Exhaustive subset check of the GDoF constraints selected by `variant`.
///
/// `d_targets` are per-message GDoF values; for `ModeratePublic` and
/// `StrongAll` the first entry is the receiver's own message. Upper bounds
/// clamp at zero, so the all-zero point is feasible for every `alpha`.
pub fn mac_feasible(d_targets: &[f64], alpha: f64, variant: MacVariant) -> Result<bool> {
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    if d_targets.len() > 16 {
        return Err(Error::TooManyMessages(d_targets.len()));
    }
    for &d in d_targets {
        if !d.is_finite() || d < 0.0 {
            return Err(Error::NegativeTarget(d));
        }
    }
    let n = d_targets.len();
    let cross_cap = (2.0 * alpha - 1.0).max(0.0);
    for mask in 1u32..(1 << n) {
        let mut sum = 0.0;
        for (i, &d) in d_targets.iter().enumerate() {
            if mask & (1 << i) != 0 {
                sum += d;
            }
        }
        let cap = match variant {
            MacVariant::WeakRemainder => cross_cap,
            MacVariant::ModeratePublic => {
                if mask & 1 != 0 {
                    alpha
                } else {
                    cross_cap
                }
            }
            MacVariant::StrongAll => alpha,
        };
        if sum > cap + MAC_EPS {
            return Ok(false);
        }
    }
    // The lone own-message bound of the all-public family.
    if variant == MacVariant::StrongAll && n > 0 && d_targets[0] > 1.0 + MAC_EPS {
        return Ok(false);
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Decoding chain
// ---------------------------------------------------------------------------

/// Outcome of running the regime's full decoding chain at one receiver set.
#[derive(Debug, Clone, PartialEq)]
pub struct SimResult {
    /// log10 of the nominal power parameter.
    pub p_exponent: f64,
    /// Achieved rate divided by `C_o(P)`; equals the scheme's total GDoF
    /// target whenever every step decodes at the unscaled targets.
    pub per_user_normalized_rate: f64,
    /// Per-step SINR in dB, receivers in order, steps in decode order. A
    /// joint step records its full-set signal-to-noise ratio.
    pub layer_sinrs_db: Vec<f64>,
    /// Per-step pass/fail at the unscaled targets, same order.
    pub decode_ok: Vec<bool>,
    pub trials: usize,
    pub seed: u64,
}

/// Which rate-split layer a decoding step carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Layer {
    Private,
    Public,
}

enum StepKind {
    Tin {
        log10_sinr: f64,
        target_gdof: f64,
    },
    Mac {
        log10_signals: Vec<f64>,
        log10_noise: f64,
        /// Common per-message GDoF target.
        target_gdof: f64,
    },
}

struct DecodeStep {
    layer: Layer,
    kind: StepKind,
}

impl DecodeStep {
    fn sinr_db(&self) -> f64 {
        match &self.kind {
            StepKind::Tin { log10_sinr, .. } => 10.0 * log10_sinr,
            StepKind::Mac {
                log10_signals,
                log10_noise,
                ..
            } => 10.0 * (log10_sum_exp(log10_signals) - log10_noise),
        }
    }

    /// Do all capacity inequalities of this step hold at the unscaled
    /// targets?
    fn passes(&self, co_bits: f64) -> bool {
        self.supported_scale(co_bits) >= 1.0
    }

    /// Largest factor by which this step's targets can be met: the minimum
    /// over the step's capacity inequalities of capacity / target sum.
    /// Unbounded (infinite) when the target is zero.
    fn supported_scale(&self, co_bits: f64) -> f64 {
        match &self.kind {
            StepKind::Tin {
                log10_sinr,
                target_gdof,
            } => {
                if *target_gdof <= 0.0 {
                    f64::INFINITY
                } else {
                    half_log2_1p(*log10_sinr) / (target_gdof * co_bits)
                }
            }
            StepKind::Mac {
                log10_signals,
                log10_noise,
                target_gdof,
            } => {
                if *target_gdof <= 0.0 {
                    return f64::INFINITY;
                }
                let m = log10_signals.len();
                let mut selected = Vec::with_capacity(m);
                let mut scale = f64::INFINITY;
                for mask in 1u32..(1 << m) {
                    selected.clear();
                    for (i, &s) in log10_signals.iter().enumerate() {
                        if mask & (1 << i) != 0 {
                            selected.push(s);
                        }
                    }
                    let sum_target = mask.count_ones() as f64 * target_gdof * co_bits;
                    let cap = half_log2_1p(log10_sum_exp(&selected) - log10_noise);
                    scale = scale.min(cap / sum_target);
                }
                scale
            }
        }
    }
}

/// Noise floor under the public layers at receiver `rx`: unit noise plus
/// every private signal, at its exact power.
fn log10_private_noise(
    ch: &ChannelMatrix,
    rx: usize,
    pe: f64,
    alpha: f64,
    s: &LayeredScheme,
) -> f64 {
    let mut terms = vec![0.0];
    if s.has_private() {
        for tx in 0..ch.k_users() {
            let exponent = if tx == rx { 1.0 } else { alpha };
            terms.push(exponent * pe + s.log10_private_power(pe) + log10_gain_sq(ch, rx, tx));
        }
    }
    log10_sum_exp(&terms)
}

fn build_steps(
    ch: &ChannelMatrix,
    pe: f64,
    p: &SystemParams,
    s: &LayeredScheme,
) -> Result<Vec<DecodeStep>> {
    let k = p.k_users();
    let alpha = p.alpha();
    let mut steps = Vec::new();
    for rx in 0..k {
        match s.regime {
            Regime::VeryWeak => {
                steps.push(DecodeStep {
                    layer: Layer::Private,
                    kind: StepKind::Tin {
                        log10_sinr: sinr_private_tin(ch, rx, pe, alpha, s)?.log10(),
                        target_gdof: s.private_gdof,
                    },
                });
            }
            Regime::Weak => {
                // Own public by TIN, then the other K-1 publics jointly over
                // the private floor, then the private layer.
                steps.push(DecodeStep {
                    layer: Layer::Public,
                    kind: StepKind::Tin {
                        log10_sinr: sinr_own_public(ch, rx, pe, alpha, s)?.log10(),
                        target_gdof: s.public_gdof,
                    },
                });
                let signals: Vec<f64> = (0..k)
                    .filter(|&tx| tx != rx)
                    .map(|tx| alpha * pe + s.log10_public_power(pe) + log10_gain_sq(ch, rx, tx))
                    .collect();
                steps.push(DecodeStep {
                    layer: Layer::Public,
                    kind: StepKind::Mac {
                        log10_signals: signals,
                        log10_noise: log10_private_noise(ch, rx, pe, alpha, s),
                        target_gdof: s.public_gdof,
                    },
                });
                steps.push(DecodeStep {
                    layer: Layer::Private,
                    kind: StepKind::Tin {
                        log10_sinr: sinr_private_tin(ch, rx, pe, alpha, s)?.log10(),
                        target_gdof: s.private_gdof,
                    },
                });
            }
            Regime::Moderate => {
                // All K publics jointly over the private floor, then the
                // private layer.
                let signals: Vec<f64> = (0..k)
                    .map(|tx| {
                        let exponent = if tx == rx { 1.0 } else { alpha };
                        exponent * pe + s.log10_public_power(pe) + log10_gain_sq(ch, rx, tx)
                    })
                    .collect();
                steps.push(DecodeStep {
                    layer: Layer::Public,
                    kind: StepKind::Mac {
                        log10_signals: signals,
                        log10_noise: log10_private_noise(ch, rx, pe, alpha, s),
                        target_gdof: s.public_gdof,
                    },
                });
                steps.push(DecodeStep {
                    layer: Layer::Private,
                    kind: StepKind::Tin {
                        log10_sinr: sinr_private_tin(ch, rx, pe, alpha, s)?.log10(),
                        target_gdof: s.private_gdof,
                    },
                });
            }
            Regime::Strong | Regime::VeryStrong => {
                // Everything is public at full power over unit noise.
                let signals: Vec<f64> = (0..k)
                    .map(|tx| {
                        let exponent = if tx == rx { 1.0 } else { alpha };
                        exponent * pe + log10_gain_sq(ch, rx, tx)
                    })
                    .collect();
                steps.push(DecodeStep {
                    layer: Layer::Public,
                    kind: StepKind::Mac {
                        log10_signals: signals,
                        log10_noise: 0.0,
                        target_gdof: s.public_gdof,
                    },
                });
            }
        }
    }
    Ok(steps)
}

/// Runs the regime's decoding chain at every receiver and reports the
/// achieved normalized rate.
///
/// Every step compares its target rate in bits (`target_gdof * C_o(P)`)
/// against the step's finite-P Gaussian capacity; a joint step checks all of
/// its subset sum-rate constraints. When a step falls short at the unscaled
/// targets, that step's layer is scaled down to the largest factor in
/// `[0, 1]` its decoding steps support across all receivers (the exact
/// minimum of capacity over target-sum ratios), and the achieved rate sums
/// the scaled layers. A layer scaled to its capacity is still decodable, so
/// subtraction before later steps remains valid. Infeasibility is data, not
/// an error.
pub fn evaluate_decoding_chain(
    ch: &ChannelMatrix,
    p_exponent: f64,
    p: &SystemParams,
) -> Result<SimResult> {
    validate_p_exponent(p_exponent)?;
    if p.k_users() > 16 {
        return Err(Error::TooManyMessages(p.k_users()));
    }
    assert_eq!(ch.k_users(), p.k_users(), "channel size mismatch");
    let s = scheme_for_regime(p);
    let co_bits = 0.5 * p_exponent * LOG2_10;
    let steps = build_steps(ch, p_exponent, p, &s)?;

    let layer_sinrs_db: Vec<f64> = steps.iter().map(DecodeStep::sinr_db).collect();
    let decode_ok: Vec<bool> = steps.iter().map(|st| st.passes(co_bits)).collect();

    let layer_scale = |layer: Layer| {
        steps
            .iter()
            .filter(|st| st.layer == layer)
            .map(|st| st.supported_scale(co_bits))
            .fold(f64::INFINITY, f64::min)
            .clamp(0.0, 1.0)
    };
    let rate = layer_scale(Layer::Private) * s.private_gdof
        + layer_scale(Layer::Public) * s.public_gdof;

    Ok(SimResult {
        p_exponent,
        per_user_normalized_rate: rate,
        layer_sinrs_db,
        decode_ok,
        trials: 1,
        seed: 0,
    })
}

/// One row of a convergence campaign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GdofEstimate {
    pub p_exponent: f64,
    pub mean_rate: f64,
    pub std: f64,
}

/// Averages the decoding chain over independent channel draws at each power
/// exponent.
///
/// Trial `t` uses the channel drawn from `derive_seed(seed, t)`; the same
/// channels are reused across exponents, and trials are aggregated in index
/// order, so the output is bit-identical for a given input regardless of
/// thread count.
pub fn estimate_gdof(
    p: &SystemParams,
    b: &ChannelBounds,
    p_exponents: &[f64],
    trials: usize,
    seed: u64,
) -> Result<Vec<GdofEstimate>> {
    if p_exponents.is_empty() {
        return Err(Error::EmptyGrid);
    }
    if trials == 0 {
        return Err(Error::InvalidTrials);
    }
    for &pe in p_exponents {
        validate_p_exponent(pe)?;
    }
    if p.k_users() > 16 {
        return Err(Error::TooManyMessages(p.k_users()));
    }

    let channels: Vec<ChannelMatrix> = (0..trials as u64)
        .map(|t| draw_channel(p, b, derive_seed(seed, t)))
        .collect();

    let estimates = p_exponents
        .iter()
        .map(|&pe| {
            let rates: Vec<f64> = channels
                .par_iter()
                .map(|ch| {
                    evaluate_decoding_chain(ch, pe, p)
                        .expect("inputs validated")
                        .per_user_normalized_rate
                })
                .collect();
            GdofEstimate {
                p_exponent: pe,
                mean_rate: mean(&rates),
                std: population_std(&rates),
            }
        })
        .collect();
    Ok(estimates)
}
