//! Closed-form GDoF-per-user curves for the symmetric K-user interference
//! channel.
//!
//! Two curves are evaluated exactly: the finite-precision-CSIT curve, which
//! depends on the number of users, and the perfect-CSIT baseline ("W" curve),
//! which does not. Both are piecewise linear in the cross-link strength
//! `alpha` with five segments. Everything here is a pure function of its
//! arguments and safe to call concurrently.

use crate::error::{Error, Result};
use std::fmt;

/// The symmetric network: `k_users` transmit-receive pairs where every
/// direct link carries 1 DoF and every cross link carries `alpha` DoF.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    k_users: usize,
    alpha: f64,
}

impl SystemParams {
    /// Requires `k_users >= 2` and a finite, nonnegative `alpha`.
    pub fn new(k_users: usize, alpha: f64) -> Result<Self> {
        if k_users < 2 {
            return Err(Error::InvalidUserCount(k_users));
        }
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(Error::InvalidAlpha(alpha));
        }
        Ok(Self { k_users, alpha })
    }

    pub fn k_users(&self) -> usize {
        self.k_users
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub(crate) fn k_f64(&self) -> f64 {
        self.k_users as f64
    }
}

/// Interference regime of the symmetric channel.
///
/// The five intervals partition `[0, inf)` for every fixed `K`; each
/// interval is closed on the right, so a boundary strength belongs to the
/// regime on its left. Breakpoints are `1/2`, `K/(K+1)`, `1` and `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// `alpha <= 1/2`: treating all interference as noise is optimal.
    VeryWeak,
    /// `1/2 < alpha <= K/(K+1)`.
    Weak,
    /// `K/(K+1) < alpha <= 1`.
    Moderate,
    /// `1 < alpha <= K`.
    Strong,
    /// `K < alpha`: every receiver decodes all messages.
    VeryStrong,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Regime::VeryWeak => "VeryWeak",
            Regime::Weak => "Weak",
            Regime::Moderate => "Moderate",
            Regime::Strong => "Strong",
            Regime::VeryStrong => "VeryStrong",
        };
        f.write_str(name)
    }
}

/// One point on a GDoF curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GdofPoint {
    pub alpha: f64,
    /// GDoF per user; always in `[0, 1]`.
    pub d_per_user: f64,
    pub regime: Regime,
}

/// Which of the two curves a sweep evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    FinitePrecision,
    PerfectCsit,
}

/// Maps `alpha` to its interference regime for the given network size.
///
/// Breakpoint comparisons are exact IEEE comparisons: the inputs are
/// user-supplied grid points, not computed quantities, and continuity of the
/// curves makes the boundary assignment value-irrelevant. The regime tag
/// itself is still deterministic.
pub fn classify_regime(p: &SystemParams) -> Regime {
    let a = p.alpha();
    let k = p.k_f64();
    if a <= 0.5 {
        Regime::VeryWeak
    } else if a <= k / (k + 1.0) {
        Regime::Weak
    } else if a <= 1.0 {
        Regime::Moderate
    } else if a <= k {
        Regime::Strong
    } else {
        Regime::VeryStrong
    }
}

/// GDoF per user under finite-precision CSIT.
///
/// Piecewise in the regime of `alpha`:
///
/// | regime      | d(alpha)                    |
/// |-------------|-----------------------------|
/// | very weak   | `1 - alpha`                 |
/// | weak        | `(K-2-(K-3)alpha)/(K-1)`    |
/// | moderate    | `1 - alpha (K-1)/K`         |
/// | strong      | `alpha / K`                 |
/// | very strong | `1`                         |
pub fn gdof_finite_precision(p: &SystemParams) -> GdofPoint {
    let a = p.alpha();
    let k = p.k_f64();
    let regime = classify_regime(p);
    let d = match regime {
        Regime::VeryWeak => 1.0 - a,
        Regime::Weak => (k - 2.0 - (k - 3.0) * a) / (k - 1.0),
        Regime::Moderate => 1.0 - (k - 1.0) / k * a,
        Regime::Strong => a / k,
        Regime::VeryStrong => 1.0,
    };
    GdofPoint {
        alpha: a,
        d_per_user: d,
        regime,
    }
}

/// GDoF per user under perfect CSIT: the "W" curve.
///
/// Independent of the number of users. The regime tag on the returned point
/// uses the two-user partition, whose breakpoints (`1/2`, `2/3`, `1`, `2`)
/// are exactly this curve's segment boundaries.
pub fn gdof_perfect_csit(alpha: f64) -> Result<GdofPoint> {
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    Ok(perfect_point(alpha))
}

fn perfect_point(a: f64) -> GdofPoint {
    let (d, regime) = if a <= 0.5 {
        (1.0 - a, Regime::VeryWeak)
    } else if a <= 2.0 / 3.0 {
        (a, Regime::Weak)
    } else if a <= 1.0 {
        (1.0 - a / 2.0, Regime::Moderate)
    } else if a <= 2.0 {
        (a / 2.0, Regime::Strong)
    } else {
        (1.0, Regime::VeryStrong)
    };
    GdofPoint {
        alpha: a,
        d_per_user: d,
        regime,
    }
}

/// Per-user GDoF lost to finite-precision CSIT: perfect minus
/// finite-precision.
///
/// Nonnegative everywhere; zero exactly on `alpha <= 1/2` and `alpha >= K`
/// (and identically zero for `K = 2`, where the two curves coincide).
pub fn gdof_gap(p: &SystemParams) -> f64 {
    perfect_point(p.alpha()).d_per_user - gdof_finite_precision(p).d_per_user
}

/// Evaluates the selected curve on an ordered grid of strengths.
///
/// The grid must be nonempty, finite, nonnegative and strictly increasing.
/// Output preserves grid order, one point per grid value.
pub fn curve_sweep(p: &SystemParams, alpha_grid: &[f64], kind: CurveKind) -> Result<Vec<GdofPoint>> {
    if alpha_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    for (i, &a) in alpha_grid.iter().enumerate() {
        if !a.is_finite() || a < 0.0 {
            return Err(Error::UnsortedGrid);
        }
        if i > 0 && alpha_grid[i - 1] >= a {
            return Err(Error::UnsortedGrid);
        }
    }
    let points = alpha_grid
        .iter()
        .map(|&a| {
            // SystemParams validity carries over to every grid point.
            let pa = SystemParams {
                k_users: p.k_users,
                alpha: a,
            };
            match kind {
                CurveKind::FinitePrecision => gdof_finite_precision(&pa),
                CurveKind::PerfectCsit => perfect_point(a),
            }
        })
        .collect();
    Ok(points)
}
