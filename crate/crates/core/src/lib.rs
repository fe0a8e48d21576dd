//! Numerical laboratory for the GDoF of the symmetric K-user interference
//! channel under finite-precision CSIT.
//!
//! Three layers of machinery share one set of domain types:
//!
//! * [`gdof`] — exact evaluation of the closed-form GDoF-per-user curves
//!   (finite-precision and perfect-CSIT baseline), regime classification and
//!   grid sweeps.
//! * [`linksim`] — finite-SNR Monte-Carlo evaluation of the layered
//!   achievability schemes: rate splitting, TIN, successive cancellation and
//!   joint MAC decoding, with seeded, reproducible campaigns.
//! * [`det`] and [`ais`] — the integer deterministic channel model and
//!   brute-force verification of aligned-image-set statistics, alignment
//!   probability bounds and exact entropy gaps on desk-scale instances.
//!
//! Everything is deterministic given its seed; trials may run in parallel
//! but aggregate in a fixed order, so results are bit-identical regardless
//! of thread count.

pub mod ais;
pub mod channel;
pub mod det;
pub mod error;
pub mod gdof;
pub mod linksim;
pub mod stats;

pub use ais::{
    aligned_set_stats, alignment_bound, alignment_probability, density_swap_slope,
    entropy_gap, enumerate_images, mean_aligned_set_size, output_entropy_excess,
    quantized_sum_entropy, AisStats, DensitySwapResult, DensitySwapRow, EntropyGap, ImageTable,
};
pub use channel::{
    derive_seed, draw_channel, draw_channel_with_law, ChannelBounds, ChannelMatrix, GainLaw,
};
pub use det::{det_output, output_range, DetCodeword, DetParams};
pub use error::{Error, Result};
pub use gdof::{
    classify_regime, curve_sweep, gdof_finite_precision, gdof_gap, gdof_perfect_csit, CurveKind,
    GdofPoint, Regime, SystemParams,
};
pub use linksim::{
    estimate_gdof, evaluate_decoding_chain, mac_feasible, scheme_for_regime, sinr_own_public,
    sinr_private_tin, GdofEstimate, LayeredScheme, MacVariant, SimResult,
};
