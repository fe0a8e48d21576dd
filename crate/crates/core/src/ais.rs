//! Exhaustive and Monte-Carlo verification of aligned-image-set statistics
//! on desk-scale deterministic-model instances.
//!
//! An aligned image set collects the receiver-2 output images whose
//! representative codewords collapse to one image at receiver 1; its average
//! size governs how far the two receivers' entropies can drift apart. This
//! module enumerates the image tables exactly (two or three users), groups
//! them into aligned sets, measures pairwise alignment probabilities against
//! their closed-form bounds, and computes exact entropy gaps under uniform
//! i.i.d. inputs. Channel averaging is the only Monte-Carlo layer; every
//! entropy is an exact enumeration.

use crate::channel::{derive_seed, draw_channel, ChannelBounds, ChannelMatrix, GainLaw};
use crate::det::{det_output, quantize, DetCodeword, DetParams};
use crate::error::{Error, Result};
use crate::gdof::SystemParams;
use crate::stats::{entropy_bits, least_squares_slope};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, HashMap};

/// Cap on exhaustive enumeration size (codewords per table).
pub const MAX_ENUMERATION: u128 = 10_000_000;

/// Aligned-set size statistics for one instance or one averaged campaign.
#[derive(Debug, Clone, PartialEq)]
pub struct AisStats {
    pub p_bar: u64,
    pub alpha: f64,
    /// Mean aligned-set size over distinct receiver-2 images (averaged over
    /// channel draws in a campaign).
    pub mean_set_size: f64,
    /// Largest aligned set seen.
    pub max_set_size: u64,
    pub trials: usize,
    pub seed: u64,
}

/// Exact conditional entropies of the two receiver outputs given the first
/// transmitter's symbol, averaged over channel draws, with the linear
/// reference line for the gap.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyGap {
    pub p_bar: u64,
    pub alpha: f64,
    /// Receiver-2 output entropy given the first input, in bits.
    pub h_y2_given_x1: f64,
    /// Receiver-1 output entropy given the first input, in bits.
    pub h_y1_given_x1: f64,
    /// `h_y2_given_x1 - h_y1_given_x1`.
    pub gap: f64,
    /// Reference line: `(1 - alpha) log2 p_bar` up to unit cross strength,
    /// zero slope beyond it.
    pub bound: f64,
}

fn enumeration_count(d: &DetParams, dims: u32) -> Result<u128> {
    let size = (d.alphabet_size() as u128).pow(dims);
    if size > MAX_ENUMERATION {
        return Err(Error::InstanceTooLarge {
            size,
            limit: MAX_ENUMERATION,
        });
    }
    Ok(size)
}

fn system_params(d: &DetParams) -> SystemParams {
    SystemParams::new(d.k_users(), d.alpha()).expect("validated by DetParams")
}

// ---------------------------------------------------------------------------
// Exhaustive image tables
// ---------------------------------------------------------------------------

/// Exhaustive table of both receivers' outputs for every interferer
/// codeword, with the first transmitter's symbol held at `x1`. Entries are
/// in lexicographic interferer order.
#[derive(Debug, Clone)]
pub struct ImageTable {
    x1: i64,
    entries: Vec<(Vec<i64>, (i64, i64))>,
}

impl ImageTable {
    pub fn x1(&self) -> i64 {
        self.x1
    }

    /// `(interferer codeword, (receiver-1 image, receiver-2 image))` rows.
    pub fn entries(&self) -> &[(Vec<i64>, (i64, i64))] {
        &self.entries
    }
}

/// Enumerates receiver-1 and receiver-2 outputs over all interferer
/// codewords `(x_2, ..., x_K)` with `x_1` fixed.
///
/// Supports two and three users; the table may not exceed
/// [`MAX_ENUMERATION`] rows.
pub fn enumerate_images(ch: &ChannelMatrix, d: &DetParams, x1: i64) -> Result<ImageTable> {
    let k = d.k_users();
    if !(2..=3).contains(&k) {
        return Err(Error::EnumerationUsers(k));
    }
    if x1 < 0 || x1 > d.input_max() {
        return Err(Error::OutOfAlphabet {
            value: x1,
            max: d.input_max(),
        });
    }
    let count = enumeration_count(d, (k - 1) as u32)? as usize;
    let side = d.alphabet_size() as i64;

    let mut entries = Vec::with_capacity(count);
    let mut codeword = vec![0i64; k];
    codeword[0] = x1;
    for idx in 0..count {
        // Lexicographic odometer over the interferer coordinates.
        let mut rem = idx as i64;
        for slot in (1..k).rev() {
            codeword[slot] = rem % side;
            rem /= side;
        }
        let cw = DetCodeword::new(codeword.clone(), d).expect("alphabet respected");
        let y1 = det_output(ch, &cw, d, 0);
        let y2 = det_output(ch, &cw, d, 1);
        entries.push((codeword[1..].to_vec(), (y1, y2)));
    }
    Ok(ImageTable { x1, entries })
}

/// Groups the table by receiver-2 image and measures the aligned sets.
///
/// The representative of each receiver-2 image is the lexicographically
/// smallest interferer codeword producing it; the aligned set of an image
/// is the set of receiver-2 images whose representatives share its
/// representative's receiver-1 image. Returns the mean and maximum set size
/// over distinct receiver-2 images. All counting is exact integer
/// arithmetic.
pub fn aligned_set_stats(ch: &ChannelMatrix, d: &DetParams, x1: i64) -> Result<AisStats> {
    let table = enumerate_images(ch, d, x1)?;
    Ok(stats_from_table(&table, d))
}

fn stats_from_table(table: &ImageTable, d: &DetParams) -> AisStats {
    // First occurrence in lexicographic order is the representative.
    let mut rep_y1: HashMap<i64, i64> = HashMap::new();
    for (_, (y1, y2)) in table.entries() {
        rep_y1.entry(*y2).or_insert(*y1);
    }
    // Bucket distinct receiver-2 images by their representative's
    // receiver-1 image; every image in a bucket of size b has |S| = b.
    let mut buckets: HashMap<i64, u64> = HashMap::new();
    for &y1 in rep_y1.values() {
        *buckets.entry(y1).or_insert(0) += 1;
    }
    let images: u64 = buckets.values().sum();
    let sum_sq: u128 = buckets.values().map(|&b| (b as u128) * (b as u128)).sum();
    let max_set_size = buckets.values().copied().max().unwrap_or(0);
    AisStats {
        p_bar: d.p_bar(),
        alpha: d.alpha(),
        mean_set_size: sum_sq as f64 / images as f64,
        max_set_size,
        trials: 1,
        seed: 0,
    }
}

/// Mean aligned-set size over independent channel draws, with the first
/// transmitter's symbol held at zero so both outputs reduce to pure
/// interferer images.
pub fn mean_aligned_set_size(
    d: &DetParams,
    b: &ChannelBounds,
    draws: usize,
    seed: u64,
) -> Result<AisStats> {
    if draws == 0 {
        return Err(Error::InvalidTrials);
    }
    let p = system_params(d);
    let mut mean_sum = 0.0;
    let mut max_seen = 0u64;
    for t in 0..draws as u64 {
        let ch = draw_channel(&p, b, derive_seed(seed, t));
        let stats = aligned_set_stats(&ch, d, 0)?;
        mean_sum += stats.mean_set_size;
        max_seen = max_seen.max(stats.max_set_size);
    }
    Ok(AisStats {
        p_bar: d.p_bar(),
        alpha: d.alpha(),
        mean_set_size: mean_sum / draws as f64,
        max_set_size: max_seen,
        trials: draws,
        seed,
    })
}

// ---------------------------------------------------------------------------
// Pairwise alignment probability
// ---------------------------------------------------------------------------

/// Closed-form per-draw bound on the probability that two interferer
/// codewords with receiver-2 images `lambda` and `nu` collide at
/// receiver 1:
///
/// `min(1, 2 (K-1) delta2 p_bar^max(1-alpha, 0) f_max / (|lambda-nu| - (K-1)))`
///
/// when `|lambda - nu| > K - 1`, and 1 otherwise. The power factor drops
/// out once the cross links are at least as strong as the direct links.
pub fn alignment_bound(lambda: i64, nu: i64, d: &DetParams, b: &ChannelBounds) -> f64 {
    let diff = (lambda - nu).abs() as f64;
    let km1 = (d.k_users() - 1) as f64;
    if diff > km1 {
        let pow = (d.p_bar() as f64).powf((1.0 - d.alpha()).max(0.0));
        (2.0 * km1 * b.delta2() * pow * b.f_max() / (diff - km1)).min(1.0)
    } else {
        1.0
    }
}

/// Empirical probability that the receiver-1 images of two codewords
/// coincide, against the per-draw bound averaged over the same draws.
///
/// The codewords must share their conditioned first coordinate and differ
/// somewhere in the interferer coordinates. Both quantities are evaluated
/// per drawn channel: the collision indicator compares receiver-1 outputs,
/// the bound plugs the realized receiver-2 outputs into
/// [`alignment_bound`].
pub fn alignment_probability(
    cw_a: &DetCodeword,
    cw_b: &DetCodeword,
    d: &DetParams,
    b: &ChannelBounds,
    trials: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    if trials == 0 {
        return Err(Error::InvalidTrials);
    }
    if !b.f_max().is_finite() {
        return Err(Error::UnboundedDensity);
    }
    let a = cw_a.symbols();
    let bb = cw_b.symbols();
    if a[0] != bb[0] {
        return Err(Error::ConditioningMismatch);
    }
    if a[1..] == bb[1..] {
        return Err(Error::IdenticalCodewords);
    }
    let p = system_params(d);
    let mut collisions = 0u64;
    let mut bound_sum = 0.0;
    for t in 0..trials as u64 {
        let ch = draw_channel(&p, b, derive_seed(seed, t));
        if det_output(&ch, cw_a, d, 0) == det_output(&ch, cw_b, d, 0) {
            collisions += 1;
        }
        let lambda = det_output(&ch, cw_a, d, 1);
        let nu = det_output(&ch, cw_b, d, 1);
        bound_sum += alignment_bound(lambda, nu, d, b);
    }
    Ok((collisions as f64 / trials as f64, bound_sum / trials as f64))
}

// ---------------------------------------------------------------------------
// Exact entropies under uniform inputs
// ---------------------------------------------------------------------------

type Dist = BTreeMap<i64, u64>;

/// Distribution of one ceiling-quantized term over a uniform input symbol.
fn term_distribution(scale: f64, gain: f64, input_max: i64) -> Dist {
    let mut dist = Dist::new();
    for x in 0..=input_max {
        *dist.entry(quantize(scale, gain, x)).or_insert(0) += 1;
    }
    dist
}

/// Distribution of the sum of independent terms.
fn convolve(a: &Dist, b: &Dist) -> Dist {
    let mut out = Dist::new();
    for (&va, &ca) in a {
        for (&vb, &cb) in b {
            *out.entry(va + vb).or_insert(0) += ca * cb;
        }
    }
    out
}

fn sum_distribution(terms: &[Dist]) -> Dist {
    let mut acc = terms[0].clone();
    for t in &terms[1..] {
        acc = convolve(&acc, t);
    }
    acc
}

/// Exact conditional output distributions at both receivers given the first
/// input. Conditioned on that symbol, its quantized contribution is an
/// additive constant at each receiver, so the conditional distribution is
/// the interferer-sum distribution shifted; entropy ignores the shift.
fn conditional_output_entropies(ch: &ChannelMatrix, d: &DetParams) -> (f64, f64) {
    let k = d.k_users();
    let mut terms_rx1 = Vec::with_capacity(k - 1); // receiver index 1
    let mut terms_rx0 = Vec::with_capacity(k - 1); // receiver index 0
    for tx in 1..k {
        let scale_rx1 = if tx == 1 {
            d.direct_scale()
        } else {
            d.cross_scale()
        };
        terms_rx1.push(term_distribution(scale_rx1, ch.gain(1, tx), d.input_max()));
        terms_rx0.push(term_distribution(d.cross_scale(), ch.gain(0, tx), d.input_max()));
    }
    (
        entropy_bits(&sum_distribution(&terms_rx1)),
        entropy_bits(&sum_distribution(&terms_rx0)),
    )
}

/// Exact entropy gap `H(Y2 | X1, G) - H(Y1 | X1, G)` under uniform i.i.d.
/// inputs, averaged over channel draws.
pub fn entropy_gap(
    d: &DetParams,
    b: &ChannelBounds,
    draws: usize,
    seed: u64,
) -> Result<EntropyGap> {
    if draws == 0 {
        return Err(Error::InvalidTrials);
    }
    enumeration_count(d, (d.k_users() - 1) as u32)?;
    let p = system_params(d);
    let mut h2 = 0.0;
    let mut h1 = 0.0;
    for t in 0..draws as u64 {
        let ch = draw_channel(&p, b, derive_seed(seed, t));
        let (a, bb) = conditional_output_entropies(&ch, d);
        h2 += a;
        h1 += bb;
    }
    let h_y2_given_x1 = h2 / draws as f64;
    let h_y1_given_x1 = h1 / draws as f64;
    let bound = if d.alpha() <= 1.0 {
        (1.0 - d.alpha()) * (d.p_bar() as f64).log2()
    } else {
        0.0
    };
    Ok(EntropyGap {
        p_bar: d.p_bar(),
        alpha: d.alpha(),
        h_y2_given_x1,
        h_y1_given_x1,
        gap: h_y2_given_x1 - h_y1_given_x1,
        bound,
    })
}

/// Excess of the receiver-1 output entropy over the per-transmitter input
/// entropy, `H(Y1) - log2(alphabet)`, under uniform i.i.d. inputs, averaged
/// over draws. Scaling an input by a known nonzero gain is a bijection, so
/// the subtrahend equals the entropy of any single scaled input. Returns
/// the excess and its reference `alpha * log2 p_bar`.
pub fn output_entropy_excess(
    d: &DetParams,
    b: &ChannelBounds,
    draws: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    if draws == 0 {
        return Err(Error::InvalidTrials);
    }
    enumeration_count(d, d.k_users() as u32)?;
    let p = system_params(d);
    let k = d.k_users();
    let mut excess = 0.0;
    for t in 0..draws as u64 {
        let ch = draw_channel(&p, b, derive_seed(seed, t));
        let terms: Vec<Dist> = (0..k)
            .map(|tx| {
                let scale = if tx == 0 {
                    d.direct_scale()
                } else {
                    d.cross_scale()
                };
                term_distribution(scale, ch.gain(0, tx), d.input_max())
            })
            .collect();
        let h_y1 = entropy_bits(&sum_distribution(&terms));
        excess += h_y1 - (d.alphabet_size() as f64).log2();
    }
    Ok((
        excess / draws as f64,
        d.alpha() * (d.p_bar() as f64).log2(),
    ))
}

// ---------------------------------------------------------------------------
// Density-swap invariance
// ---------------------------------------------------------------------------

/// One grid point of a density-swap sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct DensitySwapRow {
    pub p_bar: u64,
    pub h_law_a: f64,
    pub h_law_b: f64,
    pub abs_diff: f64,
}

/// Result of a density-swap sweep: per-grid-point entropies and the
/// regression slope of the absolute difference against `log2 p_bar`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensitySwapResult {
    pub rows: Vec<DensitySwapRow>,
    pub slope: f64,
}

/// Exact entropy of the quantized mixed sum
/// `sum_k ceil(p_bar^beta F_k X_k)` under uniform i.i.d. inputs, with the
/// gains `F_k` drawn from `law`, averaged over channel draws.
pub fn quantized_sum_entropy(
    beta: f64,
    d: &DetParams,
    b: &ChannelBounds,
    law: GainLaw,
    draws: usize,
    seed: u64,
) -> Result<f64> {
    if draws == 0 {
        return Err(Error::InvalidTrials);
    }
    if !law.f_max(b).is_finite() {
        return Err(Error::UnboundedDensity);
    }
    enumeration_count(d, d.k_users() as u32)?;
    let scale = (d.p_bar() as f64).powf(beta);
    let k = d.k_users();
    let mut total = 0.0;
    for t in 0..draws as u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, t));
        let terms: Vec<Dist> = (0..k)
            .map(|_| term_distribution(scale, law.sample_gain(b, &mut rng), d.input_max()))
            .collect();
        total += entropy_bits(&sum_distribution(&terms));
    }
    Ok(total / draws as f64)
}

/// Sweeps the quantized-sum entropy over a `p_bar` grid under two gain laws
/// and fits the slope of their absolute entropy difference against
/// `log2 p_bar`. Matching per-draw seeds are used for both laws, so
/// identical laws give an exactly zero difference at every grid point.
#[allow(clippy::too_many_arguments)]
pub fn density_swap_slope(
    beta: f64,
    alpha: f64,
    k_users: usize,
    pbar_grid: &[u64],
    b: &ChannelBounds,
    law_a: GainLaw,
    law_b: GainLaw,
    draws: usize,
    seed: u64,
) -> Result<DensitySwapResult> {
    if pbar_grid.len() < 2 {
        return Err(Error::EmptyGrid);
    }
    if pbar_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::UnsortedGrid);
    }
    let mut rows = Vec::with_capacity(pbar_grid.len());
    for &p_bar in pbar_grid {
        let d = DetParams::new(p_bar, alpha, k_users)?;
        let h_law_a = quantized_sum_entropy(beta, &d, b, law_a, draws, seed)?;
        let h_law_b = quantized_sum_entropy(beta, &d, b, law_b, draws, seed)?;
        rows.push(DensitySwapRow {
            p_bar,
            h_law_a,
            h_law_b,
            abs_diff: (h_law_a - h_law_b).abs(),
        });
    }
    let xs: Vec<f64> = rows.iter().map(|r| (r.p_bar as f64).log2()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.abs_diff).collect();
    Ok(DensitySwapResult {
        slope: least_squares_slope(&xs, &ys),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit(k: usize) -> ChannelMatrix {
        ChannelMatrix::constant(k, 1.0)
    }

    fn det(p_bar: u64, alpha: f64, k: usize) -> DetParams {
        DetParams::new(p_bar, alpha, k).unwrap()
    }

    #[test]
    fn image_table_smallest_case() {
        // p_bar = 2, alpha = 0.5, unit gains, x1 = 0: three interferer
        // symbols with y1 = ceil(x2 / sqrt(2)), y2 = x2.
        let d = det(2, 0.5, 2);
        let table = enumerate_images(&unit(2), &d, 0).unwrap();
        assert_eq!(table.entries().len(), 3);
        let inv_sqrt2 = (2.0f64).powf(-0.5);
        for (cw, (y1, y2)) in table.entries() {
            let x2 = cw[0];
            assert_eq!(*y2, x2);
            assert_eq!(*y1, (inv_sqrt2 * x2 as f64).ceil() as i64);
        }
    }

    #[test]
    fn image_table_shifts_with_conditioned_symbol() {
        // For alpha <= 1 the direct term at receiver 1 moves by
        // ceil(g11 * x1) while the interferer images are untouched.
        let d = det(8, 0.5, 2);
        let ch = unit(2);
        let base = enumerate_images(&ch, &d, 0).unwrap();
        for x1 in [1i64, 3, 8] {
            let shifted = enumerate_images(&ch, &d, x1).unwrap();
            let delta = x1; // ceil(1.0 * x1)
            for (b, s) in base.entries().iter().zip(shifted.entries()) {
                assert_eq!(s.1 .0, b.1 .0 + delta);
            }
        }
    }

    #[test]
    fn enumeration_guards() {
        assert!(matches!(
            enumerate_images(&unit(4), &det(4, 0.5, 4), 0),
            Err(Error::EnumerationUsers(4))
        ));
        assert!(matches!(
            enumerate_images(&unit(2), &det(8, 0.5, 2), 99),
            Err(Error::OutOfAlphabet { .. })
        ));
        let too_big = det(5000, 0.5, 3);
        assert!(matches!(
            enumerate_images(&unit(3), &too_big, 0),
            Err(Error::InstanceTooLarge { .. })
        ));
    }

    #[test]
    fn aligned_sets_all_singletons_when_receiver_one_separates() {
        // alpha = 1 and unit gains: both images equal x2, so every
        // representative has a distinct receiver-1 image.
        let d = det(16, 1.0, 2);
        let stats = aligned_set_stats(&unit(2), &d, 0).unwrap();
        assert_eq!(stats.mean_set_size, 1.0);
        assert_eq!(stats.max_set_size, 1);
    }

    #[test]
    fn aligned_sets_collapse_when_receiver_one_is_blind() {
        // alpha = 0 at p_bar = 8: the cross quantizer at receiver 1 maps
        // x2 into ceil(x2/8), i.e. 0..=1 buckets for x2 in 0..=8, while
        // receiver 2 separates all nine symbols. Exact bucket sizes: y1=0
        // for x2=0, y1=1 for 1..=8 -> sets of sizes {1, 8}.
        let d = det(8, 0.0, 2);
        let stats = aligned_set_stats(&unit(2), &d, 0).unwrap();
        assert_eq!(stats.max_set_size, 8);
        assert_relative_eq!(stats.mean_set_size, (1 + 64) as f64 / 9.0);
    }

    #[test]
    fn aligned_set_mean_agrees_with_pairwise_count() {
        // Group-then-count versus ordered-pair collision count.
        let d = det(32, 0.5, 2);
        let b = ChannelBounds::new(0.5, 2.0).unwrap();
        let p = SystemParams::new(2, 0.5).unwrap();
        for seed in 0..10u64 {
            let ch = draw_channel(&p, &b, seed);
            let table = enumerate_images(&ch, &d, 0).unwrap();
            let stats = aligned_set_stats(&ch, &d, 0).unwrap();

            let mut rep_y1: HashMap<i64, i64> = HashMap::new();
            for (_, (y1, y2)) in table.entries() {
                rep_y1.entry(*y2).or_insert(*y1);
            }
            let images: Vec<i64> = rep_y1.values().copied().collect();
            let mut collisions = 0u64;
            for &a in &images {
                for &c in &images {
                    if a == c {
                        collisions += 1;
                    }
                }
            }
            let pairwise = collisions as f64 / images.len() as f64;
            assert_eq!(stats.mean_set_size, pairwise, "seed {seed}");
        }
    }

    #[test]
    fn grouping_is_a_partition() {
        let d = det(16, 0.75, 3);
        let b = ChannelBounds::new(0.5, 2.0).unwrap();
        let p = SystemParams::new(3, 0.75).unwrap();
        let ch = draw_channel(&p, &b, 5);
        let table = enumerate_images(&ch, &d, 2).unwrap();
        let mut per_image: HashMap<i64, u64> = HashMap::new();
        for (_, (_, y2)) in table.entries() {
            *per_image.entry(*y2).or_insert(0) += 1;
        }
        let total: u64 = per_image.values().sum();
        assert_eq!(total as usize, table.entries().len());
    }

    #[test]
    fn alignment_bound_clamps() {
        let d = det(64, 0.75, 2);
        let b = ChannelBounds::new(0.5, 2.0).unwrap();
        // Same image: inside the clamp window.
        assert_eq!(alignment_bound(17, 17, &d, &b), 1.0);
        assert_eq!(alignment_bound(17, 18, &d, &b), 1.0);
        // Far apart: strictly below one and decreasing.
        let near = alignment_bound(0, 40, &d, &b);
        let far = alignment_bound(0, 400, &d, &b);
        assert!(near < 1.0 && far < near);
        // Unit cross strength drops the power factor.
        let d1 = det(64, 1.0, 2);
        let expected = 2.0 * b.delta2() * b.f_max() / (40.0 - 1.0);
        assert_relative_eq!(alignment_bound(0, 40, &d1, &b), expected.min(1.0));
    }

    #[test]
    fn alignment_probability_contracts() {
        let d = det(64, 0.75, 2);
        let b = ChannelBounds::new(0.5, 2.0).unwrap();
        let a = DetCodeword::new(vec![0, 10], &d).unwrap();
        let c = DetCodeword::new(vec![0, 42], &d).unwrap();
        let (emp, bound) = alignment_probability(&a, &c, &d, &b, 2000, 3).unwrap();
        assert!((0.0..=1.0).contains(&emp));
        assert!(bound > 0.0);
        // Statistical sanity: empirical below averaged bound plus 3 sigma.
        let se = (emp * (1.0 - emp) / 2000.0).sqrt();
        assert!(emp <= bound + 3.0 * se + 1e-12);

        let same = DetCodeword::new(vec![0, 10], &d).unwrap();
        assert!(matches!(
            alignment_probability(&a, &same, &d, &b, 10, 0),
            Err(Error::IdenticalCodewords)
        ));
        let other_x1 = DetCodeword::new(vec![1, 42], &d).unwrap();
        assert!(matches!(
            alignment_probability(&a, &other_x1, &d, &b, 10, 0),
            Err(Error::ConditioningMismatch)
        ));
        let degenerate = ChannelBounds::new(1.0, 1.0).unwrap();
        assert!(matches!(
            alignment_probability(&a, &c, &d, &degenerate, 10, 0),
            Err(Error::UnboundedDensity)
        ));
    }

    #[test]
    fn entropy_gap_is_zero_for_identical_receivers() {
        // Degenerate magnitude, alpha = 1: both receivers see bijections of
        // the interferer symbol, so the gap vanishes draw by draw.
        let d = det(16, 1.0, 2);
        let b = ChannelBounds::new(1.0, 1.0).unwrap();
        let gap = entropy_gap(&d, &b, 8, 0).unwrap();
        assert_eq!(gap.gap, 0.0);
        assert_eq!(gap.h_y2_given_x1, (17.0f64).log2());
    }

    #[test]
    fn entropy_gap_symmetric_at_unit_cross_strength() {
        // alpha = 1 with i.i.d. gains: the two conditional entropies are
        // exchangeable, so the mean gap sits near zero.
        let d = det(32, 1.0, 2);
        let b = ChannelBounds::new(0.5, 2.0).unwrap();
        let gap = entropy_gap(&d, &b, 400, 7).unwrap();
        assert!(gap.gap.abs() < 0.05, "gap {}", gap.gap);
    }

    #[test]
    fn entropy_gap_determinism_and_guards() {
        let d = det(16, 0.5, 2);
        let b = ChannelBounds::new(0.5, 2.0).unwrap();
        assert_eq!(
            entropy_gap(&d, &b, 16, 3).unwrap(),
            entropy_gap(&d, &b, 16, 3).unwrap()
        );
        assert!(entropy_gap(&d, &b, 0, 3).is_err());
    }

    #[test]
    fn output_excess_near_zero_without_cross_signal() {
        // alpha = 0: cross terms are bounded, receiver 1 is a bijection of
        // its own input plus O(1) interference.
        let d = det(64, 0.0, 2);
        let b = ChannelBounds::new(0.5, 2.0).unwrap();
        let (excess, reference) = output_entropy_excess(&d, &b, 50, 1).unwrap();
        assert_eq!(reference, 0.0);
        assert!(excess.abs() < 1.2, "excess {excess}");
    }

    #[test]
    fn density_swap_identical_laws_vanish() {
        let b = ChannelBounds::new(0.5, 2.0).unwrap();
        let r = density_swap_slope(
            -0.5,
            0.5,
            2,
            &[16, 32, 64],
            &b,
            GainLaw::Uniform,
            GainLaw::Uniform,
            10,
            5,
        )
        .unwrap();
        for row in &r.rows {
            assert_eq!(row.abs_diff, 0.0);
        }
        assert_eq!(r.slope, 0.0);
    }

    #[test]
    fn density_swap_tiny_scale_bounds_cardinality() {
        // p_bar^beta delta2 input_max < 1: quantized terms live in {0, 1}.
        let d = det(16, 0.5, 2);
        let b = ChannelBounds::new(0.5, 2.0).unwrap();
        let h = quantized_sum_entropy(-5.0, &d, &b, GainLaw::Uniform, 20, 2).unwrap();
        assert!(h <= (3.0f64).log2() + 1e-12, "h = {h}");
    }

    #[test]
    fn density_swap_rejects_unbounded_law() {
        let d = det(16, 0.5, 2);
        let degenerate = ChannelBounds::new(1.0, 1.0).unwrap();
        assert!(matches!(
            quantized_sum_entropy(-0.5, &d, &degenerate, GainLaw::Triangular, 4, 0),
            Err(Error::UnboundedDensity)
        ));
    }
}
