//! Property tests crossing module boundaries: the regime partition, curve
//! identities, the quantization sandwich and MAC-region agreement with an
//! independently coded checker.

use gdof_lab::*;
use proptest::prelude::*;

/// Independent exhaustive-subset checker, written as a recursive walk over
/// subsets rather than a bitmask loop, with the same clamped bounds and
/// boundary closure as the library.
fn mac_feasible_reference(targets: &[f64], alpha: f64, variant: MacVariant) -> bool {
    const EPS: f64 = 1e-12;
    fn subset_sums(targets: &[f64]) -> Vec<(f64, bool, bool)> {
        // (sum, contains index 0, nonempty) over all subsets.
        let mut acc = vec![(0.0, false, false)];
        for (i, &t) in targets.iter().enumerate() {
            let mut next = Vec::with_capacity(acc.len() * 2);
            for &(sum, has0, nonempty) in &acc {
                next.push((sum, has0, nonempty));
                next.push((sum + t, has0 || i == 0, true));
            }
            acc = next;
        }
        acc
    }
    let cross_cap = (2.0 * alpha - 1.0).max(0.0);
    for (sum, has0, nonempty) in subset_sums(targets) {
        if !nonempty {
            continue;
        }
        let cap = match variant {
            MacVariant::WeakRemainder => cross_cap,
            MacVariant::ModeratePublic => {
                if has0 {
                    alpha
                } else {
                    cross_cap
                }
            }
            MacVariant::StrongAll => alpha,
        };
        if sum > cap + EPS {
            return false;
        }
    }
    if variant == MacVariant::StrongAll && !targets.is_empty() && targets[0] > 1.0 + EPS {
        return false;
    }
    true
}

proptest! {
    #[test]
    fn regime_partition_is_exhaustive_and_exclusive(k in 2usize..=10, alpha in 0.0f64..12.0) {
        let p = SystemParams::new(k, alpha).unwrap();
        let kf = k as f64;
        let expected = if alpha <= 0.5 {
            Regime::VeryWeak
        } else if alpha <= kf / (kf + 1.0) {
            Regime::Weak
        } else if alpha <= 1.0 {
            Regime::Moderate
        } else if alpha <= kf {
            Regime::Strong
        } else {
            Regime::VeryStrong
        };
        prop_assert_eq!(classify_regime(&p), expected);

        let d = gdof_finite_precision(&p).d_per_user;
        prop_assert!((0.0..=1.0).contains(&d));
        prop_assert!(gdof_gap(&p) >= 0.0);
    }

    #[test]
    fn two_user_curves_coincide(alpha in 0.0f64..12.0) {
        let p = SystemParams::new(2, alpha).unwrap();
        let finite = gdof_finite_precision(&p).d_per_user;
        let perfect = gdof_perfect_csit(alpha).unwrap().d_per_user;
        prop_assert_eq!(finite, perfect);
    }

    #[test]
    fn quantization_sandwich(a in 1e-3f64..1e6, b in 1e-3f64..1e4) {
        // ceil(A) <= ceil(B * ceil(A/B)) < ceil(A) + B + 1: quantizing twice
        // through a coarser grid never loses more than one coarse cell.
        let once = a.ceil();
        let twice = (b * (a / b).ceil()).ceil();
        prop_assert!(once <= twice);
        prop_assert!(twice < once + b + 1.0);
    }

    #[test]
    fn mac_agrees_with_reference(
        targets in prop::collection::vec(0.0f64..1.5, 1..=6),
        alpha in 0.0f64..3.0,
        which in 0usize..3,
    ) {
        let variant = [
            MacVariant::WeakRemainder,
            MacVariant::ModeratePublic,
            MacVariant::StrongAll,
        ][which];
        let lib = mac_feasible(&targets, alpha, variant).unwrap();
        prop_assert_eq!(lib, mac_feasible_reference(&targets, alpha, variant));
    }

    #[test]
    fn scheme_layers_are_consistent(k in 2usize..=8, alpha in 0.0f64..10.0) {
        let p = SystemParams::new(k, alpha).unwrap();
        let s = scheme_for_regime(&p);
        prop_assert!(s.private_gdof >= 0.0);
        prop_assert!(s.public_gdof >= 0.0);
        let d = gdof_finite_precision(&p).d_per_user;
        prop_assert!((s.private_gdof + s.public_gdof - d).abs() <= 1e-12);
        if !s.has_private() {
            prop_assert_eq!(s.private_gdof, 0.0);
        }
        if !s.has_public() {
            prop_assert_eq!(s.public_gdof, 0.0);
        }
    }

    #[test]
    fn channel_draws_deterministic_and_bounded(seed in any::<u64>()) {
        let p = SystemParams::new(3, 0.7).unwrap();
        let b = ChannelBounds::new(0.5, 2.0).unwrap();
        let a = draw_channel(&p, &b, seed);
        let c = draw_channel(&p, &b, seed);
        prop_assert_eq!(&a, &c);
        for rx in 0..3 {
            for tx in 0..3 {
                let m = a.gain(rx, tx).abs();
                prop_assert!((0.5..=2.0).contains(&m));
            }
        }
    }
}

#[test]
fn symmetric_public_point_feasibility_tracks_the_regime() {
    // The all-public symmetric point (alpha/K each) enters the joint-decode
    // region exactly at the weak/moderate boundary.
    for k in 2..=6usize {
        let kf = k as f64;
        let boundary = kf / (kf + 1.0);
        for &offset in &[-0.02, 0.02] {
            let alpha = boundary + offset;
            let point = vec![alpha / kf; k];
            let feasible = mac_feasible(&point, alpha, MacVariant::ModeratePublic).unwrap();
            assert_eq!(feasible, offset > 0.0, "K={k} alpha={alpha}");
        }
    }
}
