//! Small numeric helpers: least-squares slopes, moments, exact entropy of a
//! counted distribution.

use std::collections::BTreeMap;

/// Slope of the least-squares line through `(xs[i], ys[i])`.
///
/// Panics if the slices differ in length or hold fewer than two points.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len(), "mismatched sample lengths");
    assert!(xs.len() >= 2, "slope needs at least two points");
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    num / den
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Population standard deviation; zero for a single sample.
pub fn population_std(xs: &[f64]) -> f64 {
    let m = mean(xs);
    (xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / xs.len() as f64).sqrt()
}

/// Exact Shannon entropy in bits of the distribution given by integer
/// counts. Iteration is in key order, so the result is bit-identical for a
/// given distribution regardless of how it was assembled.
pub fn entropy_bits(counts: &BTreeMap<i64, u64>) -> f64 {
    let total: u64 = counts.values().sum();
    assert!(total > 0, "entropy of an empty distribution");
    let total_f = total as f64;
    let mut weighted = 0.0;
    for &c in counts.values() {
        if c > 0 {
            weighted += c as f64 * (c as f64).log2();
        }
    }
    total_f.log2() - weighted / total_f
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn slope_of_a_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 - 0.25 * x).collect();
        assert_relative_eq!(least_squares_slope(&xs, &ys), -0.25, max_relative = 1e-12);
    }

    #[test]
    fn entropy_of_known_distributions() {
        let point: BTreeMap<i64, u64> = [(5, 17)].into_iter().collect();
        assert_eq!(entropy_bits(&point), 0.0);

        let uniform: BTreeMap<i64, u64> = (0..8).map(|v| (v, 3)).collect();
        assert_relative_eq!(entropy_bits(&uniform), 3.0, max_relative = 1e-12);

        let skewed: BTreeMap<i64, u64> = [(0, 3), (1, 1)].into_iter().collect();
        // H(3/4, 1/4) = 2 - (3/4) log2 3
        assert_relative_eq!(
            entropy_bits(&skewed),
            2.0 - 0.75 * 3.0f64.log2(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn std_degenerate_cases() {
        assert_eq!(population_std(&[4.2]), 0.0);
        assert_relative_eq!(population_std(&[1.0, 3.0]), 1.0, max_relative = 1e-12);
    }
}
