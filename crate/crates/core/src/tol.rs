//! Centralized numeric tolerances.
//!
//! Everything runs in `f64`. The two base tolerances below are used across the
//! crate; per-check thresholds (identity checks, bound slack) live with their
//! checks but build on these.

/// Tolerance for exact-identity checks, e.g. probability vectors summing to 1.
pub const IDENTITY_TOL: f64 = 1e-9;

/// Tolerance for metric comparisons, e.g. TV distance of equal distributions.
pub const METRIC_TOL: f64 = 1e-12;

/// Sums a slice in a fixed pairwise order.
///
/// Deterministic regardless of thread count (callers parallelize across
/// records/replicates and reduce through this), and more accurate than a
/// left-to-right fold on long inputs.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let (lo, hi) = values.split_at(n / 2);
            pairwise_sum(lo) + pairwise_sum(hi)
        }
    }
}

/// Mean via [`pairwise_sum`]; 0.0 on empty input is the caller's problem.
pub fn pairwise_mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    pairwise_sum(values) / values.len() as f64
}

/// Sample standard deviation (n - 1 denominator); 0.0 for fewer than 2 values.
pub fn sample_std(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let mean = pairwise_mean(values);
    let sq: Vec<f64> = values.iter().map(|v| (v - mean) * (v - mean)).collect();
    (pairwise_sum(&sq) / (values.len() - 1) as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_sum_matches_naive() {
        let xs: Vec<f64> = (0..1001).map(|i| i as f64 * 0.25).collect();
        let naive: f64 = xs.iter().sum();
        assert!((pairwise_sum(&xs) - naive).abs() < 1e-9);
    }

    #[test]
    fn sample_std_of_constant_is_zero() {
        assert_eq!(sample_std(&[2.0, 2.0, 2.0]), 0.0);
    }
}
