//! Log-variance and rescaled-range (R/S) scaling regressions.

use serde::{Deserialize, Serialize};

use crate::series::{check_finite, mean};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalingMethod {
    LogVariance,
    RescaledRange,
}

/// Log-log regression of a scale statistic on subsample size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingRegression {
    pub log_sizes: Vec<f64>,
    pub log_stats: Vec<f64>,
    pub slope: f64,
    pub intercept: f64,
    pub implied_d: f64,
    pub method: ScalingMethod,
}

/// Up to `count` distinct integers spaced geometrically over `[lo, hi]`.
pub fn geometric_sizes(lo: usize, hi: usize, count: usize) -> Vec<usize> {
    if count == 0 || hi < lo {
        return Vec::new();
    }
    if count == 1 || hi == lo {
        return vec![lo];
    }
    let ratio = (hi as f64 / lo as f64).ln() / (count - 1) as f64;
    let mut sizes: Vec<usize> = (0..count)
        .map(|j| ((lo as f64) * (ratio * j as f64).exp()).round() as usize)
        .map(|n| n.clamp(lo, hi))
        .collect();
    sizes.dedup();
    sizes
}

/// OLS slope and intercept of `y` on `x`.
pub(crate) fn ols_line(x: &[f64], y: &[f64]) -> (f64, f64) {
    let mx = mean(x);
    let my = mean(y);
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

fn finish(
    sizes: &[usize],
    stats: Vec<f64>,
    method: ScalingMethod,
    implied: impl Fn(f64) -> f64,
) -> Result<ScalingRegression> {
    if sizes.len() < 2 {
        return Err(Error::Range(format!(
            "need at least 2 distinct subsample sizes, got {}",
            sizes.len()
        )));
    }
    let log_sizes: Vec<f64> = sizes.iter().map(|&n| (n as f64).ln()).collect();
    let log_stats: Vec<f64> = stats.iter().map(|v| v.ln()).collect();
    let (slope, intercept) = ols_line(&log_sizes, &log_stats);
    Ok(ScalingRegression {
        log_sizes,
        log_stats,
        slope,
        intercept,
        implied_d: implied(slope),
        method,
    })
}

fn check_nonconstant(x: &[f64]) -> Result<()> {
    check_finite(x)?;
    let m = mean(x);
    if x.iter().all(|v| (v - m).abs() == 0.0) {
        return Err(Error::Degenerate("series has zero variance".into()));
    }
    Ok(())
}

/// Variance of block means against block size, `m` geometrically spaced sizes
/// in `[10, ⌊T/2⌋]`. The slope estimates `2d - 1`.
pub fn log_variance_est(x: &[f64], m: usize) -> Result<ScalingRegression> {
    let t = x.len();
    let hi = t / 2;
    if m < 2 || m > hi {
        return Err(Error::Range(format!("m = {m} must lie in [2, {hi}] for T = {t}")));
    }
    check_nonconstant(x)?;
    let sizes = geometric_sizes(10.min(hi), hi, m);
    let mut stats = Vec::with_capacity(sizes.len());
    for &n in &sizes {
        let blocks = t / n;
        let means: Vec<f64> = x[..blocks * n]
            .chunks_exact(n)
            .map(|c| c.iter().sum::<f64>() / n as f64)
            .collect();
        let mu = mean(&means);
        let var = means.iter().map(|v| (v - mu).powi(2)).sum::<f64>() / (blocks as f64 - 1.0);
        if !(var > 0.0) {
            return Err(Error::Degenerate(format!("block means of size {n} have zero variance")));
        }
        stats.push(var);
    }
    finish(&sizes, stats, ScalingMethod::LogVariance, |s| (s + 1.0) / 2.0)
}

/// Rescaled range `R/S` of the first `n` observations.
pub(crate) fn rescaled_range(w: &[f64]) -> f64 {
    let n = w.len() as f64;
    let mu = mean(w);
    let (mut acc, mut lo, mut hi) = (0.0f64, f64::INFINITY, f64::NEG_INFINITY);
    let mut ss = 0.0;
    for v in w {
        let dev = v - mu;
        acc += dev;
        lo = lo.min(acc);
        hi = hi.max(acc);
        ss += dev * dev;
    }
    (hi - lo) / (ss / (n - 1.0)).sqrt()
}

/// R/S statistic over `k` prefix windows with sizes geometrically spaced in
/// `[10, T]`. The slope estimates the Hurst exponent `H = d + 1/2`.
pub fn rescaled_range_est(x: &[f64], k: usize) -> Result<ScalingRegression> {
    let t = x.len();
    if k < 4 {
        return Err(Error::Range(format!("k = {k} must be at least 4")));
    }
    if t < 4 {
        return Err(Error::Range(format!("T = {t} is below the minimum window size 4")));
    }
    check_finite(x)?;
    let sizes = geometric_sizes(10.min(t), t, k);
    let mut stats = Vec::with_capacity(sizes.len());
    for &n in &sizes {
        let rs = rescaled_range(&x[..n]);
        if !(rs.is_finite() && rs > 0.0) {
            return Err(Error::Degenerate(format!("window of size {n} has zero standard deviation")));
        }
        stats.push(rs);
    }
    finish(&sizes, stats, ScalingMethod::RescaledRange, |s| s - 0.5)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{fi_gen, gaussian_noise};
    use crate::RngSpec;

    #[test]
    fn sizes_are_distinct_and_bounded() {
        let s = geometric_sizes(10, 331, 300);
        assert_eq!(s[0], 10);
        assert_eq!(*s.last().unwrap(), 331);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(geometric_sizes(10, 1000, 3), vec![10, 100, 1000]);
    }

    #[test]
    fn white_noise_log_variance() {
        let x = gaussian_noise(&mut RngSpec::new(1).rng(), 100_000, 1.0);
        let r = log_variance_est(&x, 100).unwrap();
        assert!((r.slope + 1.0).abs() < 0.1, "{}", r.slope);
        assert!(r.implied_d.abs() < 0.05, "{}", r.implied_d);
    }

    #[test]
    fn fi_log_variance_slope() {
        // single paths scatter widely because the sizes near T/2 leave only
        // two or three blocks; average over replications
        let reps = 8;
        let mean_slope = (0..reps)
            .map(|s| {
                let x = fi_gen(100_000, 0.3, 1.0, &RngSpec::new(200 + s)).unwrap();
                log_variance_est(&x, 100).unwrap().slope
            })
            .sum::<f64>()
            / reps as f64;
        assert!((mean_slope + 0.4).abs() < 0.15, "{mean_slope}");
    }

    #[test]
    fn white_noise_rs() {
        let x = gaussian_noise(&mut RngSpec::new(3).rng(), 100_000, 1.0);
        let r = rescaled_range_est(&x, 100).unwrap();
        assert!(r.implied_d.abs() < 0.05, "{}", r.implied_d);
    }

    #[test]
    fn trend_rs_hits_upper_boundary() {
        let x: Vec<f64> = (1..=2000).map(|t| t as f64).collect();
        let r = rescaled_range_est(&x, 50).unwrap();
        assert!((r.implied_d - 0.5).abs() < 0.01, "{}", r.implied_d);
    }

    #[test]
    fn rs_of_small_window_by_hand() {
        // x = [1, 3, 2, 6]: mean 3, partial sums -2, -2, -3, 0; R = 3
        // S² = (4 + 0 + 1 + 9)/3
        let rs = rescaled_range(&[1.0, 3.0, 2.0, 6.0]);
        assert!((rs - 3.0 / (14.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn affine_invariance() {
        let x = fi_gen(5000, 0.2, 1.0, &RngSpec::new(4)).unwrap();
        let y: Vec<f64> = x.iter().map(|v| 3.0 - 2.5 * v).collect();
        for (a, b) in [
            (log_variance_est(&x, 50).unwrap(), log_variance_est(&y, 50).unwrap()),
            (rescaled_range_est(&x, 50).unwrap(), rescaled_range_est(&y, 50).unwrap()),
        ] {
            assert!((a.slope - b.slope).abs() < 1e-10);
            assert!((a.implied_d - b.implied_d).abs() < 1e-10);
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(log_variance_est(&[1.0; 100], 10), Err(Error::Degenerate(_))));
        assert!(matches!(log_variance_est(&[1.0, 2.0, 3.0, 4.0], 3), Err(Error::Range(_))));
        assert!(matches!(rescaled_range_est(&[1.0; 100], 10), Err(Error::Degenerate(_))));
        assert!(matches!(rescaled_range_est(&[1.0, 2.0], 10), Err(Error::Range(_))));
    }
}
