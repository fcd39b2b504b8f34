//! Sample and theoretical second moments.

use std::f64::consts::PI;
use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::series::{check_finite, mean};
use crate::specfun::{check_beta_shape, check_memory, ln_beta_pos, ln_gamma_pos};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AcfKind {
    Sample,
    TheoreticalFi,
    TheoreticalCsa,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AcfResult {
    pub lags: Vec<usize>,
    pub values: Vec<f64>,
    pub kind: AcfKind,
}

/// Periodogram at the Fourier frequencies `2πk/T`, `k = 1..⌊T/2⌋`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Periodogram {
    pub frequencies: Vec<f64>,
    pub ordinates: Vec<f64>,
}

/// Biased sample autocovariance (divisor `T`) at lags `0..K-1`.
pub fn autocovariance(x: &[f64], k: usize) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(Error::Empty("number of lags K must be positive"));
    }
    if k > x.len() {
        return Err(Error::Range(format!(
            "{k} lags requested from a series of length {}",
            x.len()
        )));
    }
    check_finite(x)?;
    let n = x.len();
    let m = mean(x);
    let dev: Vec<f64> = x.iter().map(|v| v - m).collect();
    Ok((0..k)
        .map(|lag| {
            dev[..n - lag]
                .iter()
                .zip(&dev[lag..])
                .map(|(a, b)| a * b)
                .sum::<f64>()
                / n as f64
        })
        .collect())
}

/// Sample autocorrelation at lags `0..K-1`.
pub fn autocorrelation(x: &[f64], k: usize) -> Result<AcfResult> {
    let acv = autocovariance(x, k)?;
    let g0 = acv[0];
    if !(g0 > 0.0) {
        return Err(Error::Degenerate("series has zero variance".into()));
    }
    Ok(AcfResult {
        lags: (0..k).collect(),
        values: acv.iter().map(|g| g / g0).collect(),
        kind: AcfKind::Sample,
    })
}

pub(crate) fn fi_acf(k: usize, d: f64) -> Vec<f64> {
    let mut rho = Vec::with_capacity(k);
    if k == 0 {
        return rho;
    }
    rho.push(1.0);
    for i in 1..k {
        let j = i as f64;
        rho.push(rho[i - 1] * (j - 1.0 + d) / (j - d));
    }
    rho
}

/// `Γ(1-2d) / Γ(1-d)²`, the variance of FI(d) with unit innovations.
pub(crate) fn fi_unit_variance(d: f64) -> f64 {
    (ln_gamma_pos(1.0 - 2.0 * d) - 2.0 * ln_gamma_pos(1.0 - d)).exp()
}

/// Autocorrelations of FI(d): `ρ(k) = Γ(k+d)Γ(1-d) / (Γ(k-d+1)Γ(d))`.
pub fn fi_cor_vals(k: usize, d: f64) -> Result<AcfResult> {
    if k == 0 {
        return Err(Error::Empty("number of lags K must be positive"));
    }
    check_memory(d)?;
    Ok(AcfResult {
        lags: (0..k).collect(),
        values: fi_acf(k, d),
        kind: AcfKind::TheoreticalFi,
    })
}

/// Autocovariances of FI(d) with innovation standard deviation `sigma`.
pub fn fi_var_vals(k: usize, d: f64, sigma: f64) -> Result<Vec<f64>> {
    check_sigma(sigma)?;
    let rho = fi_cor_vals(k, d)?.values;
    let g0 = sigma * sigma * fi_unit_variance(d);
    Ok(rho.into_iter().map(|r| g0 * r).collect())
}

pub(crate) fn csa_acf(k: usize, p: f64, q: f64) -> Vec<f64> {
    let mut rho = Vec::with_capacity(k);
    if k == 0 {
        return rho;
    }
    rho.push(1.0);
    if k > 1 {
        rho.push((ln_beta_pos(p + 0.5, q - 1.0) - ln_beta_pos(p, q - 1.0)).exp());
    }
    // B(a+1, b) / B(a, b) = a / (a + b), stepping k by two
    for i in 2..k {
        let a = p + (i - 2) as f64 / 2.0;
        rho.push(rho[i - 2] * a / (a + q - 1.0));
    }
    rho
}

/// Limit autocorrelations of the aggregated AR(1) cross-section:
/// `ρ(k) = B(p + k/2, q - 1) / B(p, q - 1)`.
pub fn csa_cor_vals(k: usize, p: f64, q: f64) -> Result<AcfResult> {
    if k == 0 {
        return Err(Error::Empty("number of lags K must be positive"));
    }
    check_beta_shape(p, q)?;
    Ok(AcfResult {
        lags: (0..k).collect(),
        values: csa_acf(k, p, q),
        kind: AcfKind::TheoreticalCsa,
    })
}

/// `γ(0)/σ² = B(p, q-1) / B(p, q) = (p + q - 1) / (q - 1)`.
pub(crate) fn csa_unit_variance(p: f64, q: f64) -> f64 {
    (p + q - 1.0) / (q - 1.0)
}

/// Limit autocovariances, `γ(k) = σ² B(p + k/2, q - 1) / B(p, q)`.
///
/// Each unit has variance `σ²/(1-α²)` and lag-k covariance `α^k` times that;
/// averaging over `α² ~ Beta(p, q)` gives the beta-function ratio.
pub fn csa_var_vals(k: usize, p: f64, q: f64, sigma: f64) -> Result<Vec<f64>> {
    check_sigma(sigma)?;
    let rho = csa_cor_vals(k, p, q)?.values;
    let g0 = sigma * sigma * csa_unit_variance(p, q);
    Ok(rho.into_iter().map(|r| g0 * r).collect())
}

pub(crate) fn check_sigma(sigma: f64) -> Result<()> {
    if sigma > 0.0 && sigma.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("sigma", sigma, "(0, inf)"))
    }
}

/// Reusable DFT plan for periodograms of a fixed length.
pub(crate) struct PeriodogramPlan {
    n: usize,
    fft: Arc<dyn Fft<f64>>,
}

impl PeriodogramPlan {
    pub(crate) fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        PeriodogramPlan {
            n,
            fft: planner.plan_fft_forward(n),
        }
    }

    /// `I(λ_k) = |Σ x_t e^{-iλ_k t}|² / (2πT)` for `k = 1..=m`.
    pub(crate) fn ordinates(&self, x: &[f64], m: usize) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.n);
        let mut buf: Vec<Complex<f64>> = x.iter().map(|&v| Complex::new(v, 0.0)).collect();
        self.fft.process(&mut buf);
        let scale = 1.0 / (2.0 * PI * self.n as f64);
        buf[1..=m].iter().map(|z| z.norm_sqr() * scale).collect()
    }
}

pub(crate) fn fourier_frequencies(n: usize, m: usize) -> Vec<f64> {
    (1..=m).map(|k| 2.0 * PI * k as f64 / n as f64).collect()
}

/// Periodogram computed by FFT, normalized by `1/(2πT)`.
pub fn periodogram(x: &[f64]) -> Result<Periodogram> {
    let n = x.len();
    if n < 2 {
        return Err(Error::Degenerate(format!(
            "periodogram needs at least 2 observations, got {n}"
        )));
    }
    check_finite(x)?;
    let m = n / 2;
    Ok(Periodogram {
        frequencies: fourier_frequencies(n, m),
        ordinates: PeriodogramPlan::new(n).ordinates(x, m),
    })
}
