//! Frequency-domain memory estimators: log-periodogram regression (GPH and
//! its bias-reduced form), local Whittle and exact local Whittle.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::moments::{fourier_frequencies, PeriodogramPlan};
use crate::optimize::brent_min;
use crate::regress::ols;
use crate::series::{check_finite, mean};
use crate::specfun::{frac_diff_weights, Convolver};
use crate::{Error, Result, SampleLen};

/// Variance inflation of bias-reduced GPH relative to plain GPH, indexed by
/// the number of even-power frequency regressors (Andrews & Guggenberger).
pub const GPH_BR_INFLATION: [f64; 5] = [1.0, 2.25, 3.52, 4.79, 6.06];

/// Default bandwidth exponent: `m = round(T^0.8)`.
pub const DEFAULT_BANDWIDTH_EXPONENT: f64 = 0.8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Gph,
    GphBr,
    Lw,
    Elw,
    FiMle,
    CsaMle,
    LogVar,
    Rs,
}

/// Method-specific extras attached to an estimate.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Aux {
    /// The optimizer stopped on a bound of the search interval.
    pub at_bound: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub objective: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub intercept: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MemoryEstimate {
    pub d_hat: f64,
    pub method: Method,
    pub bandwidth_m: usize,
    pub asy_variance: Option<f64>,
    pub br_order: usize,
    pub aux: Aux,
}

/// `round(T^exponent)` clamped to `[2, ⌊T/2⌋]`.
pub fn default_bandwidth(t: usize, exponent: f64) -> usize {
    let m = (t as f64).powf(exponent).round() as usize;
    m.clamp(2, (t / 2).max(2))
}

fn resolve_bandwidth(t: usize, m: Option<usize>, min: usize) -> Result<usize> {
    let m = m.unwrap_or_else(|| default_bandwidth(t, DEFAULT_BANDWIDTH_EXPONENT));
    if m < min || m > t / 2 {
        return Err(Error::Range(format!(
            "bandwidth m = {m} must lie in [{min}, {}] for T = {t}",
            t / 2
        )));
    }
    Ok(m)
}

fn check_br(br: usize) -> Result<()> {
    if br >= GPH_BR_INFLATION.len() {
        return Err(Error::Range(format!(
            "bias-reduction order {br} exceeds the supported maximum {}",
            GPH_BR_INFLATION.len() - 1
        )));
    }
    Ok(())
}

/// Asymptotic variance `c_br π²/(24m)` of the (bias-reduced) GPH estimator.
/// Depends only on the sample size, so a series or its length may be passed.
pub fn gph_est_variance(x: impl SampleLen, m: Option<usize>, br: usize) -> Result<f64> {
    check_br(br)?;
    let m = resolve_bandwidth(x.sample_len(), m, 1)?;
    Ok(GPH_BR_INFLATION[br] * PI * PI / (24.0 * m as f64))
}

/// Asymptotic variance `1/(4m)` of the local Whittle estimator.
pub fn whittle_est_variance(x: impl SampleLen, m: Option<usize>) -> Result<f64> {
    let m = resolve_bandwidth(x.sample_len(), m, 1)?;
    Ok(1.0 / (4.0 * m as f64))
}

/// Exact local Whittle shares the local Whittle limit law.
pub fn exact_whittle_est_variance(x: impl SampleLen, m: Option<usize>) -> Result<f64> {
    whittle_est_variance(x, m)
}

/// Log-periodogram regression on the lowest `m` Fourier frequencies.
///
/// Regressors are `[1, -2 log λ, λ², …, λ^{2 br}]`; `d_hat` is the coefficient
/// on `-2 log λ`.
pub fn gph_est(x: &[f64], m: Option<usize>, br: usize) -> Result<MemoryEstimate> {
    check_br(br)?;
    check_finite(x)?;
    let t = x.len();
    let m = resolve_bandwidth(t, m, br + 2)?;
    let ordinates = PeriodogramPlan::new(t).ordinates(x, m);
    if let Some(k) = ordinates.iter().position(|&v| !(v > 0.0)) {
        return Err(Error::Degenerate(format!(
            "periodogram ordinate {} is zero; its logarithm is undefined",
            k + 1
        )));
    }
    let lambda = fourier_frequencies(t, m);
    let design = DMatrix::from_fn(m, br + 2, |i, j| match j {
        0 => 1.0,
        1 => -2.0 * lambda[i].ln(),
        _ => lambda[i].powi(2 * (j as i32 - 1)),
    });
    let y: Vec<f64> = ordinates.iter().map(|v| v.ln()).collect();
    let fit = ols(design, &y)?;
    Ok(MemoryEstimate {
        d_hat: fit.coef[1],
        method: if br == 0 { Method::Gph } else { Method::GphBr },
        bandwidth_m: m,
        asy_variance: Some(GPH_BR_INFLATION[br] * PI * PI / (24.0 * m as f64)),
        br_order: br,
        aux: Aux {
            intercept: Some(fit.coef[0]),
            ..Aux::default()
        },
    })
}

/// Local Whittle objective `R(d) = log(mean λ^{2d} I) - 2d mean log λ`.
pub fn whittle_objective(log_lambda: &[f64], ordinates: &[f64], d: f64) -> f64 {
    let g = log_lambda
        .iter()
        .zip(ordinates)
        .map(|(l, i)| (2.0 * d * l).exp() * i)
        .sum::<f64>()
        / ordinates.len() as f64;
    g.ln() - 2.0 * d * mean(log_lambda)
}

pub(crate) const LW_LOWER: f64 = -0.5 + 1e-4;
pub(crate) const LW_UPPER: f64 = 1.0;
pub(crate) const ELW_LOWER: f64 = -1.0;
pub(crate) const ELW_UPPER: f64 = 2.0;
const XTOL: f64 = 1e-8;

/// Local Whittle estimate over `d ∈ [-0.5 + 1e-4, 1]`.
pub fn whittle_est(x: &[f64], m: Option<usize>) -> Result<MemoryEstimate> {
    check_finite(x)?;
    let t = x.len();
    let m = resolve_bandwidth(t, m, 2)?;
    let ordinates = PeriodogramPlan::new(t).ordinates(x, m);
    if ordinates.iter().all(|&v| v == 0.0) {
        return Err(Error::Degenerate("periodogram vanishes on the bandwidth".into()));
    }
    let log_lambda: Vec<f64> = fourier_frequencies(t, m).iter().map(|l| l.ln()).collect();
    let r = brent_min(|d| whittle_objective(&log_lambda, &ordinates, d), LW_LOWER, LW_UPPER, XTOL);
    Ok(MemoryEstimate {
        d_hat: r.x,
        method: Method::Lw,
        bandwidth_m: m,
        asy_variance: Some(1.0 / (4.0 * m as f64)),
        br_order: 0,
        aux: Aux {
            at_bound: r.at_bound,
            objective: Some(r.fx),
            intercept: None,
        },
    })
}

/// Evaluates the exact local Whittle objective for a fixed series and bandwidth.
pub struct ElwObjective {
    n: usize,
    m: usize,
    conv: Convolver,
    spectrum: Vec<rustfft::num_complex::Complex<f64>>,
    plan: PeriodogramPlan,
    mean_log_lambda: f64,
}

impl ElwObjective {
    /// Demeans `x` and prepares the transforms.
    pub fn new(x: &[f64], m: usize) -> Self {
        let n = x.len();
        let mu = mean(x);
        let centered: Vec<f64> = x.iter().map(|v| v - mu).collect();
        let conv = Convolver::new(n);
        let spectrum = conv.spectrum(&centered);
        let log_lambda: Vec<f64> = fourier_frequencies(n, m).iter().map(|l| l.ln()).collect();
        ElwObjective {
            n,
            m,
            spectrum,
            conv,
            plan: PeriodogramPlan::new(n),
            mean_log_lambda: mean(&log_lambda),
        }
    }

    /// `log(mean I_{Δ^d x}(λ_k)) - 2d mean log λ_k`.
    pub fn eval(&self, d: f64) -> f64 {
        let weights = frac_diff_weights(self.n, d);
        let filtered = self.conv.convolve_spectra(&self.spectrum, &self.conv.spectrum(&weights));
        let ordinates = self.plan.ordinates(&filtered, self.m);
        (ordinates.iter().sum::<f64>() / self.m as f64).ln() - 2.0 * d * self.mean_log_lambda
    }
}

/// Exact local Whittle on the demeaned series, `d ∈ [-1, 2]`.
pub fn exact_whittle_est(x: &[f64], m: Option<usize>) -> Result<MemoryEstimate> {
    check_finite(x)?;
    let t = x.len();
    let m = resolve_bandwidth(t, m, 2)?;
    let mu = mean(x);
    if x.iter().all(|v| *v == mu) {
        return Err(Error::Degenerate("series has zero variance".into()));
    }
    let objective = ElwObjective::new(x, m);
    let r = brent_min(|d| objective.eval(d), ELW_LOWER, ELW_UPPER, XTOL);
    Ok(MemoryEstimate {
        d_hat: r.x,
        method: Method::Elw,
        bandwidth_m: m,
        asy_variance: Some(1.0 / (4.0 * m as f64)),
        br_order: 0,
        aux: Aux {
            at_bound: r.at_bound,
            objective: Some(r.fx),
            intercept: None,
        },
    })
}
