//! Parametric estimation: concentrated Gaussian MLE for FI(d) and
//! cross-sectionally aggregated processes, and the HAR regression.
//!
//! Both likelihoods use the autocovariances of the model with unit
//! innovation variance, so `quadform / T` at the optimum is the innovation
//! variance and `sigma` is reported on the innovation scale.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::moments::csa_var_vals;
use crate::optimize::{brent_min, nelder_mead_box};
use crate::regress::ols;
use crate::series::{check_finite, mean};
use crate::toeplitz::{fi_loglik_terms, FiLoglik, LoglikTerms, ToeplitzGram};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FIParams {
    pub d: f64,
    /// Innovation standard deviation.
    pub sigma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CSAParams {
    pub p: f64,
    pub q: f64,
    /// Innovation standard deviation.
    pub sigma: f64,
}

impl CSAParams {
    /// Memory parameter implied by the beta tail, `d = 1 - q/2`.
    pub fn implied_d(&self) -> f64 {
        1.0 - self.q / 2.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HARModel {
    pub lags: Vec<usize>,
    /// `[a_0, a_1, …]`: intercept, then one coefficient per lag.
    pub coefficients: Vec<f64>,
    /// Residual standard deviation.
    pub sigma: f64,
    /// Number of regression rows.
    pub n_obs: usize,
}

pub const DEFAULT_HAR_LAGS: [usize; 3] = [1, 5, 22];

pub const FI_D_LOWER: f64 = -0.5 + 1e-4;
pub const FI_D_UPPER: f64 = 0.5 - 1e-4;
pub const CSA_LOWER: f64 = 1.0 + 1e-6;
pub const CSA_UPPER: f64 = 50.0;

/// MLE output with optimizer diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MleFit<P> {
    pub params: P,
    /// Minimized concentrated objective.
    pub objective: f64,
    /// Per-parameter flag: the estimate sits on a bound of the search box.
    pub at_bound: Vec<bool>,
    pub evaluations: usize,
}

fn prepare(x: &[f64]) -> Result<Vec<f64>> {
    if x.len() < 10 {
        return Err(Error::Range(format!(
            "maximum likelihood needs at least 10 observations, got {}",
            x.len()
        )));
    }
    check_finite(x)?;
    let mu = mean(x);
    let centered: Vec<f64> = x.iter().map(|v| v - mu).collect();
    if centered.iter().all(|v| *v == 0.0) {
        return Err(Error::Degenerate("series has zero variance".into()));
    }
    Ok(centered)
}

fn objective_or_inf(terms: Result<LoglikTerms>, t: usize) -> f64 {
    match terms {
        Ok(terms) => terms.concentrated(t),
        Err(_) => f64::INFINITY,
    }
}

/// Concentrated FI objective at `d` for a demeaned series.
pub fn fi_objective(x: &[f64], d: f64) -> f64 {
    objective_or_inf(fi_loglik_terms(x, d), x.len())
}

/// FI(d) maximum likelihood on the demeaned series, `d` searched in
/// `(-0.5 + 1e-4, 0.5 - 1e-4)`.
pub fn fi_mle_fit(x: &[f64]) -> Result<MleFit<FIParams>> {
    let x = prepare(x)?;
    let lik = FiLoglik::new(&x)?;
    let t = x.len();
    let r = brent_min(|d| objective_or_inf(lik.terms(d), t), FI_D_LOWER, FI_D_UPPER, 1e-8);
    let terms = lik.terms(r.x)?;
    Ok(MleFit {
        params: FIParams {
            d: r.x,
            sigma: (terms.quadform / x.len() as f64).sqrt(),
        },
        objective: r.fx,
        at_bound: vec![r.at_bound],
        evaluations: r.evaluations,
    })
}

pub fn fi_mle_est(x: &[f64]) -> Result<FIParams> {
    fi_mle_fit(x).map(|f| f.params)
}

fn csa_terms(x: &[f64], p: f64, q: f64) -> Result<LoglikTerms> {
    ToeplitzGram::new(csa_var_vals(x.len(), p, q, 1.0)?)?.loglik_terms(x)
}

/// Concentrated CSA objective at `(p, q)` for a demeaned series.
pub fn csa_objective(x: &[f64], p: f64, q: f64) -> f64 {
    objective_or_inf(csa_terms(x, p, q), x.len())
}

/// Cross-sectional aggregation MLE on the demeaned series: Nelder–Mead in the
/// box `[1 + 1e-6, 50]²` started at `(1.5, 1.5)`.
pub fn csa_mle_fit(x: &[f64]) -> Result<MleFit<CSAParams>> {
    let x = prepare(x)?;
    let r = nelder_mead_box(
        |v| csa_objective(&x, v[0], v[1]),
        &[1.5, 1.5],
        &[CSA_LOWER, CSA_LOWER],
        &[CSA_UPPER, CSA_UPPER],
        0.25,
        1e-8,
        2000,
    );
    if !r.fx.is_finite() {
        return Err(Error::Numerical("CSA likelihood is not finite anywhere on the search path".into()));
    }
    let (p, q) = (r.x[0], r.x[1]);
    let terms = csa_terms(&x, p, q)?;
    Ok(MleFit {
        params: CSAParams {
            p,
            q,
            sigma: (terms.quadform / x.len() as f64).sqrt(),
        },
        objective: r.fx,
        at_bound: r.at_bound,
        evaluations: r.evaluations,
    })
}

pub fn csa_mle_est(x: &[f64]) -> Result<CSAParams> {
    csa_mle_fit(x).map(|f| f.params)
}

fn check_lags(t: usize, lags: &[usize]) -> Result<usize> {
    if lags.is_empty() {
        return Err(Error::Empty("HAR needs at least one lag"));
    }
    if lags.contains(&0) {
        return Err(Error::Range("HAR lags must be positive".into()));
    }
    let max_lag = *lags.iter().max().unwrap();
    if t <= max_lag + 10 {
        return Err(Error::Range(format!(
            "HAR with maximum lag {max_lag} needs more than {} observations, got {t}",
            max_lag + 10
        )));
    }
    Ok(max_lag)
}

/// Trailing mean `(1/L) Σ_{i=1}^{L} x_{t-i}` from prefix sums `c`.
#[inline]
pub(crate) fn trailing_mean(c: &[f64], t: usize, lag: usize) -> f64 {
    (c[t] - c[t - lag]) / lag as f64
}

/// HAR regression of `x_t` on an intercept and trailing means over each lag
/// horizon, fitted by OLS on rows `t = max(lags) .. T-1`.
pub fn har_est(x: &[f64], lags: &[usize]) -> Result<HARModel> {
    check_finite(x)?;
    let t = x.len();
    let max_lag = check_lags(t, lags)?;
    let mut c = vec![0.0; t + 1];
    for (i, v) in x.iter().enumerate() {
        c[i + 1] = c[i] + v;
    }
    let rows = t - max_lag;
    let design = DMatrix::from_fn(rows, lags.len() + 1, |i, j| {
        if j == 0 {
            1.0
        } else {
            trailing_mean(&c, max_lag + i, lags[j - 1])
        }
    });
    let fit = ols(design, &x[max_lag..])?;
    let dof = rows - lags.len() - 1;
    Ok(HARModel {
        lags: lags.to_vec(),
        coefficients: fit.coef,
        sigma: (fit.rss / dof as f64).sqrt(),
        n_obs: rows,
    })
}
