//! Multi-step forecasts with 95% bands for FI, CSA and HAR models.
//!
//! FI and CSA forecasts treat the input as a zero-mean series; demean first
//! and use [`Forecast::with_mean`] to return to the original level. Bands take
//! the model parameters as known and use the cumulative MA variance
//! `σ² Σ_{i<j} m_i²` at horizon `j`.

use serde::{Deserialize, Serialize};

use crate::moments::check_sigma;
use crate::param::{har_est, CSAParams, FIParams, HARModel};
use crate::series::check_finite;
use crate::specfun::{check_beta_shape, check_memory, csa_ma_coefs, fi_ar_coefs, fi_ma_coefs};
use crate::moments::csa_var_vals;
use crate::toeplitz::ToeplitzGram;
use crate::{Error, Result};

/// Two-sided 95% Gaussian quantile.
pub const Z95: f64 = 1.96;

/// Largest Yule–Walker order used for CSA forecasts.
pub const CSA_YW_MAX_ORDER: usize = 500;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ForecastModel {
    Fi(FIParams),
    Csa(CSAParams),
    Har(HARModel),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Forecast {
    pub history_length: usize,
    pub horizon: usize,
    pub point: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub model: ForecastModel,
}

impl Forecast {
    /// Shifts point path and bands by `mu`.
    pub fn with_mean(mut self, mu: f64) -> Self {
        for v in self
            .point
            .iter_mut()
            .chain(self.lower.iter_mut())
            .chain(self.upper.iter_mut())
        {
            *v += mu;
        }
        self
    }

    /// `upper - lower` at each horizon.
    pub fn band_widths(&self) -> Vec<f64> {
        self.upper.iter().zip(&self.lower).map(|(u, l)| u - l).collect()
    }
}

fn check_inputs(x: &[f64], h: usize, min_len: usize) -> Result<()> {
    if h == 0 {
        return Err(Error::Range("forecast horizon must be at least 1".into()));
    }
    if x.len() < min_len {
        return Err(Error::Range(format!(
            "forecasting needs at least {min_len} observations, got {}",
            x.len()
        )));
    }
    check_finite(x)
}

/// Iterates `z_n = c + Σ_k w_k z_{n-k}` forward `h` steps from the history
/// `x`, using at most `w.len()` lags.
fn iterate_ar(x: &[f64], h: usize, intercept: f64, w: &[f64]) -> Vec<f64> {
    let t = x.len();
    let mut z = x.to_vec();
    z.reserve(h);
    for n in t..t + h {
        let lags = w.len().min(n);
        let s: f64 = w[..lags].iter().zip(z[n - lags..n].iter().rev()).map(|(a, b)| a * b).sum();
        z.push(intercept + s);
    }
    z.split_off(t)
}

/// `Z95 σ sqrt(Σ_{i<j} m_i²)` for `j = 1..=h`.
fn half_widths(ma: &[f64], sigma: f64) -> Vec<f64> {
    let mut acc = 0.0;
    ma.iter()
        .map(|m| {
            acc += m * m;
            Z95 * sigma * acc.sqrt()
        })
        .collect()
}

fn assemble(x_len: usize, point: Vec<f64>, half: Vec<f64>, model: ForecastModel) -> Forecast {
    Forecast {
        history_length: x_len,
        horizon: point.len(),
        lower: point.iter().zip(&half).map(|(p, w)| p - w).collect(),
        upper: point.iter().zip(&half).map(|(p, w)| p + w).collect(),
        point,
        model,
    }
}

/// FI(d) forecast from the truncated AR(∞) form, using every available lag.
pub fn fi_forecast(x: &[f64], h: usize, d: f64, sigma: f64) -> Result<Forecast> {
    fi_forecast_truncated(x, h, d, sigma, x.len() + h - 1)
}

/// FI(d) forecast using at most `max_lag` autoregressive lags.
///
/// Predictor weights are `a_k = -ψ_k`, the negated `k ≥ 1` coefficients of
/// `(1-L)^d`, so `a_1 = d`.
pub fn fi_forecast_truncated(
    x: &[f64],
    h: usize,
    d: f64,
    sigma: f64,
    max_lag: usize,
) -> Result<Forecast> {
    check_inputs(x, h, 2)?;
    check_memory(d)?;
    check_sigma(sigma)?;
    if max_lag == 0 {
        return Err(Error::Range("AR truncation must keep at least one lag".into()));
    }
    let psi = fi_ar_coefs(max_lag + 1, d)?;
    let weights: Vec<f64> = psi.as_slice()[1..].iter().map(|v| -v).collect();
    let point = iterate_ar(x, h, 0.0, &weights);
    let half = half_widths(fi_ma_coefs(h, d)?.as_slice(), sigma);
    Ok(assemble(x.len(), point, half, ForecastModel::Fi(FIParams { d, sigma })))
}

/// Best linear predictor weights of order `k` for the CSA autocorrelations.
pub fn csa_predictor_weights(k: usize, p: f64, q: f64) -> Result<Vec<f64>> {
    ToeplitzGram::new(csa_var_vals(k + 1, p, q, 1.0)?)?.yule_walker(k)
}

/// CSA forecast from the order-`min(T-1, 500)` Yule–Walker predictor.
pub fn csa_forecast(x: &[f64], h: usize, p: f64, q: f64, sigma: f64) -> Result<Forecast> {
    check_inputs(x, h, 2)?;
    check_beta_shape(p, q)?;
    check_sigma(sigma)?;
    let k = (x.len() - 1).min(CSA_YW_MAX_ORDER);
    let weights = csa_predictor_weights(k, p, q)?;
    let point = iterate_ar(x, h, 0.0, &weights);
    let half = half_widths(csa_ma_coefs(h, p, q)?.as_slice(), sigma);
    Ok(assemble(x.len(), point, half, ForecastModel::Csa(CSAParams { p, q, sigma })))
}

/// AR coefficients `b_i = Σ_{j: L_j ≥ i} a_j / L_j` implied by a HAR model.
pub fn har_ar_coefficients(model: &HARModel) -> Vec<f64> {
    let max_lag = model.lags.iter().copied().max().unwrap_or(0);
    let mut b = vec![0.0; max_lag];
    for (&lag, a) in model.lags.iter().zip(&model.coefficients[1..]) {
        for bi in &mut b[..lag] {
            *bi += a / lag as f64;
        }
    }
    b
}

/// First `n` MA(∞) coefficients of the AR recursion with coefficients `b`.
pub(crate) fn ar_to_ma(b: &[f64], n: usize) -> Vec<f64> {
    let mut m = vec![0.0; n];
    if n > 0 {
        m[0] = 1.0;
    }
    for j in 1..n {
        m[j] = (1..=b.len().min(j)).map(|i| b[i - 1] * m[j - i]).sum();
    }
    m
}

/// Forecast from an already fitted HAR model, feeding forecasts back into
/// the trailing means.
pub fn har_forecast_model(x: &[f64], h: usize, model: &HARModel) -> Result<Forecast> {
    let max_lag = model.lags.iter().copied().max().unwrap_or(0);
    check_inputs(x, h, max_lag.max(1))?;
    if model.coefficients.len() != model.lags.len() + 1 {
        return Err(Error::Shape(format!(
            "{} coefficients for {} lags",
            model.coefficients.len(),
            model.lags.len()
        )));
    }
    let b = har_ar_coefficients(model);
    let point = iterate_ar(x, h, model.coefficients[0], &b);
    let half = half_widths(&ar_to_ma(&b, h), model.sigma);
    Ok(assemble(x.len(), point, half, ForecastModel::Har(model.clone())))
}

/// Fits `har_est(x, lags)` and forecasts `h` steps.
pub fn har_forecast(x: &[f64], h: usize, lags: &[usize]) -> Result<Forecast> {
    if h == 0 {
        return Err(Error::Range("forecast horizon must be at least 1".into()));
    }
    let model = har_est(x, lags)?;
    har_forecast_model(x, h, &model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{fi_gen, gaussian_noise};
    use crate::RngSpec;
    use nalgebra::{DMatrix, DVector};

    #[test]
    fn fi_white_noise_forecast() {
        let x = gaussian_noise(&mut RngSpec::new(1).rng(), 50, 1.0);
        let f = fi_forecast(&x, 5, 0.0, 2.0).unwrap();
        assert!(f.point.iter().all(|v| *v == 0.0));
        for (l, u) in f.lower.iter().zip(&f.upper) {
            assert!((u - 3.92).abs() < 1e-12 && (l + 3.92).abs() < 1e-12);
        }
    }

    #[test]
    fn fi_one_step_is_d() {
        let f = fi_forecast(&[0.0, 0.0, 1.0], 1, 0.4, 1.0).unwrap();
        assert!((f.point[0] - 0.4).abs() < 1e-15);
    }

    #[test]
    fn fi_two_steps_by_hand() {
        // a_1 = d, a_2 = d(1-d)/2; x̂_{T+2} = a_1 x̂_{T+1} + a_2 x_T
        let d = 0.3;
        let f = fi_forecast(&[0.0, 0.0, 1.0], 2, d, 1.0).unwrap();
        let a2 = d * (1.0 - d) / 2.0;
        assert!((f.point[1] - (d * d + a2)).abs() < 1e-15);
        let w2 = 1.96 * (1.0 + d * d).sqrt();
        assert!((f.upper[1] - f.point[1] - w2).abs() < 1e-12);
    }

    #[test]
    fn linearity_and_bands() {
        let x = fi_gen(300, 0.3, 1.0, &RngSpec::new(2)).unwrap().demeaned();
        let y: Vec<f64> = x.iter().map(|v| -2.5 * v).collect();
        let a = fi_forecast(&x, 20, 0.3, 1.0).unwrap();
        let b = fi_forecast(&y, 20, 0.3, 1.0).unwrap();
        for (u, v) in a.point.iter().zip(&b.point) {
            assert!((v + 2.5 * u).abs() < 1e-10);
        }
        let c = csa_forecast(&x, 20, 1.3, 1.5, 1.0).unwrap();
        let e = csa_forecast(&y, 20, 1.3, 1.5, 1.0).unwrap();
        for (u, v) in c.point.iter().zip(&e.point) {
            assert!((v + 2.5 * u).abs() < 1e-10);
        }
        for f in [&a, &c] {
            let w = f.band_widths();
            assert!(w.windows(2).all(|p| p[1] >= p[0]));
            assert!(f.lower.iter().zip(&f.point).all(|(l, p)| l <= p));
        }
    }

    #[test]
    fn fi_truncation_stability() {
        let x = fi_gen(2000, 0.4, 1.0, &RngSpec::new(3)).unwrap().demeaned();
        let full = fi_forecast_truncated(&x, 30, 0.4, 1.0, 1000).unwrap();
        let long = fi_forecast_truncated(&x, 30, 0.4, 1.0, 2000).unwrap();
        let scale = full.point.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for (a, b) in full.point.iter().zip(&long.point) {
            assert!((a - b).abs() < 0.05 * scale, "{a} {b}");
        }
    }

    #[test]
    fn csa_weights_match_dense_solve() {
        let k = 25;
        let psi = csa_predictor_weights(k, 1.3, 1.5).unwrap();
        let rho = crate::moments::csa_cor_vals(k + 1, 1.3, 1.5).unwrap().values;
        let a = DMatrix::from_fn(k, k, |i, j| rho[i.abs_diff(j)]);
        let sol = a.lu().solve(&DVector::from_column_slice(&rho[1..=k])).unwrap();
        for (u, v) in psi.iter().zip(sol.iter()) {
            assert!((u - v).abs() < 1e-8);
        }
        let one = csa_predictor_weights(1, 1.3, 1.5).unwrap();
        assert!((one[0] - rho[1]).abs() < 1e-15);
    }

    #[test]
    fn csa_zero_series() {
        let f = csa_forecast(&[0.0; 40], 10, 1.3, 1.5, 2.0).unwrap();
        assert!(f.point.iter().all(|v| *v == 0.0));
        let ma = csa_ma_coefs(10, 1.3, 1.5).unwrap();
        let mut acc = 0.0;
        for (j, u) in f.upper.iter().enumerate() {
            acc += ma.as_slice()[j].powi(2);
            assert!((u - 1.96 * 2.0 * acc.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn har_ar1_closed_form() {
        let mut rng = RngSpec::new(4).rng();
        let e = gaussian_noise(&mut rng, 2000, 1.0);
        let mut x = vec![3.0; e.len()];
        for t in 1..x.len() {
            x[t] = 1.0 + 0.6 * x[t - 1] + e[t];
        }
        let f = har_forecast(&x, 15, &[1]).unwrap();
        let ForecastModel::Har(model) = &f.model else { panic!() };
        let (a0, a1) = (model.coefficients[0], model.coefficients[1]);
        let mut prev = *x.last().unwrap();
        for (j, p) in f.point.iter().enumerate() {
            prev = a0 + a1 * prev;
            assert!((p - prev).abs() < 1e-10);
            let var: f64 = (0..=j).map(|i| a1.powi(2 * i as i32)).sum();
            assert!((f.upper[j] - p - 1.96 * model.sigma * var.sqrt()).abs() < 1e-10);
        }
    }

    #[test]
    fn har_white_noise_is_flat() {
        let x = gaussian_noise(&mut RngSpec::new(5).rng(), 4000, 1.0);
        let f = har_forecast(&x, 10, &[1, 5, 22]).unwrap();
        let ForecastModel::Har(m) = &f.model else { panic!() };
        assert!(f.point.iter().all(|p| (p - m.coefficients[0]).abs() < 0.1));
        assert!((f.upper[0] - f.point[0] - 1.96 * m.sigma).abs() < 1e-12);
    }

    #[test]
    fn har_ar_expansion() {
        let model = HARModel {
            lags: vec![1, 3],
            coefficients: vec![0.0, 0.3, 0.6],
            sigma: 1.0,
            n_obs: 0,
        };
        let b = har_ar_coefficients(&model);
        assert!((b[0] - 0.5).abs() < 1e-15 && (b[1] - 0.2).abs() < 1e-15 && (b[2] - 0.2).abs() < 1e-15);
        let m = ar_to_ma(&b, 3);
        assert_eq!(m[0], 1.0);
        assert!((m[1] - 0.5).abs() < 1e-15);
        assert!((m[2] - (0.25 + 0.2)).abs() < 1e-15);
    }

    #[test]
    fn validation() {
        assert!(matches!(fi_forecast(&[1.0, 2.0], 0, 0.2, 1.0), Err(Error::Range(_))));
        assert!(matches!(fi_forecast(&[1.0, 2.0], 3, 0.6, 1.0), Err(Error::Domain { .. })));
        assert!(matches!(csa_forecast(&[1.0, 2.0], 3, 0.5, 1.5, 1.0), Err(Error::Domain { .. })));
    }
}
