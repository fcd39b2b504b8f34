//! Simulation of long-memory series.
//!
//! Every generator owns a private RNG seeded from its [`RngSpec`], so equal
//! specs give bit-identical output and generators may run in parallel.

use rand::Rng;
use rand_distr::{Beta, Distribution, StandardNormal};

use crate::moments::{check_sigma, fi_acf};
use crate::specfun::{check_beta_shape, check_memory, csa_ma_coefs, fi_ma_coefs, frac_diff_weights, Convolver};
use crate::{Error, Result, RngSpec, Series};

/// `n` i.i.d. `N(0, sigma²)` draws.
pub fn gaussian_noise<R: Rng + ?Sized>(rng: &mut R, n: usize, sigma: f64) -> Vec<f64> {
    (0..n)
        .map(|_| sigma * rng.sample::<f64, _>(StandardNormal))
        .collect()
}

fn check_len(t: usize) -> Result<()> {
    if t == 0 {
        Err(Error::Empty("sample size T must be positive"))
    } else {
        Ok(())
    }
}

/// FI(d) series: Gaussian innovations filtered by the MA weights of
/// `(1-L)^{-d}`. With `d = 0` the innovations are returned untouched.
pub fn fi_gen(t: usize, d: f64, sigma: f64, rng: &RngSpec) -> Result<Series> {
    check_len(t)?;
    check_memory(d)?;
    check_sigma(sigma)?;
    let noise = gaussian_noise(&mut rng.rng(), t, sigma);
    if d == 0.0 {
        return Series::simulated(noise, rng);
    }
    let weights = fi_ma_coefs(t, d)?;
    let values = Convolver::new(t).convolve(&noise, weights.as_slice());
    Series::simulated(values, rng)
}

/// Applies `(1-L)^d` with the FFT, truncating the expansion at the sample
/// length. `fracdiff(fracdiff(x, d), -d)` recovers `x`.
pub fn fracdiff(x: &[f64], d: f64) -> Result<Series> {
    if !(d > -1.0 && d < 1.0) {
        return Err(Error::domain("d", d, "(-1, 1)"));
    }
    if x.is_empty() {
        return Err(Error::Empty("series must contain at least one value"));
    }
    if d == 0.0 {
        return Series::new(x.to_vec());
    }
    let weights = frac_diff_weights(x.len(), d);
    Series::new(Convolver::new(x.len()).convolve(x, &weights))
}

/// Asymptotic cross-sectional aggregation: Gaussian innovations filtered by
/// the limiting MA weights `φ_k`. Long memory with `d = 1 - q/2` needs
/// `q ∈ (1, 2)`; any `q > 1` is accepted.
pub fn csa_gen(t: usize, p: f64, q: f64, sigma: f64, rng: &RngSpec) -> Result<Series> {
    check_len(t)?;
    check_beta_shape(p, q)?;
    check_sigma(sigma)?;
    let noise = gaussian_noise(&mut rng.rng(), t, sigma);
    let weights = csa_ma_coefs(t, p, q)?;
    let values = Convolver::new(t).convolve(&noise, weights.as_slice());
    Series::simulated(values, rng)
}

/// Finite cross-sectional aggregation of `n` AR(1) units with
/// `α_i² ~ Beta(p, q)`, scaled by `1/√n`.
///
/// Each unit starts from its stationary law `N(0, σ²/(1-α_i²))`.
pub fn csa_gen_finite(
    t: usize,
    n: usize,
    p: f64,
    q: f64,
    sigma: f64,
    rng: &RngSpec,
) -> Result<Series> {
    check_len(t)?;
    if n == 0 {
        return Err(Error::Empty("number of aggregated units N must be positive"));
    }
    check_beta_shape(p, q)?;
    check_sigma(sigma)?;
    let beta = Beta::new(p, q).map_err(|e| Error::Numerical(e.to_string()))?;
    let mut gen = rng.rng();
    let mut sum = vec![0.0; t];
    for _ in 0..n {
        let a2: f64 = beta.sample(&mut gen);
        let alpha = a2.sqrt();
        let sd0 = sigma / (1.0 - a2).max(f64::MIN_POSITIVE).sqrt();
        let mut state = sd0 * gen.sample::<f64, _>(StandardNormal);
        sum[0] += state;
        for s in sum.iter_mut().skip(1) {
            state = alpha * state + sigma * gen.sample::<f64, _>(StandardNormal);
            *s += state;
        }
    }
    let scale = 1.0 / (n as f64).sqrt();
    sum.iter_mut().for_each(|v| *v *= scale);
    Series::simulated(sum, rng)
}

/// Survival probabilities `p_k = P(shock alive k periods after birth)`,
/// `k = 0..K-1`, that reproduce FI(d) autocovariances.
///
/// With `γ(h) = σ² Σ_{k≥h} p_k`, matching the FI autocorrelation `ρ` up to
/// scale forces `p_k ∝ ρ(k) - ρ(k+1)`; normalizing to `p_0 = 1` gives
/// `p_k = ρ(k) (1-d) / (k+1-d)`.
pub fn fi_survival_probs(k: usize, d: f64) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(Error::Empty("number of probabilities K must be positive"));
    }
    if !(d > 0.0 && d < 0.5) {
        return Err(Error::domain("d", d, "(0, 1/2)"));
    }
    let rho = fi_acf(k, d);
    Ok(rho
        .iter()
        .enumerate()
        .map(|(i, r)| r * (1.0 - d) / (i as f64 + 1.0 - d))
        .collect())
}

/// Stochastic-duration shocks: each shock born at `s = 0..T-1` stays alive
/// for a random number of periods with survival function `fi_survival_probs`.
/// Shocks born before the sample are not simulated; durations are capped at
/// the sample end.
pub fn sds_gen(t: usize, d: f64, sigma: f64, rng: &RngSpec) -> Result<Series> {
    check_len(t)?;
    if !(d > 0.0 && d < 0.5) {
        return Err(Error::domain("d", d, "(0, 1/2)"));
    }
    check_sigma(sigma)?;
    let survival = fi_survival_probs(t, d)?;
    let mut gen = rng.rng();
    // difference array: +ε at birth, -ε at death
    let mut diff = vec![0.0; t + 1];
    for s in 0..t {
        let shock = sigma * gen.sample::<f64, _>(StandardNormal);
        let u: f64 = gen.random();
        // lifetime n = #{k : p_k > u}, so P(n > k) = p_k
        let life = survival.partition_point(|&p| p > u).max(1);
        let end = (s + life).min(t);
        diff[s] += shock;
        diff[end] -= shock;
    }
    let mut acc = 0.0;
    let values = diff[..t]
        .iter()
        .map(|v| {
            acc += v;
            acc
        })
        .collect();
    Series::simulated(values, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::{autocorrelation, csa_cor_vals, csa_var_vals, fi_cor_vals};
    use crate::semiparam::{exact_whittle_est, gph_est};

    #[test]
    fn fi_gen_zero_is_noise() {
        let spec = RngSpec::new(99);
        let x = fi_gen(500, 0.0, 1.5, &spec).unwrap();
        let noise = gaussian_noise(&mut spec.rng(), 500, 1.5);
        assert_eq!(x.values(), &noise[..]);
        assert_eq!(x.seed, Some(99));
    }

    #[test]
    fn generators_are_deterministic() {
        let spec = RngSpec::new(3);
        assert_eq!(fi_gen(300, 0.2, 1.0, &spec).unwrap(), fi_gen(300, 0.2, 1.0, &spec).unwrap());
        assert_eq!(csa_gen(300, 1.3, 1.5, 1.0, &spec).unwrap(), csa_gen(300, 1.3, 1.5, 1.0, &spec).unwrap());
        assert_eq!(
            csa_gen_finite(100, 20, 1.3, 1.5, 1.0, &spec).unwrap(),
            csa_gen_finite(100, 20, 1.3, 1.5, 1.0, &spec).unwrap()
        );
        assert_eq!(sds_gen(300, 0.3, 1.0, &spec).unwrap(), sds_gen(300, 0.3, 1.0, &spec).unwrap());
    }

    #[test]
    fn generator_errors() {
        let spec = RngSpec::new(1);
        assert!(matches!(fi_gen(0, 0.1, 1.0, &spec), Err(Error::Empty(_))));
        assert!(matches!(fi_gen(10, 0.7, 1.0, &spec), Err(Error::Domain { .. })));
        assert!(matches!(fi_gen(10, 0.1, 0.0, &spec), Err(Error::Domain { .. })));
        assert!(matches!(csa_gen(10, 1.0, 1.5, 1.0, &spec), Err(Error::Domain { .. })));
        assert!(matches!(csa_gen_finite(10, 0, 1.3, 1.5, 1.0, &spec), Err(Error::Empty(_))));
        assert!(matches!(sds_gen(10, 0.0, 1.0, &spec), Err(Error::Domain { .. })));
        assert!(matches!(fracdiff(&[1.0], 1.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn fi_gen_lag_one() {
        let x = fi_gen(100_000, 0.3, 1.0, &RngSpec::new(17)).unwrap();
        let r = autocorrelation(&x, 2).unwrap().values[1];
        assert!((r - 0.3 / 0.7).abs() < 0.02, "{r}");
    }

    #[test]
    fn fi_gen_gph_recovers_d() {
        let x = fi_gen(100_000, 0.3, 1.0, &RngSpec::new(21)).unwrap();
        let est = gph_est(&x, None, 0).unwrap();
        let se = est.asy_variance.unwrap().sqrt();
        assert!((est.d_hat - 0.3).abs() < 3.0 * se, "{} ± {se}", est.d_hat);
    }

    #[test]
    fn fracdiff_identity_and_impulse() {
        let x = vec![0.5, -1.0, 2.0, 0.25];
        assert_eq!(fracdiff(&x, 0.0).unwrap().values(), &x[..]);
        let mut impulse = vec![0.0; 64];
        impulse[0] = 1.0;
        let out = fracdiff(&impulse, 0.4).unwrap();
        let coefs = crate::specfun::fi_ar_coefs(64, 0.4).unwrap();
        for (a, b) in out.iter().zip(coefs.as_slice()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    fn truncated_binomial(x: &[f64], d: f64) -> Vec<f64> {
        // coefficients of (1-L)^d: c_0 = 1, c_k = c_{k-1} (k-1-d)/k
        let n = x.len();
        let mut c = vec![1.0; n];
        for k in 1..n {
            c[k] = c[k - 1] * (k as f64 - 1.0 - d) / k as f64;
        }
        (0..n)
            .map(|t| (0..=t).map(|k| c[k] * x[t - k]).sum())
            .collect()
    }

    #[test]
    fn fracdiff_matches_naive() {
        let x = gaussian_noise(&mut RngSpec::new(8).rng(), 1000, 1.0);
        let fast = fracdiff(&x, 0.3).unwrap();
        let slow = truncated_binomial(&x, 0.3);
        let scale = slow.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        for (a, b) in fast.iter().zip(&slow) {
            assert!((a - b).abs() <= 1e-10 * scale);
        }
    }

    #[test]
    fn fracdiff_round_trip() {
        let x = gaussian_noise(&mut RngSpec::new(4).rng(), 2000, 1.0);
        for &d in &[0.1, 0.45, -0.3] {
            let y = fracdiff(&fracdiff(&x, d).unwrap(), -d).unwrap();
            let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            for (a, b) in y.iter().zip(&x) {
                assert!((a - b).abs() <= 1e-8 * scale);
            }
        }
    }

    /// Autocorrelations of the MA filter `Σ φ_k ε_{t-k}` itself.
    fn ma_filter_acf(k: usize, p: f64, q: f64) -> Vec<f64> {
        let phi = csa_ma_coefs(1 << 22, p, q).unwrap().into_values();
        let g: Vec<f64> = (0..k).map(|h| phi.iter().zip(&phi[h..]).map(|(a, b)| a * b).sum()).collect();
        g.iter().map(|v| v / g[0]).collect()
    }

    #[test]
    fn csa_gen_tracks_theory() {
        let x = csa_gen(100_000, 1.3, 1.5, 1.0, &RngSpec::new(31)).unwrap();
        let sample = autocorrelation(&x, 51).unwrap().values;
        let filter = ma_filter_acf(51, 1.3, 1.5);
        let sup = |a: &[f64], b: &[f64]| a[1..].iter().zip(&b[1..]).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max);
        assert!(sup(&sample, &filter) < 0.05, "vs filter {}", sup(&sample, &filter));
        // the limiting MA weights do not reproduce the aggregate's ACF exactly:
        // the two theoretical curves already differ by about 0.075 at lag 50
        let theory = csa_cor_vals(51, 1.3, 1.5).unwrap().values;
        assert!(sup(&filter, &theory) < 0.08);
        assert!(sup(&sample, &theory) < 0.1, "vs aggregate {}", sup(&sample, &theory));
    }

    #[test]
    fn csa_gen_elw_matches_filter_spectrum() {
        // Local Whittle on the exact spectrum |Σ φ_k e^{ikλ}|² gives the value
        // the estimator converges to at this bandwidth; the slow approach to
        // d = 1 - q/2 is a property of the process, not of the simulation.
        let (t, p, q) = (100_000usize, 1.3, 1.5);
        let x = csa_gen(t, p, q, 1.0, &RngSpec::new(32)).unwrap();
        let est = exact_whittle_est(&x, None).unwrap();
        let m = est.bandwidth_m;

        let n = 1usize << 22;
        let conv = Convolver::new(n / 2);
        let spec = conv.spectrum(csa_ma_coefs(n / 2, p, q).unwrap().as_slice());
        let step = spec.len() as f64 / t as f64;
        let (ll, ii): (Vec<f64>, Vec<f64>) = (1..=m)
            .map(|k| {
                let lam = 2.0 * std::f64::consts::PI * k as f64 / t as f64;
                (lam.ln(), spec[(k as f64 * step).round() as usize].norm_sqr())
            })
            .unzip();
        let target = crate::optimize::brent_min(
            |d| crate::semiparam::whittle_objective(&ll, &ii, d),
            -0.49,
            1.0,
            1e-8,
        )
        .x;
        let se = est.asy_variance.unwrap().sqrt();
        assert!((est.d_hat - target).abs() < 3.0 * se, "{} vs {target} ± {se}", est.d_hat);
        assert!(target > 0.25);
    }

    #[test]
    fn csa_finite_single_unit_is_ar1() {
        let spec = RngSpec::new(77);
        let x = csa_gen_finite(100_000, 1, 1.3, 1.5, 1.0, &spec).unwrap();
        // recover α_1 from the same stream
        let mut gen = spec.rng();
        let a2: f64 = Beta::new(1.3, 1.5).unwrap().sample(&mut gen);
        let r = autocorrelation(&x, 2).unwrap().values[1];
        assert!((r - a2.sqrt()).abs() < 0.02, "{r} vs {}", a2.sqrt());
    }

    #[test]
    fn csa_finite_small_sample_shape() {
        let x = csa_gen_finite(1000, 1000, 1.3, 1.5, 1.0, &RngSpec::new(1234)).unwrap();
        let sample = autocorrelation(&x, 51).unwrap().values;
        let theory = csa_cor_vals(51, 1.3, 1.5).unwrap().values;
        let dev = sample.iter().zip(&theory).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(dev < 0.15, "sup deviation {dev}");
    }

    #[test]
    fn csa_finite_variance() {
        let x = csa_gen_finite(5000, 5000, 1.3, 1.5, 1.0, &RngSpec::new(5)).unwrap();
        let m = x.mean();
        let var = x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (x.len() as f64 - 1.0);
        let theory = csa_var_vals(1, 1.3, 1.5, 1.0).unwrap()[0];
        assert!((var / theory - 1.0).abs() < 0.2, "{var} vs {theory}");
    }

    #[test]
    fn finite_and_asymptotic_agree() {
        let fin = csa_gen_finite(5000, 5000, 1.3, 1.5, 1.0, &RngSpec::new(41)).unwrap();
        let asy = csa_gen(5000, 1.3, 1.5, 1.0, &RngSpec::new(42)).unwrap();
        let a = autocorrelation(&fin, 51).unwrap().values;
        let b = autocorrelation(&asy, 51).unwrap().values;
        let dev = a.iter().zip(&b).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max);
        // includes the ~0.075 gap between the aggregate ACF and the MA filter ACF
        assert!(dev < 0.15, "{dev}");
    }

    #[test]
    fn survival_probabilities() {
        let p = fi_survival_probs(10_000, 0.45).unwrap();
        assert_eq!(p[0], 1.0);
        assert!(p.iter().all(|v| (0.0..=1.0).contains(v)));
        assert!(p.windows(2).all(|w| w[1] <= w[0]));

        let xs: Vec<f64> = (100..10_000).map(|k| (k as f64).ln()).collect();
        let ys: Vec<f64> = (100..10_000).map(|k| p[k].ln()).collect();
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let slope = xs.iter().zip(&ys).map(|(a, b)| (a - mx) * (b - my)).sum::<f64>()
            / xs.iter().map(|a| (a - mx).powi(2)).sum::<f64>();
        assert!((slope - (2.0 * 0.45 - 2.0)).abs() < 0.05, "{slope}");
        assert!(matches!(fi_survival_probs(10, 0.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn survival_partial_sums_reproduce_fi_acv() {
        // Σ_{k=h}^{K-1} p_k = (ρ(h) - ρ(K)) / (1 - ρ(1)), with ρ from log-gamma
        let d = 0.3;
        let big_k = 200_000;
        let p = fi_survival_probs(big_k, d).unwrap();
        let lg = crate::specfun::ln_gamma_pos;
        let rho = |k: f64| (lg(k + d) + lg(1.0 - d) - lg(k - d + 1.0) - lg(d)).exp();
        let scale = 1.0 - rho(1.0);
        for h in 0..=50usize {
            let partial: f64 = p[h..].iter().sum();
            let target = (rho(h as f64) - rho(big_k as f64)) / scale;
            assert!((partial - target).abs() < 1e-6, "h={h}");
        }
        let _ = fi_cor_vals(2, d).unwrap();
    }

    #[test]
    fn sds_small_d_is_white() {
        let x = sds_gen(100_000, 1e-6, 1.0, &RngSpec::new(12)).unwrap();
        let r = autocorrelation(&x, 2).unwrap().values[1];
        assert!(r.abs() < 0.05, "{r}");
    }

    #[test]
    fn sds_gph_recovers_d() {
        let x = sds_gen(100_000, 0.3, 1.0, &RngSpec::new(13)).unwrap();
        let est = gph_est(&x, None, 0).unwrap();
        let se = est.asy_variance.unwrap().sqrt();
        assert!((est.d_hat - 0.3).abs() < 3.0 * se, "{} ± {se}", est.d_hat);
    }
}
