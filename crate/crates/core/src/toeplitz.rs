//! Symmetric Toeplitz covariance matrices: Gaussian log-likelihood terms and
//! Yule–Walker solves by the Durbin–Levinson recursion.

use crate::moments::fi_unit_variance;
use crate::specfun::{frac_diff_weights, Convolver};
use crate::{Error, Result};

/// Symmetric Toeplitz matrix given by its first row `γ(0..T-1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ToeplitzGram {
    first_row: Vec<f64>,
}

/// `log|Γ|` and `xᵀ Γ⁻¹ x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoglikTerms {
    pub logdet: f64,
    pub quadform: f64,
}

impl LoglikTerms {
    /// Negative concentrated Gaussian log-likelihood per observation, up to
    /// constants: `(1/2T) log|Γ| + (1/2) log(xᵀΓ⁻¹x / T)`.
    pub fn concentrated(&self, t: usize) -> f64 {
        let n = t as f64;
        self.logdet / (2.0 * n) + 0.5 * (self.quadform / n).ln()
    }
}

impl ToeplitzGram {
    pub fn new(first_row: Vec<f64>) -> Result<Self> {
        if first_row.is_empty() {
            return Err(Error::Empty("Toeplitz first row must be non-empty"));
        }
        if first_row.iter().any(|v| !v.is_finite()) || !(first_row[0] > 0.0) {
            return Err(Error::Numerical(
                "Toeplitz first row must be finite with a positive diagonal".into(),
            ));
        }
        Ok(ToeplitzGram { first_row })
    }

    pub fn first_row(&self) -> &[f64] {
        &self.first_row
    }

    pub fn len(&self) -> usize {
        self.first_row.len()
    }

    pub fn is_empty(&self) -> bool {
        self.first_row.is_empty()
    }

    /// Log-determinant and quadratic form from the one-step prediction
    /// errors: `log|Γ| = Σ log v_t`, `xᵀΓ⁻¹x = Σ e_t²/v_t`.
    pub fn loglik_terms(&self, x: &[f64]) -> Result<LoglikTerms> {
        let t = x.len();
        if t != self.len() {
            return Err(Error::Shape(format!(
                "series has length {t} but the Gram matrix has order {}",
                self.len()
            )));
        }
        let g = &self.first_row;
        // γ reversed so the reflection numerator is a forward dot product
        let g_rev: Vec<f64> = g.iter().rev().copied().collect();
        let mut dl = Innovations::new(x, g[0]);
        for s in 1..t {
            // Σ_{j=1}^{s-1} φ_{s-1,j} γ(s-j)
            let acc = dot(&dl.phi[1..s], &g_rev[t - s..t - 1]);
            let kappa = (g[s] - acc) / dl.v;
            dl.step(s, kappa)?;
        }
        Ok(dl.finish())
    }

    /// Solves the order-`k` Yule–Walker system
    /// `Toeplitz(γ(0..k-1)) ψ = γ(1..k)` by Durbin's method.
    pub fn yule_walker(&self, k: usize) -> Result<Vec<f64>> {
        if k == 0 {
            return Err(Error::Empty("Yule-Walker order must be positive"));
        }
        if k >= self.len() {
            return Err(Error::Range(format!(
                "order {k} needs {} autocovariances, have {}",
                k + 1,
                self.len()
            )));
        }
        let g = &self.first_row;
        let mut phi = vec![0.0; k + 1];
        let mut next = vec![0.0; k + 1];
        let mut v = g[0];
        for s in 1..=k {
            let acc: f64 = (1..s).map(|j| phi[j] * g[s - j]).sum();
            let kappa = (g[s] - acc) / v;
            update(&phi, &mut next, s, kappa);
            std::mem::swap(&mut phi, &mut next);
            v *= 1.0 - kappa * kappa;
            if !(v > 0.0) {
                return Err(Error::Numerical(format!(
                    "autocovariances are not positive definite at order {s}"
                )));
            }
        }
        Ok(phi[1..].to_vec())
    }
}

/// Durbin–Levinson state: predictor coefficients, prediction-error variance
/// and running likelihood sums.
struct Innovations<'a> {
    x_rev: Vec<f64>,
    x: &'a [f64],
    phi: Vec<f64>,
    next: Vec<f64>,
    v: f64,
    logdet: f64,
    quad: f64,
}

impl<'a> Innovations<'a> {
    fn new(x: &'a [f64], v0: f64) -> Self {
        let t = x.len();
        Innovations {
            x_rev: x.iter().rev().copied().collect(),
            x,
            phi: vec![0.0; t],
            next: vec![0.0; t],
            v: v0,
            logdet: v0.ln(),
            quad: x[0] * x[0] / v0,
        }
    }

    /// Advances from order `s-1` to `s` with reflection coefficient `kappa`,
    /// then adds the prediction error of `x_s`.
    fn step(&mut self, s: usize, kappa: f64) -> Result<()> {
        let t = self.x.len();
        update(&self.phi, &mut self.next, s, kappa);
        std::mem::swap(&mut self.phi, &mut self.next);
        self.v *= 1.0 - kappa * kappa;
        if !(self.v > 0.0) || !self.v.is_finite() {
            return Err(Error::Numerical(format!(
                "covariance matrix is not positive definite at order {s}"
            )));
        }
        // x̂_s = Σ_{j=1}^{s} φ_{s,j} x_{s-j}; x_rev[t-s..t] = x_{s-1}, …, x_0
        let pred = dot(&self.phi[1..=s], &self.x_rev[t - s..t]);
        let e = self.x[s] - pred;
        self.logdet += self.v.ln();
        self.quad += e * e / self.v;
        Ok(())
    }

    fn finish(self) -> LoglikTerms {
        LoglikTerms {
            logdet: self.logdet,
            quadform: self.quad,
        }
    }
}

/// `next[j] = phi[j] - κ phi[s-j]` for `j < s`, `next[s] = κ`.
#[inline]
fn update(phi: &[f64], next: &mut [f64], s: usize, kappa: f64) {
    let old = &phi[1..s];
    for (n, (a, b)) in next[1..s].iter_mut().zip(old.iter().zip(old.iter().rev())) {
        *n = a - kappa * b;
    }
    next[s] = kappa;
}

/// Dot product with four independent accumulators.
#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = [0.0f64; 4];
    let ca = a.chunks_exact(4);
    let cb = b.chunks_exact(4);
    let tail: f64 = ca
        .remainder()
        .iter()
        .zip(cb.remainder())
        .map(|(u, v)| u * v)
        .sum();
    for (u, v) in ca.zip(cb) {
        acc[0] += u[0] * v[0];
        acc[1] += u[1] * v[1];
        acc[2] += u[2] * v[2];
        acc[3] += u[3] * v[3];
    }
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

/// Exact FI(d) likelihood terms for a fixed series, in `O(T log T)`.
///
/// For FI(d) the Durbin–Levinson quantities are known in closed form:
/// `φ_ss = d/(s-d)` and `φ_sj = -ψ_j c(s-j)/c(s)` with `ψ_j` the coefficients
/// of `(1-L)^d` and `c(n) = Γ(n+1-d)/Γ(n+1)`. The one-step errors are then
/// `e_s = (ψ * y)_s / c(s)` with `y_n = c(n) x_n`, a single convolution.
pub struct FiLoglik {
    x: Vec<f64>,
    conv: Convolver,
}

impl FiLoglik {
    pub fn new(x: &[f64]) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::Empty("series must contain at least one value"));
        }
        Ok(FiLoglik {
            x: x.to_vec(),
            conv: Convolver::new(x.len()),
        })
    }

    /// Terms at `d` with unit innovation variance.
    pub fn terms(&self, d: f64) -> Result<LoglikTerms> {
        if !(d > -0.5 && d < 0.5) {
            return Err(Error::domain("d", d, "(-1/2, 1/2)"));
        }
        let t = self.x.len();
        // c(n) relative to c(0)
        let mut c = Vec::with_capacity(t);
        let mut cn = 1.0;
        for n in 0..t {
            if n > 0 {
                cn *= (n as f64 - d) / n as f64;
            }
            c.push(cn);
        }
        let y: Vec<f64> = self.x.iter().zip(&c).map(|(a, b)| a * b).collect();
        let e = self
            .conv
            .convolve(&y, &frac_diff_weights(t, d));
        let mut v = fi_unit_variance(d);
        let mut logdet = 0.0;
        let mut quad = 0.0;
        for s in 0..t {
            if s > 0 {
                let kappa = d / (s as f64 - d);
                v *= 1.0 - kappa * kappa;
            }
            let es = e[s] / c[s];
            logdet += v.ln();
            quad += es * es / v;
        }
        Ok(LoglikTerms {
            logdet,
            quadform: quad,
        })
    }
}

/// One-off [`FiLoglik::terms`].
pub fn fi_loglik_terms(x: &[f64], d: f64) -> Result<LoglikTerms> {
    FiLoglik::new(x)?.terms(d)
}
