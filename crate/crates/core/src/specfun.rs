//! Coefficient sequences, log-gamma/log-beta and FFT convolution.
//!
//! All three coefficient families are built by a ratio recursion on the
//! previous term. Direct gamma evaluation overflows `f64` once the argument
//! passes ~171, so it is never used for the sequences themselves.

use std::sync::Arc;

use rustfft::num_complex::Complex;
use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefKind {
    /// MA(∞) weights of `(1-L)^{-d}`.
    FiMa,
    /// Expansion of `(1-L)^{d}`.
    FiAr,
    /// MA(∞) weights of the cross-sectionally aggregated limit process.
    CsaMa,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoefParams {
    Memory { d: f64 },
    Beta { p: f64, q: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefSequence {
    pub values: Vec<f64>,
    pub kind: CoefKind,
    pub params: CoefParams,
}

impl CoefSequence {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

pub(crate) fn check_memory(d: f64) -> Result<()> {
    if d > -0.5 && d < 0.5 {
        Ok(())
    } else {
        Err(Error::domain("d", d, "(-1/2, 1/2)"))
    }
}

pub(crate) fn check_beta_shape(p: f64, q: f64) -> Result<()> {
    if !(p > 1.0) {
        return Err(Error::domain("p", p, "(1, inf)"));
    }
    if !(q > 1.0) {
        return Err(Error::domain("q", q, "(1, inf)"));
    }
    Ok(())
}

/// `π_k = Γ(k+d) / (Γ(d) Γ(k+1))`, the MA weights of an FI(d) process.
pub fn fi_ma_coefs(k: usize, d: f64) -> Result<CoefSequence> {
    if k == 0 {
        return Err(Error::Empty("coefficient count K must be positive"));
    }
    check_memory(d)?;
    Ok(CoefSequence {
        values: frac_int_weights(k, d),
        kind: CoefKind::FiMa,
        params: CoefParams::Memory { d },
    })
}

/// Coefficients of `(1-L)^d`: `ψ_k = Γ(k-d) / (Γ(-d) Γ(k+1))`, so `ψ_1 = -d`.
pub fn fi_ar_coefs(k: usize, d: f64) -> Result<CoefSequence> {
    if k == 0 {
        return Err(Error::Empty("coefficient count K must be positive"));
    }
    check_memory(d)?;
    Ok(CoefSequence {
        values: frac_diff_weights(k, d),
        kind: CoefKind::FiAr,
        params: CoefParams::Memory { d },
    })
}

/// `φ_k = [B(p+k, q) / B(p, q)]^{1/2}`.
pub fn csa_ma_coefs(k: usize, p: f64, q: f64) -> Result<CoefSequence> {
    if k == 0 {
        return Err(Error::Empty("coefficient count K must be positive"));
    }
    check_beta_shape(p, q)?;
    let mut values = Vec::with_capacity(k);
    values.push(1.0);
    for i in 1..k {
        let j = (i - 1) as f64;
        let prev = values[i - 1];
        values.push(prev * ((p + j) / (p + q + j)).sqrt());
    }
    Ok(CoefSequence {
        values,
        kind: CoefKind::CsaMa,
        params: CoefParams::Beta { p, q },
    })
}

/// First `k` weights of `(1-L)^{-d}` for any real `d`.
pub(crate) fn frac_int_weights(k: usize, d: f64) -> Vec<f64> {
    let mut values = vec![0.0; k];
    let mut prev = 1.0;
    for (i, v) in values.iter_mut().enumerate() {
        if i > 0 {
            // ratio first keeps the division off the loop-carried chain
            prev *= ((i - 1) as f64 + d) / i as f64;
        }
        *v = prev;
    }
    values
}

/// First `k` weights of `(1-L)^{d}` for any real `d`.
pub(crate) fn frac_diff_weights(k: usize, d: f64) -> Vec<f64> {
    frac_int_weights(k, -d)
}

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// `ln Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("x", x, "(0, inf)"));
    }
    Ok(ln_gamma_pos(x))
}

/// `ln B(a, b) = ln Γ(a) + ln Γ(b) - ln Γ(a+b)`.
pub fn log_beta(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain("a", a, "(0, inf)"));
    }
    if !(b > 0.0) || !b.is_finite() {
        return Err(Error::domain("b", b, "(0, inf)"));
    }
    Ok(ln_beta_pos(a, b))
}

pub(crate) fn ln_beta_pos(a: f64, b: f64) -> f64 {
    ln_gamma_pos(a) + ln_gamma_pos(b) - ln_gamma_pos(a + b)
}

pub(crate) fn ln_gamma_pos(x: f64) -> f64 {
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    if x < 0.5 {
        // reflection: Γ(x)Γ(1-x) = π / sin(πx)
        let s = (std::f64::consts::PI * x).sin();
        return (std::f64::consts::PI / s).ln() - ln_gamma_pos(1.0 - x);
    }
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + acc.ln()
}

/// Cached FFT plans for linear convolution of length-`len` sequences.
///
/// The transform length is the next power of two at or above `2*len - 1`.
pub struct Convolver {
    len: usize,
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl Convolver {
    pub fn new(len: usize) -> Self {
        let n = (2 * len.max(1) - 1).next_power_of_two();
        let mut planner = FftPlanner::new();
        Convolver {
            len,
            n,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Zero-padded transform of `x` (at most `len` values are used).
    pub fn spectrum(&self, x: &[f64]) -> Vec<Complex<f64>> {
        let mut buf = vec![Complex::new(0.0, 0.0); self.n];
        for (b, v) in buf.iter_mut().zip(x.iter().take(self.len)) {
            b.re = *v;
        }
        self.forward.process(&mut buf);
        buf
    }

    /// First `len` terms of the linear convolution of two spectra.
    pub fn convolve_spectra(&self, a: &[Complex<f64>], b: &[Complex<f64>]) -> Vec<f64> {
        let mut buf: Vec<Complex<f64>> = a.iter().zip(b).map(|(u, v)| u * v).collect();
        self.inverse.process(&mut buf);
        let scale = 1.0 / self.n as f64;
        buf[..self.len].iter().map(|z| z.re * scale).collect()
    }

    pub fn convolve(&self, x: &[f64], c: &[f64]) -> Vec<f64> {
        let a = self.spectrum(x);
        let b = self.spectrum(c);
        self.convolve_spectra(&a, &b)
    }
}

/// First `T` terms of `Σ_{k=0}^{t} c_k x_{t-k}` computed through the FFT.
pub fn fft_convolve(x: &[f64], c: &[f64]) -> Result<Vec<f64>> {
    if x.len() != c.len() {
        return Err(Error::Shape(format!(
            "series has length {} but kernel has length {}",
            x.len(),
            c.len()
        )));
    }
    if x.is_empty() {
        return Err(Error::Empty("convolution inputs must be non-empty"));
    }
    Ok(Convolver::new(x.len()).convolve(x, c))
}

/// The O(T²) double loop computing the same truncated convolution.
pub fn naive_convolve(x: &[f64], c: &[f64]) -> Result<Vec<f64>> {
    if x.len() != c.len() {
        return Err(Error::Shape(format!(
            "series has length {} but kernel has length {}",
            x.len(),
            c.len()
        )));
    }
    let n = x.len();
    let mut out = vec![0.0; n];
    for t in 0..n {
        let mut acc = 0.0;
        for k in 0..=t {
            acc += c[k] * x[t - k];
        }
        out[t] = acc;
    }
    Ok(out)
}
