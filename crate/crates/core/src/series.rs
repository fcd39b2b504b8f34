use std::ops::Deref;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    Simulated,
    Loaded,
}

/// A univariate, finite, non-empty time series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series {
    values: Vec<f64>,
    pub label: Option<String>,
    pub origin: Origin,
    /// Seed of the generator that produced the series, if simulated.
    pub seed: Option<u64>,
}

impl Series {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        Self::with_origin(values, Origin::Loaded, None)
    }

    pub(crate) fn with_origin(values: Vec<f64>, origin: Origin, seed: Option<u64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty("series must contain at least one value"));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Degenerate(format!("non-finite value at index {i}")));
        }
        Ok(Series {
            values,
            label: None,
            origin,
            seed,
        })
    }

    pub(crate) fn simulated(values: Vec<f64>, rng: &RngSpec) -> Result<Self> {
        Self::with_origin(values, Origin::Simulated, Some(rng.seed))
    }

    pub fn labelled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn mean(&self) -> f64 {
        mean(&self.values)
    }

    /// The series with its sample mean subtracted.
    pub fn demeaned(&self) -> Series {
        let m = self.mean();
        Series {
            values: self.values.iter().map(|v| v - m).collect(),
            label: self.label.clone(),
            origin: self.origin,
            seed: self.seed,
        }
    }
}

impl Deref for Series {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.values
    }
}

impl AsRef<[f64]> for Series {
    fn as_ref(&self) -> &[f64] {
        &self.values
    }
}

/// Seed plus algorithm tag. Identical specs yield identical simulations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngSpec {
    pub seed: u64,
    pub algorithm: String,
}

impl RngSpec {
    pub const ALGORITHM: &'static str = "chacha20";

    pub fn new(seed: u64) -> Self {
        RngSpec {
            seed,
            algorithm: Self::ALGORITHM.to_string(),
        }
    }

    /// A fresh generator owned by the caller.
    pub fn rng(&self) -> ChaCha20Rng {
        ChaCha20Rng::seed_from_u64(self.seed)
    }
}

/// Anything that has a sample size: a length, a slice or a series.
///
/// The asymptotic variance functions depend only on the sample size, so
/// they accept either form.
pub trait SampleLen {
    fn sample_len(&self) -> usize;
}

impl SampleLen for usize {
    fn sample_len(&self) -> usize {
        *self
    }
}

impl SampleLen for [f64] {
    fn sample_len(&self) -> usize {
        self.len()
    }
}

impl SampleLen for Vec<f64> {
    fn sample_len(&self) -> usize {
        self.len()
    }
}

impl SampleLen for Series {
    fn sample_len(&self) -> usize {
        self.len()
    }
}

impl<T: SampleLen + ?Sized> SampleLen for &T {
    fn sample_len(&self) -> usize {
        (**self).sample_len()
    }
}

pub(crate) fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}

pub(crate) fn check_finite(x: &[f64]) -> Result<()> {
    match x.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::Degenerate(format!("non-finite value at index {i}"))),
        None => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_nan() {
        assert!(matches!(Series::new(vec![]), Err(Error::Empty(_))));
        assert!(matches!(
            Series::new(vec![1.0, f64::NAN]),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn demeaned_has_zero_mean() {
        let s = Series::new(vec![1.0, 2.0, 6.0]).unwrap();
        assert!(s.demeaned().mean().abs() < 1e-15);
    }

    #[test]
    fn sample_len_dispatch() {
        let s = Series::new(vec![0.0; 7]).unwrap();
        assert_eq!(7usize.sample_len(), 7);
        assert_eq!(s.sample_len(), 7);
        assert_eq!(s.values().sample_len(), 7);
    }
}
