//! Long-memory time series toolkit.
//!
//! Simulate series with hyperbolically decaying autocorrelations (fractional
//! differencing, cross-sectional aggregation of AR(1) processes, stochastic
//! duration shocks), estimate the memory parameter `d` with classic,
//! semiparametric and parametric methods, and forecast with the fitted
//! models.
//!
//! ```
//! use longmem::{generate, semiparam, RngSpec};
//!
//! let x = generate::fi_gen(4096, 0.3, 1.0, &RngSpec::new(7)).unwrap();
//! let est = semiparam::gph_est(&x, None, 0).unwrap();
//! assert!((est.d_hat - 0.3).abs() < 0.2);
//! ```

// `!(x > 0.0)` is used on purpose so that NaN fails validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod classic;
pub mod cli;
pub mod data;
mod error;
mod regress;
pub mod forecast;
pub mod generate;
pub mod moments;
pub mod optimize;
pub mod param;
pub mod plot;
pub mod semiparam;
mod series;
pub mod specfun;
pub mod toeplitz;

pub use error::{Error, Result};
pub use series::{Origin, RngSpec, SampleLen, Series};
