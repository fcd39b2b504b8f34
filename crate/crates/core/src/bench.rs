//! Timing harness and the comparison suites behind `longmem bench`.
//!
//! Only relative orderings are meaningful; absolute times depend on the
//! machine.

use std::hint::black_box;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::generate::{csa_gen, csa_gen_finite, fi_gen, fracdiff};
use crate::param::{fi_mle_fit, har_est, DEFAULT_HAR_LAGS};
use crate::semiparam::{exact_whittle_est, gph_est, whittle_est};
use crate::specfun::{fi_ma_coefs, frac_diff_weights, naive_convolve};
use crate::{Error, Result, RngSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchResult {
    pub name: String,
    pub sample_size: usize,
    pub reps: usize,
    pub mean_ns: f64,
    pub median_ns: f64,
}

/// Runs `thunk` `warmup` times untimed, then `reps` times on the monotonic
/// clock. The first error aborts the benchmark.
pub fn time_fn<T, F>(
    label: &str,
    sample_size: usize,
    mut thunk: F,
    reps: usize,
    warmup: usize,
) -> Result<BenchResult>
where
    F: FnMut() -> Result<T>,
{
    if reps == 0 {
        return Err(Error::Range("reps must be at least 1".into()));
    }
    for _ in 0..warmup {
        black_box(thunk()?);
    }
    let mut times = Vec::with_capacity(reps);
    for _ in 0..reps {
        let start = Instant::now();
        let out = thunk()?;
        times.push(start.elapsed().as_nanos() as f64);
        black_box(out);
    }
    let mean_ns = times.iter().sum::<f64>() / reps as f64;
    times.sort_by(f64::total_cmp);
    let median_ns = if reps % 2 == 1 {
        times[reps / 2]
    } else {
        0.5 * (times[reps / 2 - 1] + times[reps / 2])
    };
    Ok(BenchResult {
        name: label.to_string(),
        sample_size,
        reps,
        mean_ns,
        median_ns,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    CoefRecursion,
    CsaFiniteVsAsym,
    FracdiffFftVsNaive,
    Estimators,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::CoefRecursion,
        Suite::CsaFiniteVsAsym,
        Suite::FracdiffFftVsNaive,
        Suite::Estimators,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::CoefRecursion => "coef-recursion",
            Suite::CsaFiniteVsAsym => "csa-finite-vs-asym",
            Suite::FracdiffFftVsNaive => "fracdiff-fft-vs-naive",
            Suite::Estimators => "estimators",
        }
    }
}

/// `baseline.mean_ns / candidate.mean_ns`; above 1 means the candidate wins.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub candidate: String,
    pub baseline: String,
    pub speedup: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub sample_size: usize,
    pub reps: usize,
    pub results: Vec<BenchResult>,
    pub comparisons: Vec<Comparison>,
    /// Largest deviation between two implementations of the same map, when
    /// the suite compares outputs.
    pub max_abs_diff: Option<f64>,
}

const WARMUP: usize = 1;
const BENCH_D: f64 = 0.3;
const BENCH_P: f64 = 1.3;
const BENCH_Q: f64 = 1.5;

fn compare(candidate: &BenchResult, baseline: &BenchResult) -> Comparison {
    Comparison {
        candidate: candidate.name.clone(),
        baseline: baseline.name.clone(),
        speedup: baseline.mean_ns / candidate.mean_ns,
    }
}

/// FI MA weights through a vector of ratios and a cumulative product, the
/// array-style alternative to the single recursive loop.
pub fn fi_ma_coefs_cumprod(k: usize, d: f64) -> Vec<f64> {
    let num: Vec<f64> = (0..k.saturating_sub(1)).map(|j| j as f64 + d).collect();
    let den: Vec<f64> = (1..k).map(|j| j as f64).collect();
    let ratios: Vec<f64> = num.iter().zip(&den).map(|(a, b)| a / b).collect();
    std::iter::once(1.0)
        .chain(ratios.iter().scan(1.0, |acc, r| {
            *acc *= r;
            Some(*acc)
        }))
        .take(k)
        .collect()
}

pub fn run_suite(suite: Suite, n: usize, reps: usize) -> Result<SuiteReport> {
    if n < 2 {
        return Err(Error::Range(format!("sample size n = {n} must be at least 2")));
    }
    let mut max_abs_diff = None;
    let (results, comparisons) = match suite {
        Suite::CoefRecursion => {
            let looped = time_fn("fi_rec", n, || fi_ma_coefs(n, BENCH_D), reps, WARMUP)?;
            let cum = time_fn("fi_cum", n, || Ok(fi_ma_coefs_cumprod(n, BENCH_D)), reps, WARMUP)?;
            let c = compare(&looped, &cum);
            (vec![looped, cum], vec![c])
        }
        Suite::CsaFiniteVsAsym => {
            let rng = RngSpec::new(1);
            let asym = time_fn("csa_gen", n, || csa_gen(n, BENCH_P, BENCH_Q, 1.0, &rng), reps, WARMUP)?;
            let finite = time_fn(
                "csa_gen_finite",
                n,
                || csa_gen_finite(n, n, BENCH_P, BENCH_Q, 1.0, &rng),
                reps,
                WARMUP,
            )?;
            let c = compare(&asym, &finite);
            (vec![asym, finite], vec![c])
        }
        Suite::FracdiffFftVsNaive => {
            let x = fi_gen(n, BENCH_D, 1.0, &RngSpec::new(2))?;
            let fft = time_fn("fracdiff_fft", n, || fracdiff(&x, BENCH_D), reps, WARMUP)?;
            let naive = time_fn(
                "fracdiff_naive",
                n,
                || naive_convolve(&x, &frac_diff_weights(n, BENCH_D)),
                reps,
                WARMUP,
            )?;
            let a = fracdiff(&x, BENCH_D)?;
            let b = naive_convolve(&x, &frac_diff_weights(n, BENCH_D))?;
            max_abs_diff = Some(a.iter().zip(&b).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max));
            let c = compare(&fft, &naive);
            (vec![fft, naive], vec![c])
        }
        Suite::Estimators => {
            let rng = RngSpec::new(3);
            let x = fi_gen(n, BENCH_D, 1.0, &rng)?;
            let results = vec![
                time_fn("fi_gen", n, || fi_gen(n, BENCH_D, 1.0, &rng), reps, WARMUP)?,
                time_fn("gph_est", n, || gph_est(&x, None, 0), reps, WARMUP)?,
                time_fn("whittle_est", n, || whittle_est(&x, None), reps, WARMUP)?,
                time_fn("exact_whittle_est", n, || exact_whittle_est(&x, None), reps, WARMUP)?,
                time_fn("fi_mle_est", n, || fi_mle_fit(&x), reps, WARMUP)?,
                time_fn("har_est", n, || har_est(&x, &DEFAULT_HAR_LAGS), reps, WARMUP)?,
            ];
            (results, Vec::new())
        }
    };
    Ok(SuiteReport {
        suite,
        sample_size: n,
        reps,
        results,
        comparisons,
        max_abs_diff,
    })
}
