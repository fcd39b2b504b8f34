//! The `longmem` command line: argument definitions and dispatch.
//!
//! Every command prints one JSON [`RunReport`] on stdout and writes any
//! requested files. Failures print a single `error:` line on stderr and exit
//! with 2 (invalid request), 3 (numerical failure) or 4 (input/output).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bench::{run_suite, BenchResult, Suite};
use crate::classic::{log_variance_est, rescaled_range_est};
use crate::data::{self, load_csv, write_series};
use crate::forecast::{csa_forecast, fi_forecast, har_forecast_model, Forecast};
use crate::generate::{csa_gen, csa_gen_finite, fi_gen, sds_gen};
use crate::param::{csa_mle_fit, fi_mle_fit, har_est, DEFAULT_HAR_LAGS};
use crate::plot::{self, PlotSpec};
use crate::semiparam::{default_bandwidth, exact_whittle_est, gph_est, whittle_est, DEFAULT_BANDWIDTH_EXPONENT};
use crate::{Error, Result, RngSpec, Series};

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(name = "longmem", version, about = "Long-memory time series: simulate, estimate, forecast, plot")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate a long-memory series
    Generate(GenerateArgs),
    /// Estimate the memory parameter or fit a model
    Estimate(EstimateArgs),
    /// Forecast from a fitted or given model
    Forecast(ForecastArgs),
    /// Draw diagnostic figures as SVG
    Plot(PlotArgs),
    /// List or export the bundled datasets
    Data(DataArgs),
    /// Run a timing suite
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenKind {
    Fi,
    Csa,
    CsaFinite,
    Sds,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub kind: GenKind,
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub d: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    /// Number of aggregated units (csa-finite)
    #[arg(long = "N", default_value_t = 1000)]
    pub units: usize,
    #[arg(long, default_value_t = 1.0)]
    pub sigma: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// CSV destination; without it the values are included in the report
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Bundled dataset name (nile, nhtemp)
    #[arg(long, conflicts_with = "input")]
    pub data: Option<String>,
    /// CSV file to read
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Column of --input to use
    #[arg(long, default_value = "x")]
    pub column: String,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EstMethod {
    Gph,
    Lw,
    Elw,
    FiMle,
    CsaMle,
    Har,
    Logvar,
    Rs,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[arg(value_enum)]
    pub method: EstMethod,
    #[command(flatten)]
    pub input: InputArgs,
    /// Bandwidth m = round(T^exp) when --m is absent
    #[arg(long, default_value_t = DEFAULT_BANDWIDTH_EXPONENT)]
    pub bandwidth_exp: f64,
    /// Bandwidth (gph/lw/elw) or number of block sizes (logvar)
    #[arg(long)]
    pub m: Option<usize>,
    /// Bias-reduction order for gph
    #[arg(long, default_value_t = 0)]
    pub br: usize,
    /// HAR horizons, comma separated
    #[arg(long, value_delimiter = ',')]
    pub lags: Option<Vec<usize>>,
    /// Number of window sizes (rs)
    #[arg(long, default_value_t = 300)]
    pub k: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ForecastKind {
    Fi,
    Csa,
    Har,
}

#[derive(Debug, Args)]
pub struct ForecastArgs {
    #[arg(value_enum)]
    pub model: ForecastKind,
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub h: usize,
    /// Estimate the model parameters from the data first
    #[arg(long)]
    pub fit: bool,
    /// Forecast the demeaned series and add the mean back (default)
    #[arg(long, overrides_with = "no_demean")]
    pub demean: bool,
    #[arg(long, overrides_with = "demean")]
    pub no_demean: bool,
    #[arg(long, allow_negative_numbers = true)]
    pub d: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    pub lags: Option<Vec<usize>>,
    /// SVG file for the forecast figure
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlotKind {
    Acf,
    Periodogram,
    Logvar,
    Rs,
    Lm,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(value_enum)]
    pub kind: PlotKind,
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub out: PathBuf,
    /// CSV file receiving the plotted numbers
    #[arg(long)]
    pub dump: Option<PathBuf>,
    /// Number of block sizes (logvar)
    #[arg(long)]
    pub m: Option<usize>,
    /// Number of window sizes (rs)
    #[arg(long, default_value_t = 300)]
    pub k: usize,
    /// Number of autocorrelation lags (acf)
    #[arg(long, default_value_t = 50)]
    pub nlags: usize,
    /// Add fitted and reference slopes (logvar, rs)
    #[arg(long)]
    pub slopes: bool,
    #[arg(long)]
    pub title: Option<String>,
}

#[derive(Debug, Args)]
pub struct DataArgs {
    /// Dataset to describe; all are listed when omitted
    pub name: Option<String>,
    /// Export the dataset as CSV
    #[arg(long, requires = "name")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BenchSuite {
    CoefRecursion,
    CsaFiniteVsAsym,
    FracdiffFftVsNaive,
    Estimators,
}

impl From<BenchSuite> for Suite {
    fn from(s: BenchSuite) -> Suite {
        match s {
            BenchSuite::CoefRecursion => Suite::CoefRecursion,
            BenchSuite::CsaFiniteVsAsym => Suite::CsaFiniteVsAsym,
            BenchSuite::FracdiffFftVsNaive => Suite::FracdiffFftVsNaive,
            BenchSuite::Estimators => Suite::Estimators,
        }
    }
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(value_enum)]
    pub suite: BenchSuite,
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    #[arg(long, default_value_t = 5)]
    pub reps: usize,
}

/// Machine-readable record of one invocation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    /// The arguments as given, without the program name.
    pub command: Vec<String>,
    pub subcommand: String,
    pub parameters: Value,
    pub results: Value,
    /// Only `bench` fills this; other commands stay deterministic.
    pub timings: Vec<BenchResult>,
    pub version: String,
    pub seed: Option<u64>,
}

/// Outcome of [`execute`]: exit status and the text destined for each stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the command.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                },
                _ => {
                    let line = e
                        .to_string()
                        .lines()
                        .next()
                        .unwrap_or("error: invalid arguments")
                        .to_string();
                    Outcome {
                        code: 2,
                        stdout: String::new(),
                        stderr: format!("{line}\n"),
                    }
                }
            };
        }
    };
    let echo = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match run(cli, echo) {
        Ok(report) => Outcome {
            code: 0,
            stdout: format!("{}\n", serde_json::to_string_pretty(&report).expect("report serializes")),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {}\n", e.to_string().replace('\n', " ")),
        },
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("result serializes")
}

fn report(echo: Vec<String>, subcommand: &str, parameters: Value, results: Value, seed: Option<u64>) -> RunReport {
    RunReport {
        command: echo,
        subcommand: subcommand.to_string(),
        parameters,
        results,
        timings: Vec::new(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed,
    }
}

/// Runs a parsed command.
pub fn run(cli: Cli, echo: Vec<String>) -> Result<RunReport> {
    match cli.command {
        Command::Generate(a) => cmd_generate(a, echo),
        Command::Estimate(a) => cmd_estimate(a, echo),
        Command::Forecast(a) => cmd_forecast(a, echo),
        Command::Plot(a) => cmd_plot(a, echo),
        Command::Data(a) => cmd_data(a, echo),
        Command::Bench(a) => cmd_bench(a, echo),
    }
}

fn required(value: Option<f64>, flag: &'static str) -> Result<f64> {
    value.ok_or_else(|| Error::Range(format!("--{flag} is required")))
}

fn load_input(input: &InputArgs) -> Result<Series> {
    match (&input.data, &input.input) {
        (Some(name), _) => data::builtin_series(name),
        (None, Some(path)) => load_csv(path, &input.column),
        (None, None) => Err(Error::Range("one of --data or --input is required".into())),
    }
}

fn input_params(input: &InputArgs) -> Value {
    json!({ "data": input.data, "input": input.input, "column": input.column })
}

pub fn cmd_generate(a: GenerateArgs, echo: Vec<String>) -> Result<RunReport> {
    let rng = RngSpec::new(a.seed);
    let series = match a.kind {
        GenKind::Fi => fi_gen(a.n, required(a.d, "d")?, a.sigma, &rng)?,
        GenKind::Sds => sds_gen(a.n, required(a.d, "d")?, a.sigma, &rng)?,
        GenKind::Csa => csa_gen(a.n, required(a.p, "p")?, required(a.q, "q")?, a.sigma, &rng)?,
        GenKind::CsaFinite => csa_gen_finite(a.n, a.units, required(a.p, "p")?, required(a.q, "q")?, a.sigma, &rng)?,
    };
    if let Some(path) = &a.out {
        write_series(path, &series, "x")?;
    }
    let parameters = json!({
        "kind": a.kind, "n": a.n, "d": a.d, "p": a.p, "q": a.q,
        "N": matches!(a.kind, GenKind::CsaFinite).then_some(a.units),
        "sigma": a.sigma, "out": a.out,
    });
    let mut results = json!({ "length": series.len(), "mean": series.mean(), "column": "x" });
    if a.out.is_none() {
        results["values"] = to_value(&series.values());
    }
    Ok(report(echo, "generate", parameters, results, Some(a.seed)))
}

pub fn cmd_estimate(a: EstimateArgs, echo: Vec<String>) -> Result<RunReport> {
    let x = load_input(&a.input)?;
    let t = x.len();
    let bandwidth = || -> Result<usize> {
        if !(a.bandwidth_exp > 0.0 && a.bandwidth_exp < 1.0) {
            return Err(Error::domain("bandwidth exponent", a.bandwidth_exp, "(0, 1)"));
        }
        Ok(a.m.unwrap_or_else(|| default_bandwidth(t, a.bandwidth_exp)))
    };
    let results = match a.method {
        EstMethod::Gph => to_value(&gph_est(&x, Some(bandwidth()?), a.br)?),
        EstMethod::Lw => to_value(&whittle_est(&x, Some(bandwidth()?))?),
        EstMethod::Elw => to_value(&exact_whittle_est(&x, Some(bandwidth()?))?),
        EstMethod::FiMle => to_value(&fi_mle_fit(&x)?),
        EstMethod::CsaMle => {
            let fit = csa_mle_fit(&x)?;
            let mut v = to_value(&fit);
            v["implied_d"] = json!(fit.params.implied_d());
            v
        }
        EstMethod::Har => {
            let lags = a.lags.clone().unwrap_or_else(|| DEFAULT_HAR_LAGS.to_vec());
            to_value(&har_est(&x, &lags)?)
        }
        EstMethod::Logvar => to_value(&log_variance_est(&x, a.m.unwrap_or(300.min(t / 2)))?),
        EstMethod::Rs => to_value(&rescaled_range_est(&x, a.k)?),
    };
    let parameters = json!({
        "method": a.method, "source": input_params(&a.input), "length": t,
        "bandwidth_exp": a.bandwidth_exp, "m": a.m, "br": a.br, "lags": a.lags, "k": a.k,
    });
    Ok(report(echo, "estimate", parameters, results, None))
}

pub fn cmd_forecast(a: ForecastArgs, echo: Vec<String>) -> Result<RunReport> {
    if a.h == 0 {
        return Err(Error::Range("--h must be at least 1".into()));
    }
    let x = load_input(&a.input)?;
    let demean = !a.no_demean;
    let mu = if demean { x.mean() } else { 0.0 };
    let centred: Vec<f64> = x.iter().map(|v| v - mu).collect();
    let mut fitted = Value::Null;
    let forecast: Forecast = match a.model {
        ForecastKind::Fi => {
            let (d, sigma) = if a.fit {
                let fit = fi_mle_fit(&x)?;
                fitted = to_value(&fit);
                (fit.params.d, fit.params.sigma)
            } else {
                (required(a.d, "d")?, required(a.sigma, "sigma")?)
            };
            fi_forecast(&centred, a.h, d, sigma)?.with_mean(mu)
        }
        ForecastKind::Csa => {
            let (p, q, sigma) = if a.fit {
                let fit = csa_mle_fit(&x)?;
                fitted = to_value(&fit);
                (fit.params.p, fit.params.q, fit.params.sigma)
            } else {
                (required(a.p, "p")?, required(a.q, "q")?, required(a.sigma, "sigma")?)
            };
            csa_forecast(&centred, a.h, p, q, sigma)?.with_mean(mu)
        }
        ForecastKind::Har => {
            // the intercept absorbs the mean, so HAR always sees raw data
            let lags = a.lags.clone().unwrap_or_else(|| DEFAULT_HAR_LAGS.to_vec());
            let model = har_est(&x, &lags)?;
            fitted = to_value(&model);
            har_forecast_model(&x, a.h, &model)?
        }
    };
    if let Some(path) = &a.plot {
        let title = format!("{} forecast, h = {}", kind_name(a.model), a.h);
        plot::forecast_plot(&x, &forecast, &title)?.write_svg(path)?;
    }
    let parameters = json!({
        "model": a.model, "source": input_params(&a.input), "length": x.len(), "h": a.h,
        "fit": a.fit, "demean": demean, "d": a.d, "p": a.p, "q": a.q, "sigma": a.sigma,
        "lags": a.lags, "plot": a.plot,
    });
    let results = json!({ "mean": mu, "fitted": fitted, "forecast": forecast });
    Ok(report(echo, "forecast", parameters, results, None))
}

fn kind_name(k: ForecastKind) -> &'static str {
    match k {
        ForecastKind::Fi => "FI",
        ForecastKind::Csa => "CSA",
        ForecastKind::Har => "HAR",
    }
}

pub fn cmd_plot(a: PlotArgs, echo: Vec<String>) -> Result<RunReport> {
    let x = load_input(&a.input)?;
    let name = x.label.clone().unwrap_or_else(|| "series".into());
    let title = a.title.clone().unwrap_or(name);
    let m = a.m.unwrap_or(300.min(x.len() / 2));
    let spec: PlotSpec = match a.kind {
        PlotKind::Acf => plot::acf_plot(&x, a.nlags, &title)?,
        PlotKind::Periodogram => plot::periodogram_plot(&x, &title)?,
        PlotKind::Logvar => plot::log_variance_plot(&x, m, a.slopes, &title)?,
        PlotKind::Rs => plot::rescaled_range_plot(&x, a.k, a.slopes, &title)?,
        PlotKind::Lm => plot::lm_plot(&x, &title)?,
    };
    spec.write_svg(&a.out)?;
    if let Some(path) = &a.dump {
        spec.write_csv(path)?;
    }
    let parameters = json!({
        "kind": a.kind, "source": input_params(&a.input), "out": a.out, "dump": a.dump,
        "m": a.m, "k": a.k, "nlags": a.nlags, "slopes": a.slopes,
    });
    let results = json!({
        "panels": spec.panels.len(),
        "series": spec.panels.iter().map(|p| p.layers.len()).sum::<usize>(),
        "svg": a.out,
        "csv": a.dump,
    });
    Ok(report(echo, "plot", parameters, results, None))
}

fn describe(name: &str) -> Value {
    let ds = match name {
        "nile" => data::nile_data(),
        "nhtemp" => data::nhtemp_data(),
        other => return json!({ "name": other, "available": false, "reason": "unknown dataset" }),
    };
    match ds {
        Ok(ds) => json!({
            "name": ds.name,
            "available": true,
            "length": ds.len(),
            "columns": ds.columns.iter().map(|c| c.name.clone()).collect::<Vec<_>>(),
            "source_note": ds.source_note,
        }),
        Err(e) => json!({ "name": name, "available": false, "reason": e.to_string() }),
    }
}

pub fn cmd_data(a: DataArgs, echo: Vec<String>) -> Result<RunReport> {
    let parameters = json!({ "name": a.name, "out": a.out, "data_dir": data::data_dir() });
    let results = match &a.name {
        None => json!(["nile", "nhtemp"].map(describe)),
        Some(name) => {
            let ds = match name.as_str() {
                "nile" => data::nile_data()?,
                "nhtemp" => data::nhtemp_data()?,
                other => {
                    return Err(Error::Resource {
                        name: other.to_string(),
                        reason: "unknown dataset; expected nile or nhtemp".into(),
                    })
                }
            };
            if let Some(path) = &a.out {
                let cols: Vec<(&str, &[f64])> =
                    ds.columns.iter().map(|c| (c.name.as_str(), c.values.as_slice())).collect();
                data::write_csv(path, &cols)?;
            }
            describe(name)
        }
    };
    Ok(report(echo, "data", parameters, results, None))
}

pub fn cmd_bench(a: BenchArgs, echo: Vec<String>) -> Result<RunReport> {
    let suite: Suite = a.suite.into();
    let rep = run_suite(suite, a.n, a.reps)?;
    let parameters = json!({ "suite": suite.name(), "n": a.n, "reps": a.reps });
    let results = json!({ "comparisons": rep.comparisons, "max_abs_diff": rep.max_abs_diff });
    let mut r = report(echo, "bench", parameters, results, None);
    r.timings = rep.results;
    Ok(r)
}
