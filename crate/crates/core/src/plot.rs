//! Declarative diagnostic figures rendered to SVG and dumped as CSV.
//!
//! A [`PlotSpec`] holds only numbers and labels. [`PlotSpec::to_svg`] renders
//! it with a small emitter (axes, ticks, lines, stems, points, ribbons) and
//! [`PlotSpec::to_csv`] / [`PlotSpec::from_csv`] round-trip the data exactly,
//! so re-rendering a dump reproduces the same SVG.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::classic::{log_variance_est, rescaled_range_est};
use crate::forecast::Forecast;
use crate::moments::{autocorrelation, periodogram};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LayerKind {
    Line,
    Stem,
    Scatter,
    /// Points with positive coordinates drawn on log-log axes. A panel holding
    /// one of these puts every layer on log axes.
    LogScatter,
    /// Ribbon between `y` (lower) and `y2` (upper).
    Band,
}

impl LayerKind {
    fn as_str(self) -> &'static str {
        match self {
            LayerKind::Line => "line",
            LayerKind::Stem => "stem",
            LayerKind::Scatter => "scatter",
            LayerKind::LogScatter => "logscatter",
            LayerKind::Band => "band",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "line" => LayerKind::Line,
            "stem" => LayerKind::Stem,
            "scatter" => LayerKind::Scatter,
            "logscatter" => LayerKind::LogScatter,
            "band" => LayerKind::Band,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Layer {
    pub kind: LayerKind,
    pub label: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    /// Upper edge for bands; empty otherwise.
    pub y2: Vec<f64>,
}

impl Layer {
    pub fn new(kind: LayerKind, label: impl Into<String>, x: Vec<f64>, y: Vec<f64>) -> Self {
        Layer {
            kind,
            label: label.into(),
            x,
            y,
            y2: Vec::new(),
        }
    }

    pub fn band(label: impl Into<String>, x: Vec<f64>, lower: Vec<f64>, upper: Vec<f64>) -> Self {
        Layer {
            kind: LayerKind::Band,
            label: label.into(),
            x,
            y: lower,
            y2: upper,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Panel {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub layers: Vec<Layer>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotSpec {
    pub title: String,
    pub rows: usize,
    pub cols: usize,
    pub panels: Vec<Panel>,
}

impl Panel {
    fn is_log(&self) -> bool {
        self.layers.iter().any(|l| l.kind == LayerKind::LogScatter)
    }
}

const PANEL_W: f64 = 480.0;
const PANEL_H: f64 = 340.0;
const TITLE_H: f64 = 30.0;
const MARGIN_L: f64 = 60.0;
const MARGIN_R: f64 = 20.0;
const MARGIN_T: f64 = 30.0;
const MARGIN_B: f64 = 45.0;
const PALETTE: [&str; 5] = ["#1f77b4", "#d62728", "#2ca02c", "#7f7f7f", "#9467bd"];

impl PlotSpec {
    /// Checks the layout and that every layer's arrays are non-empty, finite
    /// and of equal length.
    pub fn validate(&self) -> Result<()> {
        if self.panels.is_empty() || self.panels.len() > self.rows * self.cols {
            return Err(Error::Shape(format!(
                "{} panels do not fit a {}x{} grid",
                self.panels.len(),
                self.rows,
                self.cols
            )));
        }
        for (p, panel) in self.panels.iter().enumerate() {
            let log = panel.is_log();
            for layer in &panel.layers {
                let n = layer.x.len();
                let y2_ok = match layer.kind {
                    LayerKind::Band => layer.y2.len() == n,
                    _ => layer.y2.is_empty(),
                };
                if n == 0 || layer.y.len() != n || !y2_ok {
                    return Err(Error::Shape(format!(
                        "panel {p}, layer {:?}: array lengths disagree",
                        layer.label
                    )));
                }
                let all = layer.x.iter().chain(&layer.y).chain(&layer.y2);
                if all.clone().any(|v| !v.is_finite()) {
                    return Err(Error::Degenerate(format!(
                        "panel {p}, layer {:?}: non-finite coordinate",
                        layer.label
                    )));
                }
                if log && matches!(layer.kind, LayerKind::Stem | LayerKind::Band) {
                    return Err(Error::Shape(format!(
                        "panel {p}: {} layers cannot share log axes",
                        layer.kind.as_str()
                    )));
                }
                if log && all.clone().any(|v| *v <= 0.0) {
                    return Err(Error::Domain {
                        name: "log-axis coordinate",
                        value: all.copied().fold(f64::INFINITY, f64::min),
                        allowed: "> 0",
                    });
                }
            }
        }
        Ok(())
    }

    pub fn to_svg(&self) -> Result<String> {
        self.validate()?;
        let width = PANEL_W * self.cols as f64;
        let height = PANEL_H * self.rows as f64 + TITLE_H;
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
        );
        let _ = writeln!(s, r#"<rect width="{width}" height="{height}" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="20" text-anchor="middle" font-size="15">{}</text>"#,
            width / 2.0,
            escape(&self.title)
        );
        for (i, panel) in self.panels.iter().enumerate() {
            let ox = PANEL_W * (i % self.cols) as f64;
            let oy = TITLE_H + PANEL_H * (i / self.cols) as f64;
            render_panel(&mut s, panel, i, ox, oy);
        }
        s.push_str("</svg>\n");
        Ok(s)
    }

    pub fn write_svg(&self, path: impl AsRef<Path>) -> Result<()> {
        write_file(path.as_ref(), &self.to_svg()?)
    }

    /// Long-format dump, one row per plotted point.
    pub fn to_csv(&self) -> Result<String> {
        self.validate()?;
        let mut w = csv::Writer::from_writer(Vec::new());
        let header = [
            "figure", "rows", "cols", "panel", "panel_title", "x_label", "y_label", "layer",
            "kind", "label", "x", "y", "y2",
        ];
        let ser = |e: csv::Error| Error::Numerical(e.to_string());
        w.write_record(header).map_err(ser)?;
        for (p, panel) in self.panels.iter().enumerate() {
            for (l, layer) in panel.layers.iter().enumerate() {
                for i in 0..layer.x.len() {
                    let y2 = layer.y2.get(i).map_or(String::new(), |v| format!("{v:?}"));
                    w.write_record([
                        self.title.clone(),
                        self.rows.to_string(),
                        self.cols.to_string(),
                        p.to_string(),
                        panel.title.clone(),
                        panel.x_label.clone(),
                        panel.y_label.clone(),
                        l.to_string(),
                        layer.kind.as_str().to_string(),
                        layer.label.clone(),
                        format!("{:?}", layer.x[i]),
                        format!("{:?}", layer.y[i]),
                        y2,
                    ])
                    .map_err(ser)?;
                }
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::Numerical(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        write_file(path.as_ref(), &self.to_csv()?)
    }

    /// Rebuilds a spec from [`PlotSpec::to_csv`] output.
    pub fn from_csv(text: &str) -> Result<PlotSpec> {
        let mut rdr = csv::Reader::from_reader(text.as_bytes());
        let mut spec: Option<PlotSpec> = None;
        for (i, rec) in rdr.records().enumerate() {
            let row = i + 1;
            let rec = rec.map_err(|e| Error::Parse {
                row,
                reason: e.to_string(),
            })?;
            if rec.len() != 13 {
                return Err(Error::Parse {
                    row,
                    reason: format!("expected 13 fields, found {}", rec.len()),
                });
            }
            let int = |j: usize| -> Result<usize> {
                rec[j].parse().map_err(|_| Error::Parse {
                    row,
                    reason: format!("field {j} is not an integer"),
                })
            };
            let num = |j: usize| -> Result<f64> {
                rec[j].parse().map_err(|_| Error::Parse {
                    row,
                    reason: format!("field {j} is not a number"),
                })
            };
            let spec = spec.get_or_insert_with(|| PlotSpec {
                title: rec[0].to_string(),
                rows: 0,
                cols: 0,
                panels: Vec::new(),
            });
            spec.rows = int(1)?;
            spec.cols = int(2)?;
            let (p, l) = (int(3)?, int(7)?);
            if p > spec.panels.len() {
                return Err(Error::Parse {
                    row,
                    reason: "panels out of order".into(),
                });
            }
            if p == spec.panels.len() {
                spec.panels.push(Panel {
                    title: rec[4].to_string(),
                    x_label: rec[5].to_string(),
                    y_label: rec[6].to_string(),
                    layers: Vec::new(),
                });
            }
            let panel = &mut spec.panels[p];
            if l > panel.layers.len() {
                return Err(Error::Parse {
                    row,
                    reason: "layers out of order".into(),
                });
            }
            if l == panel.layers.len() {
                let kind = LayerKind::parse(&rec[8]).ok_or_else(|| Error::Parse {
                    row,
                    reason: format!("unknown layer kind {:?}", &rec[8]),
                })?;
                panel.layers.push(Layer::new(kind, &rec[9], Vec::new(), Vec::new()));
            }
            let layer = &mut panel.layers[l];
            layer.x.push(num(10)?);
            layer.y.push(num(11)?);
            if layer.kind == LayerKind::Band {
                layer.y2.push(num(12)?);
            }
        }
        let spec = spec.ok_or(Error::Empty("plot dump has no data rows"))?;
        spec.validate()?;
        Ok(spec)
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Step of roughly `span / 5` rounded to 1, 2 or 5 times a power of ten.
fn nice_step(span: f64) -> f64 {
    let raw = span / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let m = if norm < 1.5 {
        1.0
    } else if norm < 3.5 {
        2.0
    } else if norm < 7.5 {
        5.0
    } else {
        10.0
    };
    m * mag
}

fn data_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if hi - lo > 1e-12 * (1.0 + lo.abs().max(hi.abs())) {
        let pad = 0.04 * (hi - lo);
        (lo - pad, hi + pad)
    } else {
        (lo - 1.0, hi + 1.0)
    }
}

fn render_panel(s: &mut String, panel: &Panel, index: usize, ox: f64, oy: f64) {
    let log = panel.is_log();
    let tf = |v: f64| if log { v.log10() } else { v };
    let (x0, x1) = data_range(panel.layers.iter().flat_map(|l| l.x.iter().map(|&v| tf(v))));
    let (y0, y1) = data_range(
        panel
            .layers
            .iter()
            .flat_map(|l| l.y.iter().chain(&l.y2).map(|&v| tf(v)))
            .chain(
                // stems start at zero
                panel
                    .layers
                    .iter()
                    .filter(|l| l.kind == LayerKind::Stem)
                    .map(|_| 0.0),
            ),
    );
    let left = ox + MARGIN_L;
    let right = ox + PANEL_W - MARGIN_R;
    let top = oy + MARGIN_T;
    let bottom = oy + PANEL_H - MARGIN_B;
    // screen maps take data coordinates; tick maps take axis coordinates
    let ax = |x: f64| left + (x - x0) / (x1 - x0) * (right - left);
    let ay = |y: f64| bottom - (y - y0) / (y1 - y0) * (bottom - top);
    let sx = |x: f64| ax(tf(x));
    let sy = |y: f64| ay(tf(y));
    let tick_step = |span: f64| if log { nice_step(span).max(1.0) } else { nice_step(span) };
    let label = |t: f64, step: f64| if log { format!("1e{}", t.round()) } else { tick_label(t, step) };

    let _ = writeln!(s, r#"<g class="panel" data-index="{index}">"#);
    let _ = writeln!(
        s,
        r#"<rect x="{left:.2}" y="{top:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
        right - left,
        bottom - top
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="13">{}</text>"#,
        (left + right) / 2.0,
        top - 10.0,
        escape(&panel.title)
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        (left + right) / 2.0,
        bottom + 36.0,
        escape(&panel.x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" transform="rotate(-90 {:.2} {:.2})">{}</text>"#,
        ox + 14.0,
        (top + bottom) / 2.0,
        ox + 14.0,
        (top + bottom) / 2.0,
        escape(&panel.y_label)
    );
    // ticks
    let _ = writeln!(s, r#"<g class="axes" stroke="black">"#);
    let step = tick_step(x1 - x0);
    let mut t = (x0 / step).ceil() * step;
    while t <= x1 {
        let px = ax(t);
        let _ = writeln!(
            s,
            r#"<line x1="{px:.2}" y1="{bottom:.2}" x2="{px:.2}" y2="{:.2}"/><text x="{px:.2}" y="{:.2}" text-anchor="middle" stroke="none">{}</text>"#,
            bottom + 5.0,
            bottom + 17.0,
            label(t, step)
        );
        t += step;
    }
    let step = tick_step(y1 - y0);
    let mut t = (y0 / step).ceil() * step;
    while t <= y1 {
        let py = ay(t);
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{left:.2}" y2="{py:.2}"/><text x="{:.2}" y="{:.2}" text-anchor="end" stroke="none">{}</text>"#,
            left - 5.0,
            left - 7.0,
            py + 4.0,
            label(t, step)
        );
        t += step;
    }
    s.push_str("</g>\n");

    for (l, layer) in panel.layers.iter().enumerate() {
        let color = PALETTE[l % PALETTE.len()];
        let _ = writeln!(
            s,
            r#"<g class="series" data-kind="{}" data-label="{}">"#,
            layer.kind.as_str(),
            escape(&layer.label)
        );
        match layer.kind {
            LayerKind::Line => {
                let _ = writeln!(
                    s,
                    r#"<path d="{}" fill="none" stroke="{color}" stroke-width="1.2"/>"#,
                    polyline(layer.x.iter().zip(&layer.y).map(|(&x, &y)| (sx(x), sy(y))))
                );
            }
            LayerKind::Stem => {
                let base = sy(0.0);
                let mut d = String::new();
                for (&x, &y) in layer.x.iter().zip(&layer.y) {
                    let _ = write!(d, "M{:.2},{base:.2}L{:.2},{:.2}", sx(x), sx(x), sy(y));
                }
                let _ = writeln!(s, r#"<path d="{d}" stroke="{color}" stroke-width="1.5"/>"#);
                for (&x, &y) in layer.x.iter().zip(&layer.y) {
                    let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="2" fill="{color}"/>"#, sx(x), sy(y));
                }
            }
            LayerKind::Scatter | LayerKind::LogScatter => {
                for (&x, &y) in layer.x.iter().zip(&layer.y) {
                    let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="2" fill="{color}"/>"#, sx(x), sy(y));
                }
            }
            LayerKind::Band => {
                let upper = layer.x.iter().zip(&layer.y2).map(|(&x, &y)| (sx(x), sy(y)));
                let lower = layer.x.iter().zip(&layer.y).rev().map(|(&x, &y)| (sx(x), sy(y)));
                let _ = writeln!(
                    s,
                    r#"<path d="{}Z" fill="{color}" fill-opacity="0.25" stroke="none"/>"#,
                    polyline(upper.chain(lower))
                );
            }
        }
        s.push_str("</g>\n");
    }
    s.push_str("</g>\n");
}

fn polyline(points: impl Iterator<Item = (f64, f64)>) -> String {
    let mut d = String::new();
    for (i, (x, y)) in points.enumerate() {
        let _ = write!(d, "{}{x:.2},{y:.2}", if i == 0 { "M" } else { "L" });
    }
    d
}

fn tick_label(v: f64, step: f64) -> String {
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    let v = if v.abs() < step * 1e-9 { 0.0 } else { v };
    format!("{v:.decimals$}")
}

fn index_axis(n: usize) -> Vec<f64> {
    (1..=n).map(|t| t as f64).collect()
}

fn series_panel(x: &[f64], title: &str) -> Panel {
    Panel {
        title: title.to_string(),
        x_label: "t".into(),
        y_label: "value".into(),
        layers: vec![Layer::new(LayerKind::Line, "series", index_axis(x.len()), x.to_vec())],
    }
}

/// Sample autocorrelations at lags `0..lags` with `±1.96/√T` guides.
pub fn acf_panel(x: &[f64], lags: usize) -> Result<Panel> {
    let acf = autocorrelation(x, lags.min(x.len()))?;
    let k: Vec<f64> = acf.lags.iter().map(|&l| l as f64).collect();
    let bound = 1.96 / (x.len() as f64).sqrt();
    let ends = vec![0.0, *k.last().unwrap()];
    Ok(Panel {
        title: "Autocorrelation".into(),
        x_label: "lag".into(),
        y_label: "ACF".into(),
        layers: vec![
            Layer::new(LayerKind::Stem, "sample", k, acf.values),
            Layer::new(LayerKind::Line, "upper 95%", ends.clone(), vec![bound; 2]),
            Layer::new(LayerKind::Line, "lower 95%", ends, vec![-bound; 2]),
        ],
    })
}

/// Periodogram ordinates against Fourier frequency on log-log axes.
pub fn periodogram_panel(x: &[f64]) -> Result<Panel> {
    let p = periodogram(x)?;
    let (lx, ly): (Vec<f64>, Vec<f64>) = p
        .frequencies
        .iter()
        .zip(&p.ordinates)
        .filter(|(_, i)| **i > 0.0)
        .map(|(l, i)| (*l, *i))
        .unzip();
    if lx.is_empty() {
        return Err(Error::Degenerate("periodogram is identically zero".into()));
    }
    Ok(Panel {
        title: "Log-periodogram".into(),
        x_label: "frequency".into(),
        y_label: "periodogram".into(),
        layers: vec![Layer::new(LayerKind::LogScatter, "periodogram", lx, ly)],
    })
}

fn fitted_line(xs: &[f64], slope: f64, intercept: f64) -> (Vec<f64>, Vec<f64>) {
    let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (vec![lo, hi], vec![intercept + slope * lo, intercept + slope * hi])
}

/// Reference line with slope `slope` through the first point.
fn reference_line(xs: &[f64], ys: &[f64], slope: f64) -> (Vec<f64>, Vec<f64>) {
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (vec![xs[0], hi], vec![ys[0], ys[0] + slope * (hi - xs[0])])
}

/// Log variance of block means against log block size; `slopes` adds the
/// fitted line and the short-memory slope `-1`.
pub fn log_variance_panel(x: &[f64], m: usize, slopes: bool) -> Result<Panel> {
    let r = log_variance_est(x, m)?;
    let mut layers = vec![Layer::new(LayerKind::Scatter, "log variance", r.log_sizes.clone(), r.log_stats.clone())];
    if slopes {
        let (fx, fy) = fitted_line(&r.log_sizes, r.slope, r.intercept);
        layers.push(Layer::new(LayerKind::Line, format!("fitted slope {:.3}", r.slope), fx, fy));
        let (rx, ry) = reference_line(&r.log_sizes, &r.log_stats, -1.0);
        layers.push(Layer::new(LayerKind::Line, "slope -1", rx, ry));
    }
    Ok(Panel {
        title: "Log-variance".into(),
        x_label: "log block size".into(),
        y_label: "log variance of means".into(),
        layers,
    })
}

/// Log R/S against log window size; `slopes` adds the fitted line and the
/// short-memory slope `1/2`.
pub fn rescaled_range_panel(x: &[f64], k: usize, slopes: bool) -> Result<Panel> {
    let r = rescaled_range_est(x, k)?;
    let mut layers = vec![Layer::new(LayerKind::Scatter, "log R/S", r.log_sizes.clone(), r.log_stats.clone())];
    if slopes {
        let (fx, fy) = fitted_line(&r.log_sizes, r.slope, r.intercept);
        layers.push(Layer::new(LayerKind::Line, format!("fitted slope {:.3}", r.slope), fx, fy));
        let (rx, ry) = reference_line(&r.log_sizes, &r.log_stats, 0.5);
        layers.push(Layer::new(LayerKind::Line, "slope 1/2", rx, ry));
    }
    Ok(Panel {
        title: "Rescaled range".into(),
        x_label: "log window size".into(),
        y_label: "log R/S".into(),
        layers,
    })
}

fn single(title: &str, panel: Panel) -> PlotSpec {
    PlotSpec {
        title: title.to_string(),
        rows: 1,
        cols: 1,
        panels: vec![panel],
    }
}

pub fn acf_plot(x: &[f64], lags: usize, title: &str) -> Result<PlotSpec> {
    Ok(single(title, acf_panel(x, lags)?))
}

pub fn periodogram_plot(x: &[f64], title: &str) -> Result<PlotSpec> {
    Ok(single(title, periodogram_panel(x)?))
}

pub fn log_variance_plot(x: &[f64], m: usize, slopes: bool, title: &str) -> Result<PlotSpec> {
    Ok(single(title, log_variance_panel(x, m, slopes)?))
}

pub fn rescaled_range_plot(x: &[f64], k: usize, slopes: bool, title: &str) -> Result<PlotSpec> {
    Ok(single(title, rescaled_range_panel(x, k, slopes)?))
}

/// Four-panel long-memory overview: series, ACF, log-periodogram and
/// log-variance with fitted and reference slopes.
pub fn lm_plot(x: &[f64], title: &str) -> Result<PlotSpec> {
    let lags = 100.min(x.len());
    let m = 50.min(x.len() / 2);
    Ok(PlotSpec {
        title: title.to_string(),
        rows: 2,
        cols: 2,
        panels: vec![
            series_panel(x, "Series"),
            acf_panel(x, lags)?,
            periodogram_panel(x)?,
            log_variance_panel(x, m, true)?,
        ],
    })
}

/// History followed by the forecast path and its 95% band.
pub fn forecast_plot(history: &[f64], forecast: &Forecast, title: &str) -> Result<PlotSpec> {
    let t = history.len();
    let ahead: Vec<f64> = (t + 1..=t + forecast.horizon).map(|v| v as f64).collect();
    Ok(single(
        title,
        Panel {
            title: "Forecast".into(),
            x_label: "t".into(),
            y_label: "value".into(),
            layers: vec![
                Layer::new(LayerKind::Line, "history", index_axis(t), history.to_vec()),
                Layer::band("95% band", ahead.clone(), forecast.lower.clone(), forecast.upper.clone()),
                Layer::new(LayerKind::Line, "forecast", ahead, forecast.point.clone()),
            ],
        },
    ))
}
