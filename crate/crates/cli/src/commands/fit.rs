//! `fit`: Fourier coefficients + spectrum from a `t,value` series CSV.

use std::path::PathBuf;

use anyhow::bail;
use clap::{Args, ValueEnum};
use serde::Serialize;

use trihelix::spectral::{default_n_terms, fit_with, FitOptions, FitResult, Window};

use crate::config::{self, FileConfig};
use crate::format::write_lines;
use crate::io::read_series_csv;

#[derive(Args, Debug)]
pub struct FitArgs {
    /// Time-series CSV with header `t,value`.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,

    /// Number of Fourier terms N [default: floor((samples - 1) / 2)].
    #[arg(long)]
    pub terms: Option<usize>,

    /// Base angular frequency [default: 2 pi / observed span].
    #[arg(long, allow_negative_numbers = true)]
    pub omega0: Option<f64>,

    /// Remove a least-squares linear trend before fitting.
    #[arg(long)]
    pub detrend: bool,

    /// Taper the samples before the solve.
    #[arg(long, value_enum)]
    pub window: Option<WindowFlag>,

    /// Output directory for coefficients.csv, spectrum.csv, summary.json.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// JSON config file; explicit flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WindowFlag {
    Hann,
}

#[derive(Serialize)]
struct TrendSummary {
    intercept: f64,
    slope: f64,
    t0: f64,
}

#[derive(Serialize)]
struct FitSummary {
    n_samples: usize,
    n_terms: usize,
    omega0: f64,
    t0: f64,
    offset: f64,
    interpolating: bool,
    residual_max: f64,
    detrend: Option<TrendSummary>,
    window: Option<&'static str>,
}

pub fn resolve_terms(flag: Option<usize>, cfg: &FileConfig, n_samples: usize) -> usize {
    flag.or(cfg.terms).unwrap_or(default_n_terms(n_samples))
}

/// Resolves the preprocessing flags (flag wins over config, nothing by
/// default).
pub fn resolve_fit_options(
    omega0: Option<f64>,
    detrend: bool,
    window: Option<WindowFlag>,
    cfg: &FileConfig,
) -> anyhow::Result<FitOptions> {
    let window = match window {
        Some(WindowFlag::Hann) => Some(Window::Hann),
        None => match cfg.window.as_deref() {
            None => None,
            Some("hann") => Some(Window::Hann),
            Some(other) => bail!("invalid window {other:?} (expected \"hann\")"),
        },
    };
    Ok(FitOptions {
        omega0: omega0.or(cfg.omega0),
        detrend: detrend || cfg.detrend.unwrap_or(false),
        window,
    })
}

fn window_name(options: &FitOptions) -> Option<&'static str> {
    options.window.map(|w| match w {
        Window::Hann => "hann",
    })
}

/// Residual of the full reconstruction (trend included) over the samples.
pub(crate) fn fit_residual_max(result: &FitResult, samples: &[(f64, f64)]) -> f64 {
    samples
        .iter()
        .map(|&(t, y)| (result.reconstruct(t) - y).abs())
        .fold(0.0, f64::max)
}

pub fn run(args: &FitArgs) -> anyhow::Result<()> {
    let cfg = config::load_config(&args.config)?;
    let input = config::resolve_input(&args.input, &cfg)?;
    let out_dir = config::resolve_out(&args.out, &cfg)?;

    let samples = read_series_csv(&input)?;
    let n_terms = resolve_terms(args.terms, &cfg, samples.len());
    let options = resolve_fit_options(args.omega0, args.detrend, args.window, &cfg)?;

    let result = fit_with(&samples, n_terms, &options)?;
    let model = &result.model;
    write_lines(
        &out_dir.join("coefficients.csv"),
        super::coefficients_lines(model),
    )?;
    write_lines(
        &out_dir.join("spectrum.csv"),
        super::spectrum_lines(&model.spectrum()),
    )?;
    let summary = FitSummary {
        n_samples: samples.len(),
        n_terms: model.n_terms(),
        omega0: model.omega0,
        t0: model.t0,
        offset: model.offset,
        interpolating: model.interpolating,
        residual_max: fit_residual_max(&result, &samples),
        detrend: result.trend.map(|t| TrendSummary {
            intercept: t.intercept,
            slope: t.slope,
            t0: t.t0,
        }),
        window: window_name(&options),
    };
    super::write_json(&out_dir.join("summary.json"), &summary)?;
    println!(
        "wrote coefficients.csv, spectrum.csv, summary.json to {} (N = {}, interpolating = {})",
        out_dir.display(),
        model.n_terms(),
        model.interpolating
    );
    Ok(())
}
