//! `pipeline`: measure -> fit -> spectrum in one invocation, persisting
//! every intermediate artifact.

use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use trihelix::spectral::fit_with;

use crate::config;
use crate::format::write_lines;

use super::fit::{fit_residual_max, resolve_fit_options, WindowFlag};
use super::measure::{measure_series, series_lines};

#[derive(Args, Debug)]
pub struct PipelineArgs {
    /// Directory of <year>.csv contingency tables.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,

    /// Comma-separated dimension subsets, e.g. "uig,uif,ugf,igf".
    #[arg(long)]
    pub subsets: Option<String>,

    /// Number of Fourier terms N [default: floor((years - 1) / 2)].
    #[arg(long)]
    pub terms: Option<usize>,

    /// Base angular frequency [default: 2 pi / observed span].
    #[arg(long, allow_negative_numbers = true)]
    pub omega0: Option<f64>,

    /// Remove a least-squares linear trend before each fit.
    #[arg(long)]
    pub detrend: bool,

    /// Taper the samples before each solve.
    #[arg(long, value_enum)]
    pub window: Option<WindowFlag>,

    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// JSON config file; explicit flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Serialize)]
struct PipelineFit {
    label: String,
    n_samples: usize,
    n_terms: usize,
    omega0: f64,
    offset: f64,
    interpolating: bool,
    residual_max: f64,
    dominant_k: Option<usize>,
}

#[derive(Serialize)]
struct PipelineSummary {
    labels: Vec<String>,
    fits: Vec<PipelineFit>,
}

pub fn run(args: &PipelineArgs) -> anyhow::Result<()> {
    let cfg = config::load_config(&args.config)?;
    let input = config::resolve_input(&args.input, &cfg)?;
    let out_dir = config::resolve_out(&args.out, &cfg)?;

    let series = measure_series(&input, &args.subsets, &cfg)?;
    write_lines(&out_dir.join("series.csv"), series_lines(&series))?;

    let options = resolve_fit_options(args.omega0, args.detrend, args.window, &cfg)?;
    let mut fits = Vec::with_capacity(series.labels.len());
    for (label_idx, label) in series.labels.iter().enumerate() {
        let samples: Vec<(f64, f64)> = series
            .years
            .iter()
            .zip(&series.values[label_idx])
            .map(|(&year, &value)| (f64::from(year), value))
            .collect();
        let n_terms = super::fit::resolve_terms(args.terms, &cfg, samples.len());
        let result = fit_with(&samples, n_terms, &options)?;
        let model = &result.model;

        write_lines(
            &out_dir.join(format!("coefficients_{label}.csv")),
            super::coefficients_lines(model),
        )?;
        let spectrum = model.spectrum();
        write_lines(
            &out_dir.join(format!("spectrum_{label}.csv")),
            super::spectrum_lines(&spectrum),
        )?;
        fits.push(PipelineFit {
            label: label.clone(),
            n_samples: samples.len(),
            n_terms: model.n_terms(),
            omega0: model.omega0,
            offset: model.offset,
            interpolating: model.interpolating,
            residual_max: fit_residual_max(&result, &samples),
            dominant_k: spectrum.dominant_harmonic(),
        });
    }

    let summary = PipelineSummary {
        labels: series.labels.clone(),
        fits,
    };
    super::write_json(&out_dir.join("summary.json"), &summary)?;
    println!(
        "wrote series.csv, per-subset coefficients/spectra, summary.json to {}",
        out_dir.display()
    );
    Ok(())
}
