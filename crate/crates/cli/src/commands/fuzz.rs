//! `fuzz`: phase-noise redundancy CSV plus a statistics summary JSON.

use std::path::PathBuf;

use anyhow::anyhow;
use clap::Args;
use serde::Serialize;

use trihelix::closed_form::{solve, ComponentSeries};
use trihelix::fuzz::{fuzzy_redundancy, ks_statistic, FuzzyConfig, RNG_ALGORITHM};

use crate::config::{self, Interval, SimOpts};
use crate::format::{fmt_sig12, write_lines};

#[derive(Args, Debug)]
pub struct FuzzArgs {
    #[command(flatten)]
    pub sim: SimOpts,

    /// Fuzzy interval length: absolute time units or "<k>pi/2r".
    #[arg(long)]
    pub interval: Option<String>,

    /// Second interval; when given, the summary reports the KS saturation
    /// statistic between the two runs.
    #[arg(long)]
    pub interval2: Option<String>,

    /// Components to fuzz, 1-based, e.g. "3" or "1,2,3" [default: 1,2,3].
    #[arg(long)]
    pub mask: Option<String>,

    /// RNG seed (required; runs are reproducible, never wall-clock seeded).
    #[arg(long)]
    pub seed: Option<u64>,

    /// Output directory for fuzzy.csv and summary.json.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// JSON config file; explicit flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Serialize)]
struct ComponentStats {
    rf1: f64,
    rf2: f64,
    rf3: f64,
    total: f64,
}

#[derive(Serialize)]
struct FuzzSummary {
    rng: &'static str,
    seed: u64,
    mask: Vec<usize>,
    interval: f64,
    interval2: Option<f64>,
    samples: usize,
    mean: ComponentStats,
    variance: ComponentStats,
    ks_saturation: Option<f64>,
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn variance(values: &[f64]) -> f64 {
    let m = mean(values);
    values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / values.len() as f64
}

fn stats_of<F: Fn(&[f64]) -> f64>(series: &ComponentSeries, f: F) -> ComponentStats {
    ComponentStats {
        rf1: f(&series.r1),
        rf2: f(&series.r2),
        rf3: f(&series.r3),
        total: f(&series.total),
    }
}

pub fn run(args: &FuzzArgs) -> anyhow::Result<()> {
    let cfg = config::load_config(&args.config)?;
    let sim = config::resolve_sim(&args.sim, &cfg)?;
    let seed = config::resolve_seed(args.seed, &cfg)?;
    let mask = config::resolve_mask(&args.mask, &cfg)?;
    let out_dir = config::resolve_out(&args.out, &cfg)?;

    let interval_spec = match (&args.interval, &cfg.interval) {
        (Some(text), _) => Interval::parse(text)?,
        (None, Some(field)) => Interval::from_field(field)?,
        (None, None) => return Err(anyhow!("fuzzy interval required: pass --interval")),
    };
    let interval2_spec = match (&args.interval2, &cfg.interval2) {
        (Some(text), _) => Some(Interval::parse(text)?),
        (None, Some(field)) => Some(Interval::from_field(field)?),
        (None, None) => None,
    };

    let sol = solve(&sim.state0, sim.g);
    let times = sim.times();
    let interval = interval_spec.resolve(sol.r())?;
    let fuzz_cfg = FuzzyConfig::new(interval, mask, seed);
    let series = fuzzy_redundancy(&sol, &times, &fuzz_cfg)?;

    let (interval2, ks_saturation) = match interval2_spec {
        None => (None, None),
        Some(spec) => {
            let second_interval = spec.resolve(sol.r())?;
            let second = fuzzy_redundancy(
                &sol,
                &times,
                &FuzzyConfig::new(second_interval, mask, seed),
            )?;
            (
                Some(second_interval),
                Some(ks_statistic(&series.total, &second.total)),
            )
        }
    };

    let mut lines = Vec::with_capacity(times.len() + 1);
    lines.push("t,Rf1,Rf2,Rf3,Rftotal".to_string());
    for k in 0..series.len() {
        lines.push(
            [
                fmt_sig12(series.times[k]),
                fmt_sig12(series.r1[k]),
                fmt_sig12(series.r2[k]),
                fmt_sig12(series.r3[k]),
                fmt_sig12(series.total[k]),
            ]
            .join(","),
        );
    }
    let csv_path = out_dir.join("fuzzy.csv");
    write_lines(&csv_path, lines)?;

    let summary = FuzzSummary {
        rng: RNG_ALGORITHM,
        seed,
        mask: mask.components(),
        interval,
        interval2,
        samples: series.len(),
        mean: stats_of(&series, mean),
        variance: stats_of(&series, variance),
        ks_saturation,
    };
    let json_path = out_dir.join("summary.json");
    super::write_json(&json_path, &summary)?;
    println!(
        "wrote {} and {} ({} samples)",
        csv_path.display(),
        json_path.display(),
        series.len()
    );
    Ok(())
}
