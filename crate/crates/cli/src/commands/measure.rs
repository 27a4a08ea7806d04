//! `measure`: signed redundancy series from yearly contingency CSVs.

use std::path::PathBuf;

use clap::Args;

use trihelix::infometrics::{self, RedundancySeries};

use crate::config::{self, FileConfig};
use crate::format::{fmt_sig12, write_lines};
use crate::io::read_contingency_dir;

#[derive(Args, Debug)]
pub struct MeasureArgs {
    /// Directory of <year>.csv contingency tables.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,

    /// Comma-separated dimension subsets, e.g. "uig,uif,ugf,igf".
    #[arg(long)]
    pub subsets: Option<String>,

    /// Output directory for series.csv.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// JSON config file; explicit flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Reads the input directory and computes the per-year series.
pub fn measure_series(
    input: &std::path::Path,
    subset_flag: &Option<String>,
    cfg: &FileConfig,
) -> anyhow::Result<RedundancySeries> {
    let tables = read_contingency_dir(input)?;
    let dim_names: Vec<String> = tables[0]
        .1
        .dims()
        .iter()
        .map(|d| d.name.clone())
        .collect();
    let subset_specs = config::split_subsets_flag(subset_flag, cfg)?;
    let subsets = config::parse_subsets(&subset_specs, &dim_names)?;
    infometrics::series(&tables, &subsets).map_err(Into::into)
}

pub fn series_lines(series: &RedundancySeries) -> Vec<String> {
    let mut lines = Vec::with_capacity(series.years.len() * series.labels.len() + 1);
    lines.push("year,label,value_bits".to_string());
    for (year_idx, year) in series.years.iter().enumerate() {
        for (label_idx, label) in series.labels.iter().enumerate() {
            lines.push(format!(
                "{year},{label},{}",
                fmt_sig12(series.values[label_idx][year_idx])
            ));
        }
    }
    lines
}

pub fn run(args: &MeasureArgs) -> anyhow::Result<()> {
    let cfg = config::load_config(&args.config)?;
    let input = config::resolve_input(&args.input, &cfg)?;
    let out_dir = config::resolve_out(&args.out, &cfg)?;

    let series = measure_series(&input, &args.subsets, &cfg)?;
    let path = out_dir.join("series.csv");
    write_lines(&path, series_lines(&series))?;
    println!(
        "wrote {} ({} years x {} subsets)",
        path.display(),
        series.years.len(),
        series.labels.len()
    );
    Ok(())
}
