//! `spectrum`: spectral powers from a `k,b,d` coefficients CSV.

use std::path::PathBuf;

use clap::Args;

use trihelix::spectral::Spectrum;

use crate::config;
use crate::format::write_lines;
use crate::io::read_coefficients_csv;

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    /// Coefficients CSV with header `k,b,d`.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,

    /// Output directory for spectrum.csv.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// JSON config file; explicit flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

pub fn run(args: &SpectrumArgs) -> anyhow::Result<()> {
    let cfg = config::load_config(&args.config)?;
    let input = config::resolve_input(&args.input, &cfg)?;
    let out_dir = config::resolve_out(&args.out, &cfg)?;

    let (_offset, harmonics) = read_coefficients_csv(&input)?;
    let spectrum = Spectrum::from_harmonics(&harmonics);
    let path = out_dir.join("spectrum.csv");
    write_lines(&path, super::spectrum_lines(&spectrum))?;
    println!("wrote {} ({} harmonics)", path.display(), harmonics.len());
    Ok(())
}
