//! Command-line front end for the triple-helix simulator and measurement
//! pipeline.
//!
//! Every command is a pure function of its configuration and input files:
//! re-running with the same arguments produces byte-identical outputs,
//! including the seeded stochastic ones.

mod commands;
mod config;
mod format;
mod io;
mod presets;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "trihelix",
    version,
    about = "Triple-helix communication-field simulator and analysis pipeline"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate or evaluate the coupled dynamics; writes trajectory.csv.
    Simulate(commands::simulate::SimulateArgs),
    /// Phase-noise redundancy run; writes fuzzy.csv and summary.json.
    Fuzz(commands::fuzz::FuzzArgs),
    /// Redundancy series from yearly contingency CSVs; writes series.csv.
    Measure(commands::measure::MeasureArgs),
    /// Fourier fit of a time series; writes coefficients, spectrum, summary.
    Fit(commands::fit::FitArgs),
    /// Spectral powers from a coefficients CSV; writes spectrum.csv.
    Spectrum(commands::spectrum::SpectrumArgs),
    /// measure -> fit -> spectrum in one pass, persisting intermediates.
    Pipeline(commands::pipeline::PipelineArgs),
}

fn main() -> std::process::ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Simulate(args) => commands::simulate::run(args),
        Command::Fuzz(args) => commands::fuzz::run(args),
        Command::Measure(args) => commands::measure::run(args),
        Command::Fit(args) => commands::fit::run(args),
        Command::Spectrum(args) => commands::spectrum::run(args),
        Command::Pipeline(args) => commands::pipeline::run(args),
    };
    match result {
        Ok(()) => std::process::ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::ExitCode::FAILURE
        }
    }
}
