//! `simulate`: trajectory + redundancy CSV via RK4 or the closed form.

use std::path::PathBuf;

use anyhow::bail;
use clap::{Args, ValueEnum};

use trihelix::closed_form;
use trihelix::dynamics;
use trihelix::model::{redundancy_components, HelixState};

use crate::config::{self, FileConfig, SimOpts};
use crate::format::{fmt_sig12, write_lines};

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub sim: SimOpts,

    /// Trajectory method [default: rk4].
    #[arg(long, value_enum)]
    pub method: Option<Method>,

    /// Output directory for trajectory.csv.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// JSON config file; explicit flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Rk4,
    Closedform,
}

pub fn resolve_method(flag: Option<Method>, cfg: &FileConfig) -> anyhow::Result<Method> {
    if let Some(m) = flag {
        return Ok(m);
    }
    match cfg.method.as_deref() {
        None => Ok(Method::Rk4),
        Some("rk4") => Ok(Method::Rk4),
        Some("closedform") => Ok(Method::Closedform),
        Some(other) => bail!("invalid method {other:?} (expected \"rk4\" or \"closedform\")"),
    }
}

/// Computes the sampled states for the resolved settings and method.
pub fn sample_states(
    sim: &config::SimSettings,
    method: Method,
) -> anyhow::Result<Vec<(f64, HelixState)>> {
    match method {
        Method::Rk4 => {
            let traj = dynamics::integrate(&sim.state0, sim.g, sim.dt, sim.steps)?;
            Ok(traj.iter().map(|(t, s)| (t, *s)).collect())
        }
        Method::Closedform => {
            let sol = closed_form::solve(&sim.state0, sim.g);
            Ok(sim.times().iter().map(|&t| (t, sol.eval(t))).collect())
        }
    }
}

pub fn trajectory_lines(states: &[(f64, HelixState)]) -> Vec<String> {
    let mut lines = Vec::with_capacity(states.len() + 1);
    lines.push("t,P1,P2,P3,Q1,Q2,Q3,R1,R2,R3,Rtotal".to_string());
    for &(t, state) in states {
        let r = redundancy_components(&state);
        lines.push(
            [
                fmt_sig12(t),
                fmt_sig12(state.p.u),
                fmt_sig12(state.p.i),
                fmt_sig12(state.p.g),
                fmt_sig12(state.q.u),
                fmt_sig12(state.q.i),
                fmt_sig12(state.q.g),
                fmt_sig12(r.u),
                fmt_sig12(r.i),
                fmt_sig12(r.g),
                fmt_sig12(r.sum()),
            ]
            .join(","),
        );
    }
    lines
}

pub fn run(args: &SimulateArgs) -> anyhow::Result<()> {
    let cfg = config::load_config(&args.config)?;
    let sim = config::resolve_sim(&args.sim, &cfg)?;
    let method = resolve_method(args.method, &cfg)?;
    let out_dir = config::resolve_out(&args.out, &cfg)?;

    let states = sample_states(&sim, method)?;
    let path = out_dir.join("trajectory.csv");
    write_lines(&path, trajectory_lines(&states))?;
    println!("wrote {} ({} samples)", path.display(), states.len());
    Ok(())
}
