//! Configuration resolution: CLI flags over JSON config file over defaults.
//!
//! Every command accepts `--config <file.json>`; the file is a single flat
//! JSON document whose keys mirror the flag names. Explicit flags win over
//! config values, which win over built-in defaults. Randomized commands
//! require an explicit seed so runs are reproducible.

use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::Args;
use serde::Deserialize;

use trihelix::fuzz::ComponentMask;
use trihelix::model::{HelixState, Vec3};

use crate::presets;

/// JSON config document; keys mirror the CLI flags.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub preset: Option<String>,
    pub p0: Option<[f64; 3]>,
    pub q0: Option<[f64; 3]>,
    pub g: Option<f64>,
    pub dt: Option<f64>,
    pub steps: Option<usize>,
    pub method: Option<String>,
    pub interval: Option<IntervalField>,
    pub interval2: Option<IntervalField>,
    pub mask: Option<Vec<usize>>,
    pub seed: Option<u64>,
    pub terms: Option<usize>,
    pub omega0: Option<f64>,
    pub detrend: Option<bool>,
    pub window: Option<String>,
    pub subsets: Option<Vec<String>>,
    #[serde(rename = "in")]
    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

/// Interval as it appears in JSON: a number (absolute time units) or a
/// string like `"3pi/2r"`.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum IntervalField {
    Number(f64),
    Text(String),
}

pub fn load_config(path: &Option<PathBuf>) -> anyhow::Result<FileConfig> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .with_context(|| format!("cannot read config {}", p.display()))?;
            serde_json::from_str(&text)
                .with_context(|| format!("invalid config {}", p.display()))
        }
    }
}

/// A fuzzy-interval length: absolute, or a multiple of `pi / (2r)` resolved
/// against the solution's frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Interval {
    Absolute(f64),
    HalfPiOverR(f64),
}

impl Interval {
    /// Parses `"1.25"` (absolute) or `"<k>pi/2r"` (e.g. `"3pi/2r"`,
    /// `"0.5pi/2r"`, `"pi/2r"`).
    pub fn parse(text: &str) -> anyhow::Result<Interval> {
        let text = text.trim();
        if let Some(prefix) = text.strip_suffix("pi/2r") {
            let factor = if prefix.is_empty() {
                1.0
            } else {
                prefix
                    .parse::<f64>()
                    .map_err(|_| anyhow!("invalid interval multiplier in {text:?}"))?
            };
            if !(factor >= 0.0 && factor.is_finite()) {
                bail!("interval multiplier must be finite and >= 0, got {factor}");
            }
            Ok(Interval::HalfPiOverR(factor))
        } else {
            let value = text
                .parse::<f64>()
                .map_err(|_| anyhow!("invalid interval {text:?} (expected a number or \"<k>pi/2r\")"))?;
            Ok(Interval::Absolute(value))
        }
    }

    pub fn from_field(field: &IntervalField) -> anyhow::Result<Interval> {
        match field {
            IntervalField::Number(v) => Ok(Interval::Absolute(*v)),
            IntervalField::Text(s) => Interval::parse(s),
        }
    }

    /// Resolves to absolute time units given the solution frequency `r`.
    pub fn resolve(&self, r: f64) -> anyhow::Result<f64> {
        match *self {
            Interval::Absolute(v) => Ok(v),
            Interval::HalfPiOverR(k) => {
                if r <= 0.0 {
                    bail!("interval given in units of pi/2r, but the solution is constant (r = 0)");
                }
                Ok(k * std::f64::consts::PI / (2.0 * r))
            }
        }
    }
}

/// Flags shared by the simulation-driven commands.
#[derive(Args, Debug)]
pub struct SimOpts {
    /// Named initial configuration: "fig3" or "eq16".
    #[arg(long)]
    pub preset: Option<String>,

    /// Initial sending vector as "u,i,g".
    #[arg(long, value_name = "U,I,G", allow_hyphen_values = true)]
    pub p0: Option<String>,

    /// Initial receiving vector as "u,i,g".
    #[arg(long, value_name = "U,I,G", allow_hyphen_values = true)]
    pub q0: Option<String>,

    /// Coupling coefficient.
    #[arg(long, allow_negative_numbers = true)]
    pub g: Option<f64>,

    /// Sample spacing in time units [default: 0.01].
    #[arg(long, allow_negative_numbers = true)]
    pub dt: Option<f64>,

    /// Number of steps; the output has steps + 1 samples [default: 5000].
    #[arg(long)]
    pub steps: Option<usize>,
}

/// Fully resolved simulation parameters.
#[derive(Debug, Clone, Copy)]
pub struct SimSettings {
    pub state0: HelixState,
    pub g: f64,
    pub dt: f64,
    pub steps: usize,
}

impl SimSettings {
    /// The sample grid `t_k = k * dt`, `k = 0..=steps`.
    pub fn times(&self) -> Vec<f64> {
        (0..=self.steps).map(|k| k as f64 * self.dt).collect()
    }
}

fn parse_vec3(text: &str, flag: &str) -> anyhow::Result<[f64; 3]> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        bail!("--{flag} expects three comma-separated numbers, got {text:?}");
    }
    let mut out = [0.0; 3];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part
            .parse::<f64>()
            .map_err(|_| anyhow!("--{flag}: invalid number {part:?}"))?;
    }
    Ok(out)
}

pub fn resolve_sim(opts: &SimOpts, cfg: &FileConfig) -> anyhow::Result<SimSettings> {
    let preset = match opts.preset.as_deref().or(cfg.preset.as_deref()) {
        Some(name) => Some(presets::lookup(name).ok_or_else(|| {
            anyhow!(
                "unknown preset {name:?} (available: {})",
                presets::PRESET_NAMES.join(", ")
            )
        })?),
        None => None,
    };

    let p0 = match &opts.p0 {
        Some(text) => Some(parse_vec3(text, "p0")?),
        None => cfg.p0,
    };
    let q0 = match &opts.q0 {
        Some(text) => Some(parse_vec3(text, "q0")?),
        None => cfg.q0,
    };
    let p0 = p0
        .or(preset.map(|p| p.p0))
        .ok_or_else(|| anyhow!("initial state required: pass --preset or --p0"))?;
    let q0 = q0
        .or(preset.map(|p| p.q0))
        .ok_or_else(|| anyhow!("initial state required: pass --preset or --q0"))?;
    let g = opts
        .g
        .or(cfg.g)
        .or(preset.map(|p| p.g))
        .ok_or_else(|| anyhow!("coupling coefficient required: pass --g or --preset"))?;
    let dt = opts.dt.or(cfg.dt).unwrap_or(0.01);
    let steps = opts.steps.or(cfg.steps).unwrap_or(5000);

    let state0 = HelixState::new(Vec3::from_array(p0), Vec3::from_array(q0));
    if !state0.is_finite() {
        bail!("p0/q0 components must be finite");
    }
    if !g.is_finite() {
        bail!("--g must be finite, got {g}");
    }
    if !(dt > 0.0 && dt.is_finite()) {
        bail!("--dt must be positive and finite, got {dt}");
    }
    if steps == 0 {
        bail!("--steps must be at least 1");
    }
    Ok(SimSettings {
        state0,
        g,
        dt,
        steps,
    })
}

pub fn resolve_out(flag: &Option<PathBuf>, cfg: &FileConfig) -> anyhow::Result<PathBuf> {
    let dir = flag
        .clone()
        .or_else(|| cfg.out.clone())
        .ok_or_else(|| anyhow!("output directory required: pass --out"))?;
    std::fs::create_dir_all(&dir)
        .with_context(|| format!("cannot create output directory {}", dir.display()))?;
    Ok(dir)
}

pub fn resolve_input(flag: &Option<PathBuf>, cfg: &FileConfig) -> anyhow::Result<PathBuf> {
    flag.clone()
        .or_else(|| cfg.input.clone())
        .ok_or_else(|| anyhow!("input path required: pass --in"))
}

/// Parses a `--mask` flag such as "3" or "1,2,3" (1-based components).
pub fn parse_mask(text: &str) -> anyhow::Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| anyhow!("--mask: invalid component {s:?}"))
        })
        .collect()
}

pub fn resolve_mask(flag: &Option<String>, cfg: &FileConfig) -> anyhow::Result<ComponentMask> {
    let components = match flag {
        Some(text) => parse_mask(text)?,
        None => match &cfg.mask {
            Some(list) => list.clone(),
            None => vec![1, 2, 3],
        },
    };
    ComponentMask::from_components(&components).map_err(Into::into)
}

pub fn resolve_seed(flag: Option<u64>, cfg: &FileConfig) -> anyhow::Result<u64> {
    flag.or(cfg.seed).ok_or_else(|| {
        anyhow!("randomized commands require an explicit --seed (no wall-clock seeding)")
    })
}

/// Splits a `--subsets` flag such as "uig,uif" or "u+i+g,u+i+f" into
/// per-subset dimension-name lists, given the table's dimension names.
///
/// Within one subset, names are joined by `+`; when every dimension name is
/// a single character the `+` may be omitted and each character is a name.
pub fn parse_subsets(spec: &[String], dim_names: &[String]) -> anyhow::Result<Vec<Vec<usize>>> {
    if spec.is_empty() {
        bail!("at least one subset required: pass --subsets");
    }
    let index_of = |name: &str| -> anyhow::Result<usize> {
        dim_names
            .iter()
            .position(|d| d == name)
            .ok_or_else(|| anyhow!("unknown dimension {name:?} (table has {dim_names:?})"))
    };
    let single_char_names = dim_names.iter().all(|d| d.chars().count() == 1);
    let mut subsets = Vec::new();
    for token in spec {
        let token = token.trim();
        if token.is_empty() {
            bail!("empty subset in --subsets");
        }
        let names: Vec<String> = if token.contains('+') {
            token.split('+').map(|s| s.trim().to_string()).collect()
        } else if single_char_names {
            token.chars().map(|c| c.to_string()).collect()
        } else {
            vec![token.to_string()]
        };
        let indices = names
            .iter()
            .map(|n| index_of(n))
            .collect::<anyhow::Result<Vec<usize>>>()?;
        subsets.push(indices);
    }
    Ok(subsets)
}

/// Splits a comma-separated `--subsets` flag value.
pub fn split_subsets_flag(flag: &Option<String>, cfg: &FileConfig) -> anyhow::Result<Vec<String>> {
    match flag {
        Some(text) => Ok(text
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect()),
        None => match &cfg.subsets {
            Some(list) => Ok(list.clone()),
            None => bail!("at least one subset required: pass --subsets"),
        },
    }
}
