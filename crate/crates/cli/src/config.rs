use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "choquet",
    version,
    about = "Check, fit and verify two-factor Choquet models of finite preference relations"
)]
pub struct Cli {
    #[command(flatten)]
    pub knobs: Knobs,
    #[command(subcommand)]
    pub command: Command,
}

/// Settings shared by every subcommand; each may also come from `--config`.
#[derive(Debug, Default, Clone, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Knobs {
    /// TOML file with any of the settings below; flags take precedence.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Relation file, or a generated bundle.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Where to write the result; standard output when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Minimum gap between strictly preferred values [default: 1.0].
    #[arg(long, global = true)]
    pub delta: Option<f64>,
    /// Relative tolerance for ties and the frontier [default: 1e-7].
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Scan budget per checker, in tuples [default: 1e8].
    #[arg(long, global = true)]
    pub budget: Option<f64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Run every axiom checker on a relation.
    Check,
    /// Fit value functions and a capacity to a relation.
    Fit,
    /// Compare a representation with a relation pair by pair.
    Verify {
        /// Representation file written by `fit`.
        #[arg(long)]
        representation: PathBuf,
    },
    /// Write a relation induced by known value functions and capacity.
    Generate(GenerateArgs),
    /// Generate, check, fit and verify over a range of seeds.
    Roundtrip(RoundtripArgs),
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    /// Grid size as `M1xM2`.
    #[arg(long, default_value = "6x6", value_parser = parse_grid)]
    pub grid: (usize, usize),
    /// `ν({1})`; with `--nu2`, overrides `--regime`.
    #[arg(long, requires = "nu2")]
    pub nu1: Option<f64>,
    #[arg(long, requires = "nu1")]
    pub nu2: Option<f64>,
    /// Draw the weights for this regime instead.
    #[arg(long, value_parser = parse_regime, default_value = "interactive")]
    pub regime: instance_lab::Regime,
    #[arg(long, value_enum, default_value = "uniform-random")]
    pub mode: Mode,
    /// Start of the axis-2 values in evenly spaced mode.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub offset: f64,
}

#[derive(Debug, Clone, Args)]
pub struct RoundtripArgs {
    /// Number of seeds, starting at `--seed`.
    #[arg(long, default_value_t = 100)]
    pub count: u64,
    #[arg(long, value_parser = parse_regime, default_value = "interactive")]
    pub regime: instance_lab::Regime,
    #[arg(long, default_value = "6x6", value_parser = parse_grid)]
    pub grid: (usize, usize),
    /// Use uniform random values for interactive instances instead of the
    /// evenly spaced design that determines the capacity.
    #[arg(long)]
    pub uniform: bool,
    /// Mutate each instance before checking and fitting.
    #[arg(long)]
    pub mutate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    UniformRandom,
    EvenlySpaced,
    AdversarialTies,
}

impl From<Mode> for instance_lab::ValueMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::UniformRandom => instance_lab::ValueMode::UniformRandom,
            Mode::EvenlySpaced => instance_lab::ValueMode::EvenlySpaced,
            Mode::AdversarialTies => instance_lab::ValueMode::AdversarialTies,
        }
    }
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected M1xM2, got {s:?}"))?;
    let n = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok((n(a)?, n(b)?))
}

fn parse_regime(s: &str) -> Result<instance_lab::Regime, String> {
    instance_lab::Regime::parse(s).ok_or_else(|| {
        format!("unknown regime {s:?}; expected additive, interactive, min, max or degenerate")
    })
}

/// Fully resolved settings.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub delta: f64,
    pub tol: f64,
    pub budget: u64,
    pub seed: u64,
    pub format: Format,
}

impl RunConfig {
    /// Merges flags over the config file over defaults and checks ranges.
    pub fn resolve(cli: Cli) -> Result<RunConfig, Failure> {
        let file = match &cli.knobs.config {
            Some(p) => load(p)?,
            None => Knobs::default(),
        };
        let k = cli.knobs;
        let cfg = RunConfig {
            command: cli.command,
            input: k.input.or(file.input),
            output: k.output.or(file.output),
            delta: k.delta.or(file.delta).unwrap_or(1.0),
            tol: k.tol.or(file.tol).unwrap_or(1e-7),
            budget: 0,
            seed: k.seed.or(file.seed).unwrap_or(0),
            format: k.format.or(file.format).unwrap_or(Format::Json),
        };
        let budget = k.budget.or(file.budget).unwrap_or(1e8);
        for (name, v) in [("delta", cfg.delta), ("tol", cfg.tol), ("budget", budget)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Failure::usage(format!(
                    "--{name} must be positive, got {v}"
                )));
            }
        }
        Ok(RunConfig {
            budget: budget.min(u64::MAX as f64) as u64,
            ..cfg
        })
    }

    pub fn input(&self) -> Result<&Path, Failure> {
        self.input
            .as_deref()
            .ok_or_else(|| Failure::usage("--input is required"))
    }
}

fn load(path: &Path) -> Result<Knobs, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}
