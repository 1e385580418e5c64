//! Run configuration: command-line flags merged over an optional key/value
//! file.

use std::fmt;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Parser, ValueEnum};
use molnoise::channels::{ChannelConfig, ChannelKind};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 20_240_917;
pub const DEFAULT_SAMPLES: usize = 1_000_000;
pub const DEFAULT_BETAS: [f64; 3] = [0.0, 0.5, 1.0];
pub const DEFAULT_LINEAR_GRID: Grid = Grid {
    min: -10.0,
    max: 10.0,
    points: 401,
    log: false,
};
pub const DEFAULT_TAIL_GRID: Grid = Grid {
    min: 1.0,
    max: 1e4,
    points: 241,
    log: true,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Density over the grid.
    Pdf,
    /// Distribution function over the grid.
    Cdf,
    /// Exact and asymptotic tail probabilities over the grid.
    Tail,
    /// Seeded draws of a noise law, with a KS check.
    Sample,
    /// Run the invariant suites and write a report.
    Validate,
    /// Density, distribution and tail tables for the standard laws.
    Figures,
    /// Noise law of a channel in physical units.
    Channel,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Pdf => "pdf",
            Command::Cdf => "cdf",
            Command::Tail => "tail",
            Command::Sample => "sample",
            Command::Validate => "validate",
            Command::Figures => "figures",
            Command::Channel => "channel",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Parser, Debug, Clone, Default)]
#[command(
    name = "molnoise",
    version,
    about = "Stable noise laws of diffusion timing channels"
)]
pub struct Args {
    #[arg(long, value_enum)]
    pub command: Option<Command>,
    /// Key/value file with defaults for any of the other flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Channel kind: A (release time), B (gap, one type) or C (gap, two types).
    #[arg(long = "channel-kind")]
    pub channel_kind: Option<ChannelKind>,
    /// Transmitter-receiver distance (m).
    #[arg(long = "d")]
    pub distance: Option<f64>,
    /// Diffusion coefficient, kinds A and B (m²/s).
    #[arg(long = "D")]
    pub diffusion: Option<f64>,
    /// Diffusion coefficient of the first particle type, kind C.
    #[arg(long = "Da")]
    pub diffusion_a: Option<f64>,
    /// Diffusion coefficient of the second particle type, kind C.
    #[arg(long = "Db")]
    pub diffusion_b: Option<f64>,
    /// Multiplier on the Lévy scales for a 3D receiver.
    #[arg(long)]
    pub scale3d: Option<f64>,
    /// Skewness of a standard law; repeat for several.
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Vec<f64>,
    /// Lower grid end (default -10, or 1 for `tail`).
    #[arg(long = "grid-min", allow_negative_numbers = true)]
    pub grid_min: Option<f64>,
    /// Upper grid end (default 10, or 1e4 for `tail`).
    #[arg(long = "grid-max", allow_negative_numbers = true)]
    pub grid_max: Option<f64>,
    /// Number of grid points (default 401, or 241 log-spaced for `tail`).
    #[arg(long = "grid-points")]
    pub grid_points: Option<usize>,
    /// RNG seed (default 20240917).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Sample count.
    #[arg(long)]
    pub n: Option<usize>,
    /// Output file, or output directory for `figures`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format (default csv).
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// One-sample KS pass threshold (default 1.63/√n).
    #[arg(long = "ks-threshold")]
    pub ks_threshold: Option<f64>,
    /// Multiply the scale of the laws under test (fault injection).
    #[arg(long = "fault-scale", hide = true)]
    pub fault_scale: Option<f64>,
}

/// A configuration problem, reported with exit status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// Evaluation grid, linearly or logarithmically spaced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub log: bool,
}

impl Grid {
    /// Grid nodes. A linear grid with `min = −max` is exactly antisymmetric.
    pub fn nodes(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                let (lo, hi) = (last - i as f64, i as f64);
                if self.log {
                    let e = (self.min.log10() * lo + self.max.log10() * hi) / last;
                    if i == 0 {
                        self.min
                    } else if i + 1 == self.points {
                        self.max
                    } else {
                        10f64.powf(e)
                    }
                } else {
                    (self.min * lo + self.max * hi) / last
                }
            })
            .collect()
    }

    fn validate(&self) -> Result<()> {
        if !(self.min.is_finite() && self.max.is_finite() && self.min < self.max) {
            return Err(usage(format!(
                "grid bounds must be finite with min < max, got [{}, {}]",
                self.min, self.max
            )));
        }
        if self.points < 2 {
            return Err(usage("grid needs at least 2 points"));
        }
        if self.log && self.min <= 0.0 {
            return Err(usage("a logarithmic grid needs min > 0"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub channel: Option<ChannelConfig>,
    pub beta_list: Vec<f64>,
    pub grid: Grid,
    pub seed: u64,
    pub n_samples: usize,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub ks_threshold: Option<f64>,
    pub fault_scale: f64,
}

impl RunConfig {
    /// Defaults for `command`.
    pub fn new(command: Command) -> Self {
        Self {
            command,
            channel: None,
            beta_list: DEFAULT_BETAS.to_vec(),
            grid: if command == Command::Tail {
                DEFAULT_TAIL_GRID
            } else {
                DEFAULT_LINEAR_GRID
            },
            seed: DEFAULT_SEED,
            n_samples: DEFAULT_SAMPLES,
            output_path: None,
            format: Format::Csv,
            ks_threshold: None,
            fault_scale: 1.0,
        }
    }

    /// Merge flags over the config file named by `--config`, if any.
    pub fn from_args(args: Args) -> Result<Self> {
        let merged = match &args.config {
            Some(path) => merge(args.clone(), read_config_file(path)?),
            None => args,
        };
        Self::resolve(merged)
    }

    fn resolve(args: Args) -> Result<Self> {
        let command = args.command.ok_or_else(|| usage("--command is required"))?;
        let mut cfg = Self::new(command);
        cfg.channel = channel_from_args(&args)?;
        if !args.beta.is_empty() {
            cfg.beta_list = args.beta;
        }
        cfg.grid.min = args.grid_min.unwrap_or(cfg.grid.min);
        cfg.grid.max = args.grid_max.unwrap_or(cfg.grid.max);
        cfg.grid.points = args.grid_points.unwrap_or(cfg.grid.points);
        cfg.seed = args.seed.unwrap_or(cfg.seed);
        cfg.n_samples = args.n.unwrap_or(cfg.n_samples);
        cfg.output_path = args.out;
        cfg.format = args.format.unwrap_or_default();
        cfg.ks_threshold = args.ks_threshold;
        cfg.fault_scale = args.fault_scale.unwrap_or(1.0);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        if self.beta_list.is_empty() {
            return Err(usage("at least one beta is required"));
        }
        if let Some(b) = self.beta_list.iter().find(|b| !(-1.0..=1.0).contains(*b)) {
            return Err(usage(format!("beta must lie in [-1, 1], got {b}")));
        }
        if self.n_samples == 0 {
            return Err(usage("--n must be positive"));
        }
        if let Some(t) = self.ks_threshold {
            if !(t > 0.0 && t.is_finite()) {
                return Err(usage(format!("--ks-threshold must be positive, got {t}")));
            }
        }
        if !(self.fault_scale > 0.0 && self.fault_scale.is_finite()) {
            return Err(usage("--fault-scale must be positive"));
        }
        if let Some(ch) = &self.channel {
            ch.validate().map_err(|e| usage(e.to_string()))?;
        }
        Ok(())
    }
}

fn channel_from_args(args: &Args) -> Result<Option<ChannelConfig>> {
    let Some(kind) = args.channel_kind else {
        return Ok(None);
    };
    let d = args.distance.ok_or_else(|| usage("a channel needs --d"))?;
    let cfg = match kind {
        ChannelKind::A | ChannelKind::B => {
            let diffusion = args
                .diffusion
                .ok_or_else(|| usage(format!("channel kind {kind} needs --D")))?;
            if kind == ChannelKind::A {
                ChannelConfig::a(d, diffusion)
            } else {
                ChannelConfig::b(d, diffusion)
            }
        }
        ChannelKind::C => match (args.diffusion_a, args.diffusion_b) {
            (Some(da), Some(db)) => ChannelConfig::c(d, da, db),
            _ => return Err(usage("channel kind C needs --Da and --Db")),
        },
    };
    Ok(Some(match args.scale3d {
        Some(s) => cfg.with_scale3d(s),
        None => cfg,
    }))
}

fn merge(flags: Args, file: Args) -> Args {
    Args {
        command: flags.command.or(file.command),
        config: flags.config,
        channel_kind: flags.channel_kind.or(file.channel_kind),
        distance: flags.distance.or(file.distance),
        diffusion: flags.diffusion.or(file.diffusion),
        diffusion_a: flags.diffusion_a.or(file.diffusion_a),
        diffusion_b: flags.diffusion_b.or(file.diffusion_b),
        scale3d: flags.scale3d.or(file.scale3d),
        beta: if flags.beta.is_empty() {
            file.beta
        } else {
            flags.beta
        },
        grid_min: flags.grid_min.or(file.grid_min),
        grid_max: flags.grid_max.or(file.grid_max),
        grid_points: flags.grid_points.or(file.grid_points),
        seed: flags.seed.or(file.seed),
        n: flags.n.or(file.n),
        out: flags.out.or(file.out),
        format: flags.format.or(file.format),
        ks_threshold: flags.ks_threshold.or(file.ks_threshold),
        fault_scale: flags.fault_scale.or(file.fault_scale),
    }
}

/// Read a config file: one `key = value` per line, keys named like the long
/// flags without dashes (`grid-min = -5`). `#` starts a comment. `beta` may
/// repeat or hold a comma-separated list.
pub fn read_config_file(path: &Path) -> Result<Args> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config file {}", path.display()))
        .map_err(|e| usage(format!("{e:#}")))?;
    parse_config(&text).map_err(|e| usage(format!("config file {}: {e:#}", path.display())))
}

pub fn parse_config(text: &str) -> Result<Args> {
    let mut argv = vec!["molnoise".to_string()];
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow::anyhow!("line {}: expected key = value", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        if key == "config" {
            anyhow::bail!(
                "line {}: config files cannot include other files",
                lineno + 1
            );
        }
        let values: Vec<&str> = if key == "beta" {
            value.split(',').map(str::trim).collect()
        } else {
            vec![value]
        };
        for v in values {
            argv.push(format!("--{key}={v}"));
        }
    }
    Args::try_parse_from(argv).map_err(|e| anyhow::anyhow!(e.to_string().trim().to_string()))
}
