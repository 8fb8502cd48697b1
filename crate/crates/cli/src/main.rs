//! `hyptr`: periods, theta functions, kernels and topological recursion for
//! genus-two curves from the command line.
//!
//! Results go to stdout as JSON or CSV. Each run also emits a manifest
//! (command, seed, configuration, versions, timing, residuals), either to
//! the file given by `--manifest` or as one JSON line on stderr, and
//! `hyptr replay` reruns a manifest.

mod commands;
mod config;
mod error;
mod input;
mod report;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use hyptr_core::kernels::KernelChoice;
use serde::{Deserialize, Serialize};

use config::Config;
use error::{CliError, CliResult, EXIT_VERIFY};
use report::{Format, RunManifest};

#[derive(Parser, Debug)]
#[command(name = "hyptr", version, about = "Numerics for genus-two curves and their topological recursion")]
struct Cli {
    /// TOML configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the run manifest here instead of stderr.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Kernel {
    Bergman,
    Schiffer,
}

impl From<Kernel> for KernelChoice {
    fn from(k: Kernel) -> Self {
        match k {
            Kernel::Bergman => KernelChoice::Bergman,
            Kernel::Schiffer => KernelChoice::Schiffer,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Periods,
    Theta,
    Kernels,
    Recursion,
    Modularity,
    All,
}

/// Curves are JSON coefficient lists (7 for a sextic, 6 for a quintic) or
/// `{"model": ..., "coeffs": [...]}`, inline or in a file. Complex numbers
/// are JSON numbers or `[re, im]`.
#[derive(Subcommand, Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Binary and absolute Igusa invariants.
    Invariants { curve: String },
    /// Period matrix, tau, quasi-period data and their residuals.
    Periods { curve: String },
    /// Theta function with characteristic and derivatives.
    Theta {
        /// Four bits, e.g. 0110.
        #[arg(long = "char")]
        characteristic: String,
        /// `[[t11, t12], [t21, t22]]`.
        #[arg(long)]
        tau: String,
        /// `[v1, v2]`; zero if omitted.
        #[arg(long)]
        v: Option<String>,
        #[arg(long, default_value_t = 2)]
        derivs: u8,
    },
    /// A correlator of the recursion on the mirror curve.
    Recurse {
        #[arg(long)]
        q1: String,
        #[arg(long)]
        q2: String,
        #[arg(long)]
        q3: String,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "bergman")]
        kernel: Kernel,
        /// Number of random evaluation points.
        #[arg(long, default_value_t = 2)]
        points: usize,
        /// Explicit evaluation abscissae `[x1, ..., xn]` on the principal sheet.
        #[arg(long)]
        at: Option<String>,
    },
    /// Free energy of the mirror curve.
    FreeEnergy {
        #[arg(long)]
        q1: String,
        #[arg(long)]
        q2: String,
        #[arg(long)]
        q3: String,
        #[arg(long)]
        g: usize,
        #[arg(long, value_enum, default_value = "bergman")]
        kernel: Kernel,
    },
    /// Mirror-map series to a given degree.
    MirrorMaps {
        #[arg(long)]
        degree: u32,
        /// Evaluate the series at `[s1, s2, s3]`.
        #[arg(long)]
        s: Option<String>,
    },
    /// Run a verification suite on seeded random curves; exits 1 on failure.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 3)]
        curves: usize,
    },
    /// Rerun the command recorded in a manifest.
    Replay { manifest: PathBuf },
}

fn init_threads(cfg: &Config) -> CliResult<()> {
    if cfg.threads > 0 {
        // A second call in the same process fails harmlessly.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build_global();
    }
    Ok(())
}

fn emit_manifest(m: &RunManifest, path: Option<&PathBuf>) -> CliResult<()> {
    let io = |e: std::io::Error| CliError::usage(format!("cannot write manifest: {e}"));
    match path {
        Some(p) => {
            let text = serde_json::to_string_pretty(m).map_err(|e| CliError::usage(e.to_string()))?;
            std::fs::write(p, text + "\n").map_err(io)
        }
        None => {
            let line = serde_json::to_string(m).map_err(|e| CliError::usage(e.to_string()))?;
            writeln!(std::io::stderr(), "{line}").map_err(io)
        }
    }
}

fn execute(command: Command, seed: u64, format: Format, mut cfg: Config, manifest: Option<&PathBuf>) -> CliResult<i32> {
    cfg.apply_env()?;
    cfg.validate()?;
    init_threads(&cfg)?;
    let start = Instant::now();
    let report = commands::run(&command, seed, &cfg)?;
    let out = report.render(format)?;
    std::io::stdout().write_all(out.as_bytes()).map_err(|e| CliError::usage(e.to_string()))?;
    let m = RunManifest {
        command,
        seed,
        format,
        config: cfg,
        versions: report::versions(),
        wall_time_s: start.elapsed().as_secs_f64(),
        residuals: report.residuals,
        pass: report.pass,
    };
    emit_manifest(&m, manifest)?;
    Ok(if report.pass == Some(false) { EXIT_VERIFY } else { 0 })
}

fn main_inner() -> CliResult<i32> {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return Ok(if e.use_stderr() { error::EXIT_USAGE } else { 0 });
        }
    };
    match cli.command {
        Command::Replay { manifest } => {
            let text = std::fs::read_to_string(&manifest)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", manifest.display())))?;
            let m: RunManifest = serde_json::from_str(&text).map_err(|e| CliError::usage(format!("bad manifest: {e}")))?;
            if matches!(m.command, Command::Replay { .. }) {
                return Err(CliError::usage("a manifest cannot record a replay"));
            }
            execute(m.command, m.seed, m.format, m.config, cli.manifest.as_ref())
        }
        command => {
            let cfg = Config::load(cli.config.as_deref())?;
            execute(command, cli.seed, cli.format, cfg, cli.manifest.as_ref())
        }
    }
}

fn main() -> ExitCode {
    match main_inner() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
