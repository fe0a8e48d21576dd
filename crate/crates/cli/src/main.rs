//! `gdof-lab`: curve sweeps, finite-SNR convergence campaigns and
//! image-set experiments for the symmetric K-user interference network.
//!
//! Every run is deterministic given its seed; output files begin with a
//! comment line recording the full resolved configuration, and rerunning an
//! identical configuration reproduces the file byte for byte. Gate-style
//! subcommands (`simulate`, `ais`, `lemma2`) exit nonzero when their summary
//! statistic misses its threshold, so scripts can use the exit code
//! directly.

mod commands;
mod config;
mod plot;
mod table;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use commands::{CommandOutput, Experiment, Resolved};
use config::ConfigFile;
use std::path::PathBuf;
use std::process::ExitCode;
use table::Format;

#[derive(Parser)]
#[command(
    name = "gdof-lab",
    version,
    about = "GDoF curves, layered-scheme simulations and aligned-image-set experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate both GDoF curves over a strength grid.
    Curve(CurveArgs),
    /// Monte-Carlo convergence of the layered schemes toward the curve.
    Simulate(SimulateArgs),
    /// Aligned-set size scaling or exact entropy gaps on the quantized model.
    Ais(AisArgs),
    /// Entropy invariance under a swap of the gain density.
    Lemma2(Lemma2Args),
}

#[derive(Args)]
struct CommonArgs {
    /// Flat key=value config file; explicit flags override its entries.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Base seed for all randomness (default 0).
    #[arg(long)]
    seed: Option<u64>,
    /// Output format: csv or json (default csv).
    #[arg(long)]
    format: Option<Format>,
    /// Output file; stdout when omitted.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads for trial-parallel campaigns (0 = all cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct CurveArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Number of users (default 3).
    #[arg(long)]
    k: Option<usize>,
    /// Evaluate a single strength instead of a grid.
    #[arg(long)]
    alpha: Option<f64>,
    /// Grid start (default 0).
    #[arg(long)]
    alpha_min: Option<f64>,
    /// Grid end (default K+1).
    #[arg(long)]
    alpha_max: Option<f64>,
    /// Grid step (default 0.01).
    #[arg(long)]
    alpha_step: Option<f64>,
    /// Also write an SVG figure of both curves.
    #[arg(long, value_name = "PATH.svg")]
    plot: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Number of users (default 3).
    #[arg(long)]
    k: Option<usize>,
    /// Cross-link strength exponent (required).
    #[arg(long)]
    alpha: Option<f64>,
    /// Comma-separated log10(P) values (default 4,6,8,10).
    #[arg(long)]
    p_exponents: Option<String>,
    /// Lower gain magnitude bound (default 0.5).
    #[arg(long)]
    delta1: Option<f64>,
    /// Upper gain magnitude bound (default 2).
    #[arg(long)]
    delta2: Option<f64>,
    /// Channel draws per power point (default 100).
    #[arg(long)]
    trials: Option<usize>,
    /// Exit-gate tolerance on the final-P gap (default 0.1).
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Args)]
struct AisArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Which experiment to run: set-size or entropy-gap (default set-size).
    #[arg(long, value_enum)]
    experiment: Option<Experiment>,
    /// Number of users, 2 or 3 (default 2).
    #[arg(long)]
    k: Option<usize>,
    /// Cross-link strength exponent (required).
    #[arg(long)]
    alpha: Option<f64>,
    /// Comma-separated p_bar grid (default 16,32,64,128,256).
    #[arg(long)]
    pbar_grid: Option<String>,
    /// Lower gain magnitude bound (default 0.5).
    #[arg(long)]
    delta1: Option<f64>,
    /// Upper gain magnitude bound (default 2).
    #[arg(long)]
    delta2: Option<f64>,
    /// Channel draws per grid point (default 100).
    #[arg(long)]
    trials: Option<usize>,
}

#[derive(Args)]
struct Lemma2Args {
    #[command(flatten)]
    common: CommonArgs,
    /// Number of users (default 2).
    #[arg(long)]
    k: Option<usize>,
    /// Strength exponent fixing the input alphabet (required).
    #[arg(long)]
    alpha: Option<f64>,
    /// Quantizer exponent (default alpha - 1, the model's own).
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    /// Comma-separated p_bar grid (default 16,32,64,128,256).
    #[arg(long)]
    pbar_grid: Option<String>,
    /// Lower gain magnitude bound (default 0.5).
    #[arg(long)]
    delta1: Option<f64>,
    /// Upper gain magnitude bound (default 2).
    #[arg(long)]
    delta2: Option<f64>,
    /// Channel draws per grid point (default 100).
    #[arg(long)]
    trials: Option<usize>,
    /// First gain law: uniform or triangular (default uniform).
    #[arg(long)]
    law_a: Option<String>,
    /// Second gain law: uniform or triangular (default triangular).
    #[arg(long)]
    law_b: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<bool> {
    let common_args = match &cli.command {
        Command::Curve(a) => &a.common,
        Command::Simulate(a) => &a.common,
        Command::Ais(a) => &a.common,
        Command::Lemma2(a) => &a.common,
    };
    let cfg = ConfigFile::load(common_args.config.as_deref())?;
    let resolved = Resolved {
        seed: cfg.resolve(common_args.seed, "seed", 0)?,
        format: cfg.resolve(common_args.format, "format", Format::Csv)?,
        out: cfg
            .optional(common_args.out.clone(), "out")?
            .filter(|p| p.as_os_str() != "-"),
    };
    if let Some(threads) = cfg.optional(common_args.threads, "threads")? {
        // Trials aggregate in a fixed order, so the pool size never changes
        // numeric output; ignore failure if a pool already exists.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }

    let output = match &cli.command {
        Command::Curve(a) => commands::cmd_curve(a, &cfg, &resolved)?,
        Command::Simulate(a) => commands::cmd_simulate(a, &cfg, &resolved)?,
        Command::Ais(a) => commands::cmd_ais(a, &cfg, &resolved)?,
        Command::Lemma2(a) => commands::cmd_lemma2(a, &cfg, &resolved)?,
    };
    emit(&output, &resolved)
}

fn emit(output: &CommandOutput, resolved: &Resolved) -> Result<bool> {
    let rendered = output.table.render(resolved.format);
    match &resolved.out {
        Some(path) => std::fs::write(path, &rendered)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{rendered}"),
    }
    if let Some((path, svg)) = &output.plot {
        std::fs::write(path, svg).with_context(|| format!("writing {}", path.display()))?;
    }
    if !output.gate_note.is_empty() {
        eprintln!(
            "gate: {} ({})",
            if output.gate_ok { "PASS" } else { "FAIL" },
            output.gate_note
        );
    }
    Ok(output.gate_ok)
}
