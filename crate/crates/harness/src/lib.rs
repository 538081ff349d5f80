//! Command-line experiments for the samplers in `wjump-core`: dataset
//! summaries, single runs, budget and threshold sweeps, and dense spectral
//! analysis of small graphs.
//!
//! Repetition `r` of every configuration walks with the seed
//! `repetition_seed(base_seed, r)`, and rows are written in (sampler,
//! parameter, repetition) order, so output depends only on the settings and
//! not on the thread count.

pub mod commands;
pub mod config;
pub mod error;
pub mod experiment;
pub mod format;

use std::io::Write;

use clap::{Parser, Subcommand};

pub use config::{ExperimentConfig, OutputFormat, Overrides, SamplerKind, WeightMode};
pub use error::{HarnessError, Result};

#[derive(Debug, Parser)]
#[command(name = "wjump", version, about = "Random-walk graph sampling experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Size, degrees and SRW-vs-uniform distance of a dataset.
    Stats(Overrides),
    /// Repetitions of each sampler at one budget.
    Run(Overrides),
    /// Every sampler at every budget, with per-budget means.
    SweepBudget(Overrides),
    /// GMD and WJRW across thresholds C.
    SweepC(Overrides),
    /// Spectrum, stationary laws and repeat probabilities (small graphs).
    Analyze(Overrides),
}

impl Command {
    pub fn overrides(&self) -> &Overrides {
        match self {
            Command::Stats(o)
            | Command::Run(o)
            | Command::SweepBudget(o)
            | Command::SweepC(o)
            | Command::Analyze(o) => o,
        }
    }
}

/// Resolves settings and renders the command's output.
pub fn render(command: &Command) -> Result<(ExperimentConfig, String)> {
    let mut overrides = command.overrides().clone().with_config_file()?;
    if matches!(command, Command::Analyze(_)) && overrides.format.is_none() {
        overrides.format = Some(OutputFormat::Json);
    }
    let config = ExperimentConfig::resolve(overrides)?;
    let text = match command {
        Command::Stats(_) => commands::cmd_stats(&config)?,
        Command::Run(_) => commands::cmd_run(&config)?,
        Command::SweepBudget(_) => commands::cmd_sweep_budget(&config)?,
        Command::SweepC(_) => commands::cmd_sweep_c(&config)?,
        Command::Analyze(_) => commands::cmd_analyze(&config)?,
    };
    Ok((config, text))
}

/// Runs a command and writes its output to `--out` or standard output.
pub fn execute(command: &Command) -> Result<()> {
    let (config, text) = render(command)?;
    match &config.output_path {
        Some(path) => std::fs::write(path, text).map_err(|e| HarnessError::io(path, e)),
        None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(|e| HarnessError::io("<stdout>", e)),
    }
}
