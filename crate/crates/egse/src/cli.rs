//! Argument parsing, output routing and exit codes.
//!
//! Exit codes: 0 on success, 2 on an invalid configuration (including
//! argument errors), 1 on a runtime failure.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands;
use crate::spec::{Command, ExperimentSpec, Settings, SpecError};

#[derive(Debug, Parser)]
#[command(name = "egse", version, about = "ε-greedy search-space exploration: analytics, Monte-Carlo and feedback evolution")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Closed-form discovery-time distribution (JSON by default).
    Analytic(SubArgs),
    /// Monte-Carlo discovery trials as a convergence CSV.
    Simulate(SubArgs),
    /// Relevance-feedback evolution run until the hidden object is found.
    Evolve(SubArgs),
}

#[derive(Debug, clap::Args)]
pub struct SubArgs {
    /// TOML file with defaults for any of the flags below.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub settings: Settings,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Runtime(#[from] anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        CliError::Config(e.0)
    }
}

fn classify(e: anyhow::Error) -> CliError {
    match e.downcast_ref::<egse_core::Error>() {
        Some(egse_core::Error::InvalidConfig(msg)) => CliError::Config(msg.clone()),
        Some(egse_core::Error::Domain(msg)) => CliError::Config(msg.clone()),
        _ => CliError::Runtime(e),
    }
}

pub fn resolve(command: Command, args: SubArgs) -> Result<ExperimentSpec, CliError> {
    let base = match &args.config {
        Some(path) => Settings::from_file(path)?,
        None => Settings::default(),
    };
    Ok(ExperimentSpec::resolve(command, args.settings.over(base))?)
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    let (command, args) = match cli.command {
        Sub::Analytic(a) => (Command::Analytic, a),
        Sub::Simulate(a) => (Command::Simulate, a),
        Sub::Evolve(a) => (Command::Evolve, a),
    };
    let spec = resolve(command, args)?;
    let mut out: Box<dyn Write> = match &spec.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).map_err(|e| CliError::Runtime(anyhow::anyhow!("creating {}: {e}", path.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match command {
        Command::Analytic => commands::cmd_analytic(&spec, &mut out).map_err(classify)?,
        Command::Simulate => {
            let trace = commands::cmd_simulate(&spec, &mut out).map_err(classify)?;
            eprintln!(
                "{} trials: mean {:.4} vs analytic {:.4} (rel. error {:.4}%)",
                trace.trials(),
                trace.final_mean(),
                trace.analytic_mean,
                100.0 * trace.rel_error()
            );
        }
        Command::Evolve => {
            let trace = commands::cmd_evolve(&spec, &mut out).map_err(classify)?;
            eprintln!("{}", commands::evolution_summary(&trace));
            if spec.out.is_none() {
                eprintln!("RIV histograms are written only with --out");
            }
        }
    }
    out.flush().map_err(|e| CliError::Runtime(e.into()))?;
    Ok(())
}

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
