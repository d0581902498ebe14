//! Experiment specification: command-line flags merged over an optional
//! TOML config file, validated before anything runs.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use egse_core::feedback::{ClickModel, DEFAULT_MAX_QUERIES};
use egse_core::{Algorithm, ExclusionPolicy, ExplorationConfig};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgoArg {
    A,
    B,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::A => Algorithm::A,
            AlgoArg::B => Algorithm::B,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExclusionArg {
    /// Exclude explored objects only.
    Explored,
    /// Exclude every presented object.
    Strict,
}

impl From<ExclusionArg> for ExclusionPolicy {
    fn from(e: ExclusionArg) -> Self {
        match e {
            ExclusionArg::Explored => ExclusionPolicy::ExploredOnly,
            ExclusionArg::Strict => ExclusionPolicy::Strict,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Analytic,
    Simulate,
    Evolve,
}

/// Settings shared by all subcommands. Every field is optional so that the
/// config file can fill gaps; flags win.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Settings {
    /// Exploration variant.
    #[arg(long, value_enum)]
    pub algo: Option<AlgoArg>,
    /// Catalog size N.
    #[arg(long)]
    pub n: Option<usize>,
    /// List length M.
    #[arg(long)]
    pub m: Option<usize>,
    /// Exploration rate ε in (0, 1).
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Monte-Carlo trials.
    #[arg(long)]
    pub trials: Option<u64>,
    /// Step cap for the time-constrained discovery probability.
    #[arg(long)]
    pub max_steps: Option<u64>,
    /// Report P[discovery within t presentations].
    #[arg(long)]
    pub within: Option<u64>,
    #[arg(long)]
    pub boost_delta: Option<f64>,
    #[arg(long)]
    pub penalty_delta: Option<f64>,
    /// Query cap C for evolution runs.
    #[arg(long)]
    pub max_queries: Option<u64>,
    /// Keep the hidden object out of the exploitation slots.
    #[arg(long)]
    pub worst_case: Option<bool>,
    /// EGSE-B exclusion policy for evolution runs.
    #[arg(long, value_enum)]
    pub exclusion: Option<ExclusionArg>,
    /// Append a JSON summary line after the simulate CSV.
    #[arg(long)]
    pub summary: Option<bool>,
    /// Output file (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}


impl Settings {
    /// `self` with gaps filled from `base`.
    pub fn over(self, base: Settings) -> Settings {
        Settings {
            algo: self.algo.or(base.algo),
            n: self.n.or(base.n),
            m: self.m.or(base.m),
            epsilon: self.epsilon.or(base.epsilon),
            seed: self.seed.or(base.seed),
            trials: self.trials.or(base.trials),
            max_steps: self.max_steps.or(base.max_steps),
            within: self.within.or(base.within),
            boost_delta: self.boost_delta.or(base.boost_delta),
            penalty_delta: self.penalty_delta.or(base.penalty_delta),
            max_queries: self.max_queries.or(base.max_queries),
            worst_case: self.worst_case.or(base.worst_case),
            exclusion: self.exclusion.or(base.exclusion),
            summary: self.summary.or(base.summary),
            out: self.out.or(base.out),
            format: self.format.or(base.format),
        }
    }

    pub fn from_toml(text: &str) -> Result<Settings, SpecError> {
        toml::from_str(text).map_err(|e| SpecError(format!("config file: {e}")))
    }

    pub fn from_file(path: &Path) -> Result<Settings, SpecError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| SpecError(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{0}")]
pub struct SpecError(pub String);

impl From<egse_core::Error> for SpecError {
    fn from(e: egse_core::Error) -> Self {
        match e {
            egse_core::Error::InvalidConfig(msg) => SpecError(msg),
            other => SpecError(other.to_string()),
        }
    }
}

/// A fully resolved and validated run description.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub command: Command,
    pub algorithm: Algorithm,
    pub config: ExplorationConfig,
    pub seed: u64,
    pub trials: u64,
    pub max_steps: Option<u64>,
    pub within: Option<u64>,
    pub model: ClickModel,
    pub max_queries: u64,
    pub worst_case: bool,
    pub exclusion: ExclusionPolicy,
    pub summary: bool,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

impl ExperimentSpec {
    pub fn resolve(command: Command, s: Settings) -> Result<Self, SpecError> {
        // Monte-Carlo settings default to the large configuration, evolution
        // runs to the small labeled catalog.
        let (n, m) = match command {
            Command::Evolve => (1_000, 50),
            _ => (10_000, 100),
        };
        let n = s.n.unwrap_or(n);
        let m = s.m.unwrap_or(m);
        let epsilon = s.epsilon.unwrap_or(0.1);
        let config = ExplorationConfig::new(n, m, epsilon)?;
        let trials = s.trials.unwrap_or(5_000);
        if trials == 0 {
            return Err(SpecError("--trials must be at least 1".into()));
        }
        let defaults = ClickModel::default();
        let model = ClickModel {
            boost_delta: s.boost_delta.unwrap_or(defaults.boost_delta),
            penalty_delta: s.penalty_delta.unwrap_or(defaults.penalty_delta),
            ..defaults
        };
        model.validate()?;
        let max_queries = s.max_queries.unwrap_or(DEFAULT_MAX_QUERIES);
        if max_queries == 0 {
            return Err(SpecError("--max-queries must be at least 1".into()));
        }
        let format = s.format.unwrap_or(match command {
            Command::Analytic => OutputFormat::Json,
            _ => OutputFormat::Csv,
        });
        Ok(Self {
            command,
            algorithm: s.algo.unwrap_or(AlgoArg::B).into(),
            config,
            seed: s.seed.unwrap_or(0),
            trials,
            max_steps: s.max_steps,
            within: s.within,
            model,
            max_queries,
            worst_case: s.worst_case.unwrap_or(true),
            exclusion: s.exclusion.map_or(ExclusionPolicy::Strict, Into::into),
            summary: s.summary.unwrap_or(false),
            out: s.out,
            format,
        })
    }
}
