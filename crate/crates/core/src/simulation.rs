//! Monte-Carlo discovery-time trials.
//!
//! A trial only simulates the exploration draws: the hidden object never
//! enters the exploitation slots, so what matters is the pool of `N − K`
//! candidates the `r` exploration slots are drawn from. EGSE-A redraws from
//! the full pool every presentation; EGSE-B consumes it. Each trial owns a
//! ChaCha8 generator seeded by [`trial_seed`], so a batch gives the same
//! outcomes however its trials are scheduled.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;

use crate::analytics::{to_f64, SearchSpace};
use crate::exploration::{Algorithm, ExplorationConfig};
use crate::rng::{stream_rng, trial_seed, Stream};
use crate::{Error, Result};

/// Presentation index at which the hidden object is first drawn.
pub fn run_trial(algorithm: Algorithm, config: &ExplorationConfig, seed: u64) -> u64 {
    let mut rng = stream_rng(seed, Stream::Explore);
    let r = config.r();
    // slot 0 is the hidden object
    let mut pool: Vec<u32> = (0..(config.n() - config.k()) as u32).collect();
    let mut start = 0;
    let mut presentation = 0u64;
    loop {
        presentation += 1;
        let open = &mut pool[start..];
        let take = r.min(open.len());
        for i in 0..take {
            let j = rng.random_range(i..open.len());
            open.swap(i, j);
        }
        if open[..take].contains(&0) {
            return presentation;
        }
        if algorithm == Algorithm::B {
            start += take;
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialBatch {
    pub algorithm: Algorithm,
    pub config: ExplorationConfig,
    pub trials: u64,
    pub base_seed: u64,
    /// Step cap for the time-constrained discovery probability.
    pub max_steps: Option<u64>,
}

impl TrialBatch {
    pub fn new(algorithm: Algorithm, config: ExplorationConfig, trials: u64, base_seed: u64) -> Result<Self> {
        if trials == 0 {
            return Err(Error::config("a batch needs at least one trial"));
        }
        Ok(Self { algorithm, config, trials, base_seed, max_steps: None })
    }

    pub fn with_max_steps(mut self, max_steps: u64) -> Self {
        self.max_steps = Some(max_steps);
        self
    }

    pub fn trial(&self, index: u64) -> u64 {
        run_trial(self.algorithm, &self.config, trial_seed(self.base_seed, index))
    }

    /// Outcomes of every trial, in trial order.
    pub fn outcomes(&self) -> Vec<u64> {
        (0..self.trials).map(|i| self.trial(i)).collect()
    }

    pub fn space(&self) -> SearchSpace {
        SearchSpace::from_config(&self.config)
    }

    /// Exact expected discovery time.
    pub fn analytic_mean(&self) -> Result<f64> {
        let dist = self.space().distribution(self.algorithm)?;
        Ok(to_f64(&dist.mean()?))
    }

    /// Analytic `P[T ≤ max_steps]`, when capped.
    pub fn analytic_within(&self) -> Option<f64> {
        self.max_steps.map(|t| self.space().discovery_within(self.algorithm, t))
    }

    /// Summarizes `outcomes` (which must come from this batch).
    pub fn trace(&self, outcomes: Vec<u64>) -> Result<ConvergenceTrace> {
        ConvergenceTrace::from_outcomes(outcomes, self.analytic_mean()?, self.max_steps)
    }

    pub fn run(&self) -> Result<ConvergenceTrace> {
        self.trace(self.outcomes())
    }
}

/// Running-mean record of a batch.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTrace {
    pub discovery_times: Vec<u64>,
    /// Mean of the first `t + 1` outcomes at index `t`.
    pub running_mean: Vec<f64>,
    pub analytic_mean: f64,
    /// Empirical `P[T ≤ max_steps]`.
    pub within_cap: Option<f64>,
    pub max_steps: Option<u64>,
}

impl ConvergenceTrace {
    pub fn from_outcomes(discovery_times: Vec<u64>, analytic_mean: f64, max_steps: Option<u64>) -> Result<Self> {
        if discovery_times.is_empty() {
            return Err(Error::config("no trial outcomes"));
        }
        let mut sum = 0u128;
        let running_mean = discovery_times
            .iter()
            .enumerate()
            .map(|(i, &k)| {
                sum += u128::from(k);
                sum as f64 / (i + 1) as f64
            })
            .collect();
        let within_cap = max_steps.map(|cap| {
            discovery_times.iter().filter(|&&k| k <= cap).count() as f64 / discovery_times.len() as f64
        });
        Ok(Self { discovery_times, running_mean, analytic_mean, within_cap, max_steps })
    }

    pub fn trials(&self) -> usize {
        self.discovery_times.len()
    }

    pub fn final_mean(&self) -> f64 {
        *self.running_mean.last().expect("non-empty trace")
    }

    pub fn rel_error(&self) -> f64 {
        relative_error(self.final_mean(), self.analytic_mean)
    }

    /// Unbiased sample standard deviation of the discovery times.
    pub fn sample_std(&self) -> f64 {
        let n = self.discovery_times.len();
        if n < 2 {
            return 0.0;
        }
        let mean = self.final_mean();
        let ss: f64 = self.discovery_times.iter().map(|&k| (k as f64 - mean) * (k as f64 - mean)).sum();
        libm::sqrt(ss / (n - 1) as f64)
    }

    pub fn standard_error(&self) -> f64 {
        self.sample_std() / libm::sqrt(self.trials() as f64)
    }
}

pub fn relative_error(value: f64, reference: f64) -> f64 {
    libm::fabs(value - reference) / reference
}

/// The Monte-Carlo experiments, all at `N = 10 000`, `M = 100`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    /// EGSE-A mean discovery time, ε = 0.1.
    I,
    /// EGSE-B mean discovery time, ε = 0.1.
    II,
    /// EGSE-B mean discovery time for ε ∈ {0.12, 0.13}.
    III,
    /// EGSE-B discovery probability within 750, 800 and 850 steps.
    IV,
}

pub const CASE_N: usize = 10_000;
pub const CASE_M: usize = 100;
pub const CASE_IV_STEPS: [u64; 3] = [750, 800, 850];

impl Case {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(Case::I),
            "II" | "2" => Ok(Case::II),
            "III" | "3" => Ok(Case::III),
            "IV" | "4" => Ok(Case::IV),
            other => Err(Error::config(format!("unknown case {other:?}"))),
        }
    }

    pub fn default_trials(self) -> u64 {
        match self {
            Case::IV => 1_000,
            _ => 5_000,
        }
    }

    /// Named batches making up the case. Case IV's batches share one base
    /// seed, so they see identical discovery times under different caps.
    pub fn batches(self, base_seed: u64, trials: Option<u64>) -> Result<Vec<(String, TrialBatch)>> {
        let trials = trials.unwrap_or_else(|| self.default_trials());
        let batch = |algorithm, eps: f64| {
            TrialBatch::new(algorithm, ExplorationConfig::new(CASE_N, CASE_M, eps)?, trials, base_seed)
        };
        Ok(match self {
            Case::I => alloc::vec![("egse-a eps=0.1".into(), batch(Algorithm::A, 0.1)?)],
            Case::II => alloc::vec![("egse-b eps=0.1".into(), batch(Algorithm::B, 0.1)?)],
            Case::III => alloc::vec![
                ("egse-b eps=0.12".into(), batch(Algorithm::B, 0.12)?),
                ("egse-b eps=0.13".into(), batch(Algorithm::B, 0.13)?),
            ],
            Case::IV => CASE_IV_STEPS
                .iter()
                .map(|&t| Ok((format!("egse-b max_steps={t}"), batch(Algorithm::B, 0.1)?.with_max_steps(t))))
                .collect::<Result<_>>()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseRun {
    pub name: String,
    pub batch: TrialBatch,
    pub trace: ConvergenceTrace,
}

/// Runs a case with `runner` producing each batch's outcomes in trial order.
pub fn run_case_with<F>(case: Case, base_seed: u64, trials: Option<u64>, mut runner: F) -> Result<Vec<CaseRun>>
where
    F: FnMut(&TrialBatch) -> Vec<u64>,
{
    let mut runs: Vec<CaseRun> = Vec::new();
    for (name, batch) in case.batches(base_seed, trials)? {
        // capped batches differing only in max_steps reuse outcomes
        let reuse = runs.iter().find(|run| {
            run.batch.algorithm == batch.algorithm
                && run.batch.config == batch.config
                && run.batch.trials == batch.trials
                && run.batch.base_seed == batch.base_seed
        });
        let outcomes = match reuse {
            Some(run) => run.trace.discovery_times.clone(),
            None => runner(&batch),
        };
        let trace = batch.trace(outcomes)?;
        runs.push(CaseRun { name, batch, trace });
    }
    Ok(runs)
}

/// Sequential [`run_case_with`].
pub fn run_case(case: Case, base_seed: u64, trials: Option<u64>) -> Result<Vec<CaseRun>> {
    run_case_with(case, base_seed, trials, TrialBatch::outcomes)
}
