//! Rayon-backed trial execution.
//!
//! Trial `i` of a batch always runs on the generator derived from
//! `(base_seed, i)`, and results are collected in trial order, so the
//! parallel runner returns exactly what the sequential core runner does.

use egse_core::feedback::{run_evolution, EvolutionParams, EvolutionTrace};
use egse_core::simulation::{self, Case, CaseRun};
use egse_core::{ConvergenceTrace, Result, TrialBatch};
use rayon::prelude::*;

pub fn par_outcomes(batch: &TrialBatch) -> Vec<u64> {
    (0..batch.trials).into_par_iter().map(|i| batch.trial(i)).collect()
}

pub fn run_batch(batch: &TrialBatch) -> Result<ConvergenceTrace> {
    batch.trace(par_outcomes(batch))
}

pub fn run_case(case: Case, base_seed: u64, trials: Option<u64>) -> Result<Vec<CaseRun>> {
    simulation::run_case_with(case, base_seed, trials, par_outcomes)
}

/// Runs `template` once per seed, in seed order.
pub fn run_evolutions(template: &EvolutionParams, seeds: &[u64]) -> Result<Vec<EvolutionTrace>> {
    seeds
        .par_iter()
        .map(|&seed| run_evolution(&EvolutionParams { seed, ..template.clone() }))
        .collect()
}
