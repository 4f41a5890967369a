use rayon::prelude::*;

use crate::error::{GaError, Result};
use crate::experiment::record::TrialRecord;
use crate::ga::config::GaConfig;
use crate::ga::engine::run_trial;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Schedule {
    Serial,
    #[default]
    Parallel,
}

/// Runs `n_trials` independent trials in parallel; trial `i` is keyed by
/// `(master_seed, i)` so the output does not depend on scheduling.
pub fn run_trials<T: Scalar>(config: &GaConfig<T>, n_trials: usize) -> Result<Vec<TrialRecord<T>>> {
    run_trials_with(config, n_trials, Schedule::Parallel)
}

pub fn run_trials_with<T: Scalar>(
    config: &GaConfig<T>,
    n_trials: usize,
    schedule: Schedule,
) -> Result<Vec<TrialRecord<T>>> {
    if n_trials == 0 {
        return Err(GaError::InvalidInput("n_trials must be at least 1".into()));
    }
    config.validate()?;
    let one = |i: usize| {
        run_trial(config, i).map_err(|e| GaError::Trial {
            index: i,
            source: Box::new(e),
        })
    };
    match schedule {
        Schedule::Serial => (0..n_trials).map(one).collect(),
        Schedule::Parallel => (0..n_trials).into_par_iter().map(one).collect(),
    }
}
