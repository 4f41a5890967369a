use crate::error::{GaError, Result};
use crate::experiment::record::TrialRecord;
use crate::scalar::Scalar;

/// Cross-trial summary of final best values.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateStats<T> {
    pub n_trials: usize,
    pub mean_best: T,
    pub max_best: T,
    /// 100 x sample standard deviation / mean; 0 when a single trial or a zero mean.
    pub cv_percent: T,
    pub mean_convergence_generation: T,
    /// Set when the mean was zero and `cv_percent` is not meaningful.
    pub cv_undefined: bool,
}

pub fn aggregate<T: Scalar>(records: &[TrialRecord<T>]) -> Result<AggregateStats<T>> {
    let bests: Vec<T> = records.iter().map(TrialRecord::report_value).collect();
    let convs: Vec<usize> = records.iter().map(|r| r.convergence_generation).collect();
    aggregate_values(&bests, &convs)
}

pub fn aggregate_values<T: Scalar>(
    bests: &[T],
    convergence: &[usize],
) -> Result<AggregateStats<T>> {
    if bests.is_empty() {
        return Err(GaError::InvalidInput("cannot aggregate zero trials".into()));
    }
    if bests.len() != convergence.len() {
        return Err(GaError::InvalidInput(format!(
            "{} best values but {} convergence generations",
            bests.len(),
            convergence.len()
        )));
    }
    let n = bests.len();
    let nt = T::from_usize(n).unwrap();
    let rough = bests.iter().fold(T::zero(), |a, &b| a + b) / nt;
    // second pass removes the rounding error of the first
    let mean = rough + bests.iter().fold(T::zero(), |a, &b| a + (b - rough)) / nt;
    let max = bests.iter().fold(T::neg_infinity(), |a, &b| a.max(b));
    let mut cv_undefined = false;
    let cv = if n < 2 {
        T::zero()
    } else if mean == T::zero() {
        cv_undefined = true;
        T::zero()
    } else {
        let ss = bests
            .iter()
            .fold(T::zero(), |a, &b| a + (b - mean) * (b - mean));
        let sd = (ss / T::from_usize(n - 1).unwrap()).sqrt();
        T::lit(100.0) * sd / mean.abs()
    };
    let conv_mean = T::from_usize(convergence.iter().sum::<usize>()).unwrap() / nt;
    Ok(AggregateStats {
        n_trials: n,
        mean_best: mean,
        max_best: max,
        cv_percent: cv,
        mean_convergence_generation: conv_mean,
        cv_undefined,
    })
}
