use crate::benchmarks::{FitnessKind, SCHWEFEL_OPTIMUM_MAGNITUDE};
use crate::error::{GaError, Result};
use crate::scalar::Scalar;

/// Turns a raw objective into a maximization fitness whose optimum is 1.
pub fn objective_to_fitness<T: Scalar>(objective: T, kind: FitnessKind) -> Result<T> {
    if !objective.is_finite() {
        return Err(GaError::Evaluation {
            objective: objective.as_f64(),
            variables: Vec::new(),
        });
    }
    Ok(match kind {
        FitnessKind::MinimizeToZero => T::one() / (T::one() + objective),
        FitnessKind::SchwefelNormalized => {
            (-objective / T::lit(SCHWEFEL_OPTIMUM_MAGNITUDE)).max(T::zero())
        }
    })
}
