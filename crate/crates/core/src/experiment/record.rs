use crate::benchmarks::FitnessKind;
use crate::error::Result;
use crate::ga::individual::{Individual, Population};
use crate::scalar::Scalar;

/// Tolerance when matching a generation's best against the run's final best.
pub const CONVERGENCE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct GenerationEntry<T> {
    pub generation: usize,
    pub best_fitness: T,
    pub second_best_fitness: T,
    pub avg_fitness: T,
    /// Twin probability used to produce this generation (0 for generation 0 and SGA).
    pub p_twin: T,
    pub twin_applied: bool,
    pub best_so_far: Individual<T>,
}

impl<T: Scalar> GenerationEntry<T> {
    pub fn observe(
        pop: &Population<T>,
        p_twin: T,
        twin_applied: bool,
        best_so_far: &Individual<T>,
    ) -> Result<Self> {
        let (best, second) = pop.top_two()?;
        Ok(Self {
            generation: pop.generation,
            best_fitness: best.fitness,
            second_best_fitness: second.fitness,
            avg_fitness: pop.average_fitness(),
            p_twin,
            twin_applied,
            best_so_far: best_so_far.clone(),
        })
    }
}

/// Per-generation trace of one GA run.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord<T> {
    pub trial_index: usize,
    pub fitness_kind: FitnessKind,
    pub entries: Vec<GenerationEntry<T>>,
    pub final_best: Individual<T>,
    pub convergence_generation: usize,
}

impl<T: Scalar> TrialRecord<T> {
    /// Builds a record from a non-empty generation trace.
    pub fn from_entries(
        trial_index: usize,
        fitness_kind: FitnessKind,
        entries: Vec<GenerationEntry<T>>,
    ) -> Self {
        let final_best = entries
            .last()
            .expect("trial records at least the initial generation")
            .best_so_far
            .clone();
        let convergence_generation = convergence_of(entries.iter().map(|e| e.best_fitness));
        Self {
            trial_index,
            fitness_kind,
            entries,
            final_best,
            convergence_generation,
        }
    }

    pub fn best_fitness_series(&self) -> Vec<T> {
        self.entries.iter().map(|e| e.best_fitness).collect()
    }

    /// Value summarized across trials: the fitness, or for Normalized
    /// Schwefel the raw magnitude `-F` of the best individual.
    pub fn report_value(&self) -> T {
        match self.fitness_kind {
            FitnessKind::MinimizeToZero => self.final_best.fitness,
            FitnessKind::SchwefelNormalized => -self.final_best.objective,
        }
    }
}

/// First generation whose best fitness reaches the run's final best fitness.
pub fn convergence_generation<T: Scalar>(record: &TrialRecord<T>) -> usize {
    convergence_of(record.entries.iter().map(|e| e.best_fitness))
}

pub(crate) fn convergence_of<T: Scalar>(series: impl Iterator<Item = T> + Clone) -> usize {
    let Some(last) = series.clone().last() else {
        return 0;
    };
    let threshold = last - T::lit(CONVERGENCE_TOLERANCE);
    series.take_while(|&b| b < threshold).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convergence_examples() {
        assert_eq!(convergence_of([0.3, 0.5, 0.9, 0.9, 0.9].into_iter()), 2);
        assert_eq!(convergence_of([0.4; 5].into_iter()), 0);
        assert_eq!(convergence_of([0.1, 0.2].into_iter()), 1);
        assert_eq!(convergence_of(std::iter::empty::<f64>()), 0);
    }
}
