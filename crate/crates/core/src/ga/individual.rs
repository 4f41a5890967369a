use crate::benchmarks::BenchmarkSpec;
use crate::chromosome::Chromosome;
use crate::error::{GaError, Result};
use crate::ga::fitness::objective_to_fitness;
use crate::scalar::Scalar;

/// A chromosome together with its decoded variables, objective and fitness.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual<T> {
    pub chromosome: Chromosome,
    pub variables: Vec<T>,
    pub objective: T,
    pub fitness: T,
}

impl<T: Scalar> Individual<T> {
    pub fn evaluate(chromosome: Chromosome, spec: &BenchmarkSpec<T>) -> Result<Self> {
        let variables = spec.decode(&chromosome)?;
        let objective = spec.evaluate(&variables)?;
        let fitness = objective_to_fitness(objective, spec.fitness_kind).map_err(|e| match e {
            GaError::Evaluation { objective, .. } => GaError::Evaluation {
                objective,
                variables: variables.iter().map(|v| v.as_f64()).collect(),
            },
            other => other,
        })?;
        Ok(Self {
            chromosome,
            variables,
            objective,
            fitness,
        })
    }
}

/// A generation's members.
#[derive(Debug, Clone, PartialEq)]
pub struct Population<T> {
    pub members: Vec<Individual<T>>,
    pub generation: usize,
}

impl<T: Scalar> Population<T> {
    pub fn new(members: Vec<Individual<T>>, generation: usize) -> Self {
        Self {
            members,
            generation,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Member indices ordered by descending fitness; ties keep member order.
    pub fn ranked_indices(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.members.len()).collect();
        idx.sort_by(|&a, &b| {
            self.members[b]
                .fitness
                .partial_cmp(&self.members[a].fitness)
                .expect("fitness is finite")
        });
        idx
    }

    /// Rank-1 and rank-2 members.
    pub fn top_two(&self) -> Result<(&Individual<T>, &Individual<T>)> {
        if self.members.len() < 2 {
            return Err(GaError::InvalidState(format!(
                "ranking needs at least 2 members, population has {}",
                self.members.len()
            )));
        }
        let ranked = self.ranked_indices();
        Ok((&self.members[ranked[0]], &self.members[ranked[1]]))
    }

    pub fn best(&self) -> Option<&Individual<T>> {
        self.ranked_indices().first().map(|&i| &self.members[i])
    }

    pub fn average_fitness(&self) -> T {
        let n = T::from_usize(self.members.len()).unwrap();
        self.members
            .iter()
            .fold(T::zero(), |acc, m| acc + m.fitness)
            / n
    }
}
