//! Binary genetic algorithm with an adaptive twin-offspring operator.
//!
//! The GA ([`ga`]) is a generational, elitist, binary-encoded GA with
//! tournament selection, single-point crossover and bit-flip mutation. In
//! ATGA mode one mating per generation pairs the second-best member with a
//! random member and may add twin mates of both children ([`twin`]); the
//! twin probability follows the fitness gap between the two best members.
//! [`benchmarks`] holds the five test problems and [`experiment`] runs
//! repeated trials and summarizes them.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the aliases
//! below fix the scalar for the common case.

pub mod benchmarks;
pub mod chromosome;
pub mod cli;
pub mod error;
pub mod experiment;
pub mod ga;
pub mod rng;
pub mod scalar;
pub mod twin;

pub use benchmarks::{BenchmarkKind, BenchmarkSpec, FitnessKind};
pub use chromosome::Chromosome;
pub use error::{GaError, Result};
pub use experiment::{aggregate, convergence_generation, run_trials, AggregateStats, TrialRecord};
pub use ga::{GaConfig, Individual, Mode, Population};
pub use rng::{RandomStream, TrialStreams};
pub use scalar::Scalar;
pub use twin::{
    adaptive_p_twin, make_twin_mate, twin_reproduction, unequal_positions, TwinEvent, TwinParams,
};

pub type Individual64 = Individual<f64>;
pub type Individual32 = Individual<f32>;
pub type Population64 = Population<f64>;
pub type Population32 = Population<f32>;
pub type GaConfig64 = GaConfig<f64>;
pub type GaConfig32 = GaConfig<f32>;
pub type BenchmarkSpec64 = BenchmarkSpec<f64>;
pub type BenchmarkSpec32 = BenchmarkSpec<f32>;
pub type TwinParams64 = TwinParams<f64>;
pub type TwinParams32 = TwinParams<f32>;
pub type TrialRecord64 = TrialRecord<f64>;
pub type TrialRecord32 = TrialRecord<f32>;
pub type AggregateStats64 = AggregateStats<f64>;
pub type AggregateStats32 = AggregateStats<f32>;
