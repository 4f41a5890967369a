//! Binary-encoded generational GA.

pub mod config;
pub mod decode;
pub mod engine;
pub mod fitness;
pub mod individual;
pub mod operators;

pub use config::{GaConfig, Mode};
pub use decode::decode_variable;
pub use engine::{initial_population, run, run_trial, step_generation, StepOutcome};
pub use fitness::objective_to_fitness;
pub use individual::{Individual, Population};
pub use operators::{
    crossover_at, mutate, mutate_in_place, single_point_crossover, tournament_select,
    tournament_winner,
};
