//! Multi-trial experiments, cross-trial statistics and CSV export.

pub mod export;
pub mod record;
pub mod runner;
pub mod stats;

pub use export::{export_csv, format_number, ExportPaths, ExportTarget, SummaryRow};
pub use record::{convergence_generation, GenerationEntry, TrialRecord};
pub use runner::{run_trials, run_trials_with, Schedule};
pub use stats::{aggregate, aggregate_values, AggregateStats};
