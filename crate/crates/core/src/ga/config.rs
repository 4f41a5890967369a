use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::benchmarks::{BenchmarkKind, BenchmarkSpec};
use crate::error::{GaError, Result};
use crate::scalar::Scalar;
use crate::twin::TwinParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Simple GA: tournament selection, crossover, mutation, elitism.
    Sga,
    /// Simple GA plus the adaptive twin operator.
    Atga,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Sga => "sga",
            Mode::Atga => "atga",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = GaError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sga" => Ok(Mode::Sga),
            "atga" => Ok(Mode::Atga),
            other => Err(GaError::Config(format!(
                "unknown mode {other:?}; valid modes: sga, atga"
            ))),
        }
    }
}

/// Every parameter of a single GA run.
#[derive(Debug, Clone, PartialEq)]
pub struct GaConfig<T> {
    pub pop_size: usize,
    pub p_c: T,
    pub p_m: T,
    pub tournament_size: usize,
    pub max_generations: usize,
    pub mode: Mode,
    pub twin: TwinParams<T>,
    pub master_seed: u64,
    pub benchmark: BenchmarkSpec<T>,
}

impl<T: Scalar> GaConfig<T> {
    /// Reference experimental setup for `kind`: population 40, binary
    /// tournament with replacement, single-point crossover with p_c = 1,
    /// p_m = 0.01, and 15 generations (20 for Normalized Schwefel).
    pub fn preset(kind: BenchmarkKind, mode: Mode) -> Self {
        Self {
            pop_size: 40,
            p_c: T::one(),
            p_m: T::lit(0.01),
            tournament_size: 2,
            max_generations: match kind {
                BenchmarkKind::NormalizedSchwefel => 20,
                _ => 15,
            },
            mode,
            twin: TwinParams::default(),
            master_seed: 0,
            benchmark: BenchmarkSpec::preset(kind),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.master_seed = seed;
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn bits_per_variable(&self) -> usize {
        self.benchmark.bits_per_variable
    }

    pub fn chromosome_len(&self) -> usize {
        self.benchmark.chromosome_len()
    }

    pub fn validate(&self) -> Result<()> {
        let prob = |name: &str, p: T| {
            if p >= T::zero() && p <= T::one() {
                Ok(())
            } else {
                Err(GaError::Config(format!(
                    "{name} must lie in [0, 1], got {p}"
                )))
            }
        };
        prob("p_c", self.p_c)?;
        prob("p_m", self.p_m)?;
        if self.pop_size < 4 {
            return Err(GaError::Config(format!(
                "pop_size must be at least 4, got {}",
                self.pop_size
            )));
        }
        if self.tournament_size < 1 {
            return Err(GaError::Config("tournament_size must be at least 1".into()));
        }
        if self.max_generations < 1 {
            return Err(GaError::Config("max_generations must be at least 1".into()));
        }
        if self.benchmark.bits_per_variable < 1 {
            return Err(GaError::Config(
                "bits_per_variable must be at least 1".into(),
            ));
        }
        if self.chromosome_len() < 2 {
            return Err(GaError::Config(format!(
                "encoded string must have at least 2 bits for crossover, got {}",
                self.chromosome_len()
            )));
        }
        self.twin.validate()
    }
}
