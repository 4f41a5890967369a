//! The five test functions, their search boxes and encodings.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::chromosome::Chromosome;
use crate::error::{GaError, Result};
use crate::ga::decode::decode_bits;
use crate::scalar::Scalar;

/// Magnitude of the Normalized Schwefel minimum.
pub const SCHWEFEL_OPTIMUM_MAGNITUDE: f64 = 418.9829;
/// Coordinate of the Normalized Schwefel minimum in every dimension.
pub const SCHWEFEL_OPTIMUM_COORD: f64 = 420.968;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BenchmarkKind {
    Himmelblau,
    Sphere,
    Rosenbrock,
    Rastrigin,
    #[serde(rename = "schwefel")]
    NormalizedSchwefel,
}

impl BenchmarkKind {
    pub const ALL: [BenchmarkKind; 5] = [
        BenchmarkKind::Himmelblau,
        BenchmarkKind::Sphere,
        BenchmarkKind::Rosenbrock,
        BenchmarkKind::Rastrigin,
        BenchmarkKind::NormalizedSchwefel,
    ];

    /// Registry name used by the CLI and config files.
    pub fn name(self) -> &'static str {
        match self {
            BenchmarkKind::Himmelblau => "himmelblau",
            BenchmarkKind::Sphere => "sphere",
            BenchmarkKind::Rosenbrock => "rosenbrock",
            BenchmarkKind::Rastrigin => "rastrigin",
            BenchmarkKind::NormalizedSchwefel => "schwefel",
        }
    }

    pub fn valid_names() -> String {
        Self::ALL
            .iter()
            .map(|k| k.name())
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for BenchmarkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchmarkKind {
    type Err = GaError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                GaError::Config(format!(
                    "unknown function {s:?}; valid presets: {}",
                    Self::valid_names()
                ))
            })
    }
}

/// How an objective value becomes a maximization fitness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FitnessKind {
    /// `1 / (1 + F)` for functions whose minimum is 0.
    MinimizeToZero,
    /// `max(0, -F / 418.9829)`.
    SchwefelNormalized,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkSpec<T> {
    pub kind: BenchmarkKind,
    pub n_variables: usize,
    pub lo: T,
    pub hi: T,
    pub bits_per_variable: usize,
    pub global_optimum_value: T,
    pub global_optimum_point: Vec<T>,
    pub fitness_kind: FitnessKind,
}

impl<T: Scalar> BenchmarkSpec<T> {
    /// Preset with the encoding used in the reference experiments.
    ///
    /// Himmelblau uses 20 bits per variable (40 total) and Normalized
    /// Schwefel searches `[-500, 500]` with 22 bits per variable.
    pub fn preset(kind: BenchmarkKind) -> Self {
        let l = T::lit;
        let (n, lo, hi, bits, opt_val, opt_coord, fitness_kind) = match kind {
            BenchmarkKind::Himmelblau => {
                (2, 0.0, 6.0, 20, 0.0, f64::NAN, FitnessKind::MinimizeToZero)
            }
            BenchmarkKind::Sphere => (3, -5.12, 5.12, 20, 0.0, 0.0, FitnessKind::MinimizeToZero),
            BenchmarkKind::Rosenbrock => {
                (2, -2.048, 2.048, 20, 0.0, 1.0, FitnessKind::MinimizeToZero)
            }
            BenchmarkKind::Rastrigin => (2, -5.12, 5.12, 10, 0.0, 0.0, FitnessKind::MinimizeToZero),
            BenchmarkKind::NormalizedSchwefel => (
                2,
                -500.0,
                500.0,
                22,
                -SCHWEFEL_OPTIMUM_MAGNITUDE,
                SCHWEFEL_OPTIMUM_COORD,
                FitnessKind::SchwefelNormalized,
            ),
        };
        let point = match kind {
            BenchmarkKind::Himmelblau => vec![l(3.0), l(2.0)],
            _ => vec![l(opt_coord); n],
        };
        Self {
            kind,
            n_variables: n,
            lo: l(lo),
            hi: l(hi),
            bits_per_variable: bits,
            global_optimum_value: l(opt_val),
            global_optimum_point: point,
            fitness_kind,
        }
    }

    pub fn with_bits_per_variable(mut self, bits: usize) -> Self {
        self.bits_per_variable = bits;
        self
    }

    /// Total encoded string length.
    pub fn chromosome_len(&self) -> usize {
        self.n_variables * self.bits_per_variable
    }

    /// Raw objective value at `x`.
    pub fn evaluate(&self, x: &[T]) -> Result<T> {
        if x.len() != self.n_variables {
            return Err(GaError::InvalidInput(format!(
                "{} expects {} variables, got {}",
                self.kind,
                self.n_variables,
                x.len()
            )));
        }
        evaluate(self.kind, x)
    }

    pub fn decode(&self, c: &Chromosome) -> Result<Vec<T>> {
        decode_genome(c, self)
    }
}

/// Evaluates `kind` at an arbitrary-dimension point.
pub fn evaluate<T: Scalar>(kind: BenchmarkKind, x: &[T]) -> Result<T> {
    match kind {
        BenchmarkKind::Himmelblau => match x {
            [x1, x2] => Ok(himmelblau(*x1, *x2)),
            _ => Err(GaError::InvalidInput(format!(
                "himmelblau takes exactly 2 variables, got {}",
                x.len()
            ))),
        },
        BenchmarkKind::Sphere => sphere(x),
        BenchmarkKind::Rosenbrock => rosenbrock(x),
        BenchmarkKind::Rastrigin => rastrigin(x),
        BenchmarkKind::NormalizedSchwefel => normalized_schwefel(x),
    }
}

/// Splits a chromosome into `n_variables` consecutive fields and decodes each.
pub fn decode_genome<T: Scalar>(c: &Chromosome, spec: &BenchmarkSpec<T>) -> Result<Vec<T>> {
    let expected = spec.chromosome_len();
    if c.len() != expected {
        return Err(GaError::InvalidEncoding(format!(
            "{} genome must have {} bits, got {}",
            spec.kind,
            expected,
            c.len()
        )));
    }
    if spec.bits_per_variable == 0 {
        return Err(GaError::InvalidEncoding("zero bits per variable".into()));
    }
    c.bits()
        .chunks(spec.bits_per_variable)
        .map(|field| decode_bits(field, spec.lo, spec.hi))
        .collect()
}

fn non_empty<T>(x: &[T], name: &str) -> Result<()> {
    if x.is_empty() {
        return Err(GaError::InvalidInput(format!(
            "{name} needs at least one variable"
        )));
    }
    Ok(())
}

pub fn himmelblau<T: Scalar>(x1: T, x2: T) -> T {
    let a = x1 * x1 + x2 - T::lit(11.0);
    let b = x1 + x2 * x2 - T::lit(7.0);
    a * a + b * b
}

pub fn sphere<T: Scalar>(x: &[T]) -> Result<T> {
    non_empty(x, "sphere")?;
    Ok(x.iter().fold(T::zero(), |acc, &v| acc + v * v))
}

pub fn rosenbrock<T: Scalar>(x: &[T]) -> Result<T> {
    if x.len() < 2 {
        return Err(GaError::InvalidInput(format!(
            "rosenbrock needs at least 2 variables, got {}",
            x.len()
        )));
    }
    Ok(x.windows(2).fold(T::zero(), |acc, w| {
        let ridge = w[1] - w[0] * w[0];
        let valley = T::one() - w[0];
        acc + T::lit(100.0) * ridge * ridge + valley * valley
    }))
}

pub fn rastrigin<T: Scalar>(x: &[T]) -> Result<T> {
    non_empty(x, "rastrigin")?;
    let ten = T::lit(10.0);
    let n = T::from_usize(x.len()).unwrap();
    Ok(x.iter()
        .fold(ten * n, |acc, &v| acc + v * v - ten * (T::TAU() * v).cos()))
}

pub fn normalized_schwefel<T: Scalar>(x: &[T]) -> Result<T> {
    non_empty(x, "normalized schwefel")?;
    let d = T::from_usize(x.len()).unwrap();
    let sum = x
        .iter()
        .fold(T::zero(), |acc, &v| acc - v * v.abs().sqrt().sin());
    Ok(sum / d)
}
