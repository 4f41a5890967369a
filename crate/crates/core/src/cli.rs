//! Command-line front end.
//!
//! Settings resolve in this order, later sources winning:
//! 1. the function's reference preset ([`GaConfig::preset`]);
//! 2. the `--config` TOML file;
//! 3. `--set key=value` overrides;
//! 4. dedicated flags (`--function`, `--mode`, `--trials`, `--seed`, `--out`, `--all`).
//!
//! Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::benchmarks::BenchmarkKind;
use crate::error::{GaError, Result};
use crate::experiment::export::{render_summary, write_file, ExportTarget, SummaryRow};
use crate::experiment::{aggregate, export_csv, run_trials, AggregateStats};
use crate::ga::config::{GaConfig, Mode};

pub const DEFAULT_TRIALS: usize = 25;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_OUT: &str = "results";

pub const EXIT_OK: u8 = 0;
pub const EXIT_RUNTIME: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Keys accepted by `--set` and as config-file overrides.
pub const OVERRIDE_KEYS: [&str; 12] = [
    "pop_size",
    "bits_per_variable",
    "p_c",
    "p_m",
    "tournament_size",
    "max_generations",
    "k1",
    "k1_prime",
    "k2",
    "k3",
    "separability",
    "p_twin",
];

const FILE_KEYS: [&str; 6] = ["function", "mode", "trials", "seed", "out", "all"];

/// GA and twin parameters that replace preset values.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub pop_size: Option<usize>,
    pub bits_per_variable: Option<usize>,
    pub p_c: Option<f64>,
    pub p_m: Option<f64>,
    pub tournament_size: Option<usize>,
    pub max_generations: Option<usize>,
    pub k1: Option<f64>,
    pub k1_prime: Option<f64>,
    pub k2: Option<f64>,
    pub k3: Option<f64>,
    pub separability: Option<f64>,
    /// Fixed twin probability in place of the adaptive rule.
    pub p_twin: Option<f64>,
}

fn parse_value<V: std::str::FromStr>(key: &str, value: &str) -> Result<V> {
    value
        .trim()
        .parse()
        .map_err(|_| GaError::Config(format!("invalid value {value:?} for {key}")))
}

impl Overrides {
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key.trim() {
            "pop_size" => self.pop_size = Some(parse_value(key, value)?),
            "bits_per_variable" => self.bits_per_variable = Some(parse_value(key, value)?),
            "p_c" => self.p_c = Some(parse_value(key, value)?),
            "p_m" => self.p_m = Some(parse_value(key, value)?),
            "tournament_size" => self.tournament_size = Some(parse_value(key, value)?),
            "max_generations" => self.max_generations = Some(parse_value(key, value)?),
            "k1" => self.k1 = Some(parse_value(key, value)?),
            "k1_prime" => self.k1_prime = Some(parse_value(key, value)?),
            "k2" => self.k2 = Some(parse_value(key, value)?),
            "k3" => self.k3 = Some(parse_value(key, value)?),
            "separability" => self.separability = Some(parse_value(key, value)?),
            "p_twin" => self.p_twin = Some(parse_value(key, value)?),
            other => {
                return Err(GaError::Config(format!(
                    "unknown key {other:?}; valid keys: {}",
                    OVERRIDE_KEYS.join(", ")
                )))
            }
        }
        Ok(())
    }

    /// Parses `key=value`.
    pub fn set_pair(&mut self, pair: &str) -> Result<()> {
        let (k, v) = pair
            .split_once('=')
            .ok_or_else(|| GaError::Config(format!("expected key=value, got {pair:?}")))?;
        self.set(k, v)
    }

    /// Values set in `other` replace those in `self`.
    pub fn merge(&mut self, other: &Overrides) {
        macro_rules! take {
            ($($f:ident),*) => { $( if other.$f.is_some() { self.$f = other.$f; } )* };
        }
        take!(
            pop_size,
            bits_per_variable,
            p_c,
            p_m,
            tournament_size,
            max_generations,
            k1,
            k1_prime,
            k2,
            k3,
            separability,
            p_twin
        );
    }

    pub fn apply(&self, cfg: &mut GaConfig<f64>) {
        if let Some(v) = self.pop_size {
            cfg.pop_size = v;
        }
        if let Some(v) = self.bits_per_variable {
            cfg.benchmark.bits_per_variable = v;
        }
        if let Some(v) = self.p_c {
            cfg.p_c = v;
        }
        if let Some(v) = self.p_m {
            cfg.p_m = v;
        }
        if let Some(v) = self.tournament_size {
            cfg.tournament_size = v;
        }
        if let Some(v) = self.max_generations {
            cfg.max_generations = v;
        }
        if let Some(v) = self.k1 {
            cfg.twin.k1 = v;
        }
        if let Some(v) = self.k1_prime {
            cfg.twin.k1_prime = v;
        }
        if let Some(v) = self.k2 {
            cfg.twin.k2 = v;
        }
        if let Some(v) = self.k3 {
            cfg.twin.k3 = v;
        }
        if let Some(v) = self.separability {
            cfg.twin.separability = v;
        }
        if let Some(v) = self.p_twin {
            cfg.twin.fixed_p_twin = Some(v);
        }
    }
}

/// A fully resolved request for one or more experiments.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub function: Option<BenchmarkKind>,
    pub mode: Mode,
    pub trials: usize,
    pub seed: u64,
    pub overrides: Overrides,
    pub output_dir: PathBuf,
    pub all: bool,
}

impl Default for RunSpec {
    fn default() -> Self {
        Self {
            function: None,
            mode: Mode::Atga,
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
            overrides: Overrides::default(),
            output_dir: PathBuf::from(DEFAULT_OUT),
            all: false,
        }
    }
}

impl RunSpec {
    /// Preset for `function` in `mode` with this spec's seed and overrides.
    pub fn config_for(&self, function: BenchmarkKind, mode: Mode) -> Result<GaConfig<f64>> {
        let mut cfg = GaConfig::preset(function, mode).with_seed(self.seed);
        self.overrides.apply(&mut cfg);
        cfg.validate()?;
        Ok(cfg)
    }

    /// Functions this spec covers.
    pub fn functions(&self) -> Result<Vec<BenchmarkKind>> {
        if self.all {
            return Ok(BenchmarkKind::ALL.to_vec());
        }
        self.function.map(|f| vec![f]).ok_or_else(|| {
            GaError::Config(format!(
                "no function given; use --function with one of: {} (or --all for compare)",
                BenchmarkKind::valid_names()
            ))
        })
    }

    fn validate(&self, modes: &[Mode]) -> Result<()> {
        if self.trials < 1 {
            return Err(GaError::Config("trials must be at least 1".into()));
        }
        for f in self.functions()? {
            for &m in modes {
                self.config_for(f, m)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    function: Option<String>,
    mode: Option<String>,
    trials: Option<usize>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    all: Option<bool>,
    pop_size: Option<usize>,
    bits_per_variable: Option<usize>,
    p_c: Option<f64>,
    p_m: Option<f64>,
    tournament_size: Option<usize>,
    max_generations: Option<usize>,
    k1: Option<f64>,
    k1_prime: Option<f64>,
    k2: Option<f64>,
    k3: Option<f64>,
    separability: Option<f64>,
    p_twin: Option<f64>,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, col)
}

/// Line of the first assignment to `key`.
fn key_line(text: &str, key: &str) -> Option<usize> {
    text.lines()
        .position(|l| {
            l.trim_start()
                .strip_prefix(key)
                .is_some_and(|rest| rest.trim_start().starts_with('='))
        })
        .map(|i| i + 1)
}

/// Prefixes `err` with the line of the first file key its message names.
fn locate(text: &str, origin: &str, err: GaError) -> GaError {
    let msg = match err {
        GaError::Config(m) => m,
        other => other.to_string(),
    };
    let mut keys: Vec<&str> = OVERRIDE_KEYS
        .iter()
        .chain(FILE_KEYS.iter())
        .copied()
        .collect();
    // Longer names first so `k1_prime` is not mistaken for `k1`.
    keys.sort_by_key(|k| std::cmp::Reverse(k.len()));
    let line = keys
        .iter()
        .filter(|k| msg.contains(*k))
        .filter_map(|k| key_line(text, k))
        .min();
    match line {
        Some(l) => GaError::Config(format!("{origin}:{l}: {msg}")),
        None => GaError::Config(format!("{origin}: {msg}")),
    }
}

/// Parses a TOML config. Unknown keys are rejected.
///
/// ```toml
/// function = "sphere"
/// mode = "atga"
/// trials = 25
/// seed = 42
/// out = "results"
/// k2 = 0.1
/// ```
pub fn parse_config(text: &str, origin: &str) -> Result<RunSpec> {
    let file: ConfigFile = toml::from_str(text).map_err(|e| {
        let pos = e
            .span()
            .map(|s| {
                let (l, c) = line_col(text, s.start);
                format!(":{l}:{c}")
            })
            .unwrap_or_default();
        GaError::Config(format!("{origin}{pos}: {}", e.message().trim()))
    })?;

    let mut spec = RunSpec::default();
    let at = |e| locate(text, origin, e);
    if let Some(f) = &file.function {
        spec.function = Some(f.parse().map_err(at)?);
    }
    if let Some(m) = &file.mode {
        spec.mode = m.parse().map_err(at)?;
    }
    if let Some(t) = file.trials {
        spec.trials = t;
    }
    if let Some(s) = file.seed {
        spec.seed = s;
    }
    if let Some(o) = file.out {
        spec.output_dir = o;
    }
    spec.all = file.all.unwrap_or(false);
    spec.overrides = Overrides {
        pop_size: file.pop_size,
        bits_per_variable: file.bits_per_variable,
        p_c: file.p_c,
        p_m: file.p_m,
        tournament_size: file.tournament_size,
        max_generations: file.max_generations,
        k1: file.k1,
        k1_prime: file.k1_prime,
        k2: file.k2,
        k3: file.k3,
        separability: file.separability,
        p_twin: file.p_twin,
    };
    if spec.trials < 1 {
        return Err(at(GaError::Config("trials must be at least 1".into())));
    }
    let modes = [Mode::Sga, Mode::Atga];
    let check: Vec<BenchmarkKind> = match (spec.all, spec.function) {
        (true, _) => BenchmarkKind::ALL.to_vec(),
        (false, Some(f)) => vec![f],
        (false, None) => BenchmarkKind::ALL.to_vec(),
    };
    for f in check {
        for m in modes {
            spec.config_for(f, m).map_err(at)?;
        }
    }
    Ok(spec)
}

pub fn load_config(path: &Path) -> Result<RunSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| GaError::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text, &path.display().to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "atga",
    version,
    about = "Binary GA with an adaptive twin operator: benchmark experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run repeated trials of one function in one mode.
    Run(RunArgs),
    /// Run SGA and ATGA side by side.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Benchmark preset: himmelblau, sphere, rosenbrock, rastrigin, schwefel.
    #[arg(long)]
    pub function: Option<String>,
    /// Number of independent trials.
    #[arg(long)]
    pub trials: Option<usize>,
    /// Master seed; trial i uses a stream derived from (seed, i).
    #[arg(long)]
    pub seed: Option<u64>,
    /// TOML config file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory for CSV files.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Parameter override, e.g. --set k2=0.1 (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// sga or atga.
    #[arg(long)]
    pub mode: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Compare all five functions.
    #[arg(long)]
    pub all: bool,
}

/// Builds a spec from the config file (if any) and flags.
pub fn resolve(common: &CommonArgs, mode: Option<&str>, all: bool) -> Result<RunSpec> {
    let mut spec = match &common.config {
        Some(path) => load_config(path)?,
        None => RunSpec::default(),
    };
    let mut set = Overrides::default();
    for pair in &common.set {
        set.set_pair(pair)?;
    }
    spec.overrides.merge(&set);
    if let Some(f) = &common.function {
        spec.function = Some(f.parse()?);
    }
    if let Some(m) = mode {
        spec.mode = m.parse()?;
    }
    if let Some(t) = common.trials {
        spec.trials = t;
    }
    if let Some(s) = common.seed {
        spec.seed = s;
    }
    if let Some(o) = &common.out {
        spec.output_dir = o.clone();
    }
    spec.all |= all;
    Ok(spec)
}

#[derive(Debug)]
struct Outcome {
    stats: AggregateStats<f64>,
}

fn run_one(spec: &RunSpec, function: BenchmarkKind, mode: Mode) -> Result<Outcome> {
    let cfg = spec.config_for(function, mode)?;
    let records = run_trials(&cfg, spec.trials)?;
    let stats = aggregate(&records)?;
    let target = ExportTarget {
        dir: spec.output_dir.clone(),
        function,
        mode,
        seed: spec.seed,
    };
    let paths = export_csv(&records, &stats, &target)?;
    for p in [&paths.generations, &paths.trials, &paths.summary] {
        eprintln!("wrote {}", p.display());
    }
    if stats.cv_undefined {
        eprintln!(
            "warning: {function}/{mode}: mean of best is 0, coefficient of variance reported as 0"
        );
    }
    Ok(Outcome { stats })
}

pub fn command_run(spec: &RunSpec, out: &mut dyn Write) -> Result<()> {
    let function = spec.functions()?[0];
    let outcome = run_one(spec, function, spec.mode)?;
    let row = SummaryRow {
        function,
        mode: spec.mode,
        stats: outcome.stats,
    };
    write!(out, "{}", render_summary(&[row])).map_err(stdout_err)?;
    Ok(())
}

fn stdout_err(source: std::io::Error) -> GaError {
    GaError::Export {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

/// Side-by-side table of the four summary statistics.
pub fn comparison_table(
    function: BenchmarkKind,
    trials: usize,
    seed: u64,
    sga: &AggregateStats<f64>,
    atga: &AggregateStats<f64>,
) -> String {
    let mut s = String::new();
    writeln!(s, "{function}: {trials} trials, seed {seed}").unwrap();
    writeln!(s, "{:<30}{:>14}{:>14}", "statistic", "SGA", "ATGA").unwrap();
    let rows = [
        ("mean of best individual", sga.mean_best, atga.mean_best),
        ("max of best individual", sga.max_best, atga.max_best),
        (
            "coefficient of variance (%)",
            sga.cv_percent,
            atga.cv_percent,
        ),
        (
            "mean convergence generation",
            sga.mean_convergence_generation,
            atga.mean_convergence_generation,
        ),
    ];
    for (name, a, b) in rows {
        writeln!(s, "{name:<30}{a:>14.4}{b:>14.4}").unwrap();
    }
    s
}

pub fn command_compare(spec: &RunSpec, out: &mut dyn Write) -> Result<()> {
    let functions = spec.functions()?;
    let mut rows = Vec::new();
    for function in &functions {
        let sga = run_one(spec, *function, Mode::Sga)?;
        let atga = run_one(spec, *function, Mode::Atga)?;
        let table = comparison_table(*function, spec.trials, spec.seed, &sga.stats, &atga.stats);
        writeln!(out, "{table}").map_err(stdout_err)?;
        rows.push(SummaryRow {
            function: *function,
            mode: Mode::Sga,
            stats: sga.stats,
        });
        rows.push(SummaryRow {
            function: *function,
            mode: Mode::Atga,
            stats: atga.stats,
        });
    }
    let label = if spec.all {
        "all".to_string()
    } else {
        functions[0].to_string()
    };
    let path = spec
        .output_dir
        .join(format!("compare_{label}_{}.summary.csv", spec.seed));
    write_file(&path, &render_summary(&rows))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn exit_code(err: &GaError) -> u8 {
    match err {
        GaError::Config(_) | GaError::InvalidBounds { .. } => EXIT_USAGE,
        _ => EXIT_RUNTIME,
    }
}

/// Runs a parsed command line; returns the process exit code.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> u8 {
    let result = match &cli.command {
        Command::Run(args) => resolve(&args.common, args.mode.as_deref(), false).and_then(|spec| {
            if spec.all {
                return Err(GaError::Config("--all applies to compare only".into()));
            }
            spec.validate(&[spec.mode])?;
            command_run(&spec, out)
        }),
        Command::Compare(args) => resolve(&args.common, None, args.all).and_then(|spec| {
            spec.validate(&[Mode::Sga, Mode::Atga])?;
            command_compare(&spec, out)
        }),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
