//! CSV export of per-generation traces, per-trial results and summaries.
//!
//! Files are UTF-8 with LF line endings. Reals are written with 17
//! significant digits in `%.17g` style, so parsing them back yields the
//! exact same `f64`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::benchmarks::BenchmarkKind;
use crate::error::{GaError, Result};
use crate::experiment::record::TrialRecord;
use crate::experiment::stats::AggregateStats;
use crate::ga::config::Mode;
use crate::scalar::Scalar;

pub const GENERATIONS_HEADER: &str =
    "trial,generation,best_fitness,second_best_fitness,avg_fitness,p_twin";
pub const TRIALS_HEADER: &str = "trial,final_best_fitness,convergence_generation";
pub const SUMMARY_HEADER: &str =
    "function,mode,n_trials,mean_best,max_best,cv_percent,mean_convergence_gen";

/// Formats like C's `%.17g`.
pub fn format_number(v: f64) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..17).contains(&exp) {
        let decimals = (16 - exp) as usize;
        trim_fraction(&format!("{v:.decimals$}")).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_fraction(mantissa), sign, exp.abs())
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn num<T: Scalar>(v: T) -> String {
    format_number(v.as_f64())
}

pub fn render_generations<T: Scalar>(records: &[TrialRecord<T>]) -> String {
    let mut out = String::new();
    out.push_str(GENERATIONS_HEADER);
    out.push('\n');
    for r in records {
        for e in &r.entries {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                r.trial_index,
                e.generation,
                num(e.best_fitness),
                num(e.second_best_fitness),
                num(e.avg_fitness),
                num(e.p_twin)
            )
            .unwrap();
        }
    }
    out
}

/// Per-trial rows; `final_best_fitness` is the same value [`aggregate`]
/// summarizes (raw magnitude for Normalized Schwefel).
///
/// [`aggregate`]: crate::experiment::aggregate
pub fn render_trials<T: Scalar>(records: &[TrialRecord<T>]) -> String {
    let mut out = String::new();
    out.push_str(TRIALS_HEADER);
    out.push('\n');
    for r in records {
        writeln!(
            out,
            "{},{},{}",
            r.trial_index,
            num(r.report_value()),
            r.convergence_generation
        )
        .unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow<T> {
    pub function: BenchmarkKind,
    pub mode: Mode,
    pub stats: AggregateStats<T>,
}

pub fn render_summary<T: Scalar>(rows: &[SummaryRow<T>]) -> String {
    let mut out = String::new();
    out.push_str(SUMMARY_HEADER);
    out.push('\n');
    for row in rows {
        let s = &row.stats;
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            row.function,
            row.mode,
            s.n_trials,
            num(s.mean_best),
            num(s.max_best),
            num(s.cv_percent),
            num(s.mean_convergence_generation)
        )
        .unwrap();
    }
    out
}

/// Where and under which name an experiment's files go:
/// `<dir>/<function>_<mode>_<seed>.<kind>.csv`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExportTarget {
    pub dir: PathBuf,
    pub function: BenchmarkKind,
    pub mode: Mode,
    pub seed: u64,
}

impl ExportTarget {
    pub fn path(&self, kind: &str) -> PathBuf {
        self.dir.join(format!(
            "{}_{}_{}.{}.csv",
            self.function, self.mode, self.seed, kind
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExportPaths {
    pub generations: PathBuf,
    pub trials: PathBuf,
    pub summary: PathBuf,
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(|source| GaError::Export {
            path: parent.to_path_buf(),
            source,
        })?;
    }
    fs::write(path, contents).map_err(|source| GaError::Export {
        path: path.to_path_buf(),
        source,
    })
}

pub fn export_csv<T: Scalar>(
    records: &[TrialRecord<T>],
    stats: &AggregateStats<T>,
    target: &ExportTarget,
) -> Result<ExportPaths> {
    let paths = ExportPaths {
        generations: target.path("generations"),
        trials: target.path("trials"),
        summary: target.path("summary"),
    };
    write_file(&paths.generations, &render_generations(records))?;
    write_file(&paths.trials, &render_trials(records))?;
    let row = SummaryRow {
        function: target.function,
        mode: target.mode,
        stats: stats.clone(),
    };
    write_file(&paths.summary, &render_summary(std::slice::from_ref(&row)))?;
    Ok(paths)
}
