//! Golden-file check: a fixed seed must keep producing the same trace.
//! Regenerate with `UPDATE_GOLDEN=1 cargo test --test determinism`.

use std::path::PathBuf;

use atga::experiment::export::{render_generations, render_trials};
use atga::{run_trials, BenchmarkKind, GaConfig64, Mode};

fn check(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected =
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "golden mismatch for {name}");
}

#[test]
fn sphere_atga_seed_42_golden() {
    let cfg = GaConfig64::preset(BenchmarkKind::Sphere, Mode::Atga).with_seed(42);
    let records = run_trials(&cfg, 3).unwrap();
    check(
        "sphere_atga_42.generations.csv",
        &render_generations(&records),
    );
    check("sphere_atga_42.trials.csv", &render_trials(&records));
}

#[test]
fn rastrigin_sga_seed_7_golden() {
    let cfg = GaConfig64::preset(BenchmarkKind::Rastrigin, Mode::Sga).with_seed(7);
    let records = run_trials(&cfg, 2).unwrap();
    check(
        "rastrigin_sga_7.generations.csv",
        &render_generations(&records),
    );
}
