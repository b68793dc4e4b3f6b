//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured worst error and asserting its stated tolerance and runtime
//! budget. Run with `cargo test --test acceptance -- --nocapture` to see the
//! lines.

use std::process::Command;
use std::time::{Duration, Instant};

use spincoh::selftest;
use spincoh::sweep::{
    check_table1, figure_preset, run_sweep, SweepResult, TrendRanges, TREND_EXTREMUM_THRESHOLD,
};

fn finish(criterion: &str, detail: &str, elapsed: Duration, budget: Duration) {
    println!(
        "criterion {criterion}: PASS - {detail} ({:.2?} of {:.2?} budget)",
        elapsed, budget
    );
    assert!(
        elapsed < budget,
        "criterion {criterion} exceeded its runtime budget: {elapsed:.2?} >= {budget:.2?}"
    );
}

#[test]
fn criterion_1_spectrum_oracle() {
    let start = Instant::now();
    let result = selftest::spectrum_check(100);
    assert!(result.passed, "{}: {}", result.name, result.detail);
    finish(
        "1 (spectrum oracle)",
        &result.detail,
        start.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_2_partition_oracle() {
    let start = Instant::now();
    let result = selftest::partition_check();
    assert!(result.passed, "{}: {}", result.name, result.detail);
    finish(
        "2 (partition oracle)",
        &result.detail,
        start.elapsed(),
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_3_gibbs_cross_check() {
    let start = Instant::now();
    let result = selftest::gibbs_cross_check(500);
    assert!(result.passed, "{}: {}", result.name, result.detail);
    finish(
        "3 (gibbs cross-check)",
        &result.detail,
        start.elapsed(),
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_4_analytic_thermal_matrices() {
    let start = Instant::now();
    let result = selftest::analytic_thermal_check();
    assert!(result.passed, "{}: {}", result.name, result.detail);
    // the exact closed forms in use are part of the record
    for note in selftest::oracle_notes() {
        println!("    note: {note}");
    }
    finish(
        "4 (analytic thermal)",
        &result.detail,
        start.elapsed(),
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_5_coherence_calibration() {
    let start = Instant::now();
    let result = selftest::coherence_calibration_check();
    assert!(result.passed, "{}: {}", result.name, result.detail);
    finish(
        "5 (coherence calibration)",
        &result.detail,
        start.elapsed(),
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_6_metric_property() {
    let start = Instant::now();
    let result = selftest::metric_check(200);
    assert!(result.passed, "{}: {}", result.name, result.detail);
    finish(
        "6 (metric property)",
        &result.detail,
        start.elapsed(),
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_7_trend_table() {
    let start = Instant::now();
    let report = check_table1(&TrendRanges::default(), 50).unwrap();
    assert_eq!(report.cells.len(), 20);
    for cell in &report.cells {
        assert!(
            cell.pass,
            "cell {} / {}: expected {}, net change {:+.6e}",
            cell.model,
            cell.param,
            cell.expected.sign(),
            cell.net
        );
    }
    finish(
        "7 (trend table)",
        "all 20 cells match the expected sign matrix at 50-point density",
        start.elapsed(),
        Duration::from_secs(10),
    );
}

/// Coherence values of the curve with the given second-axis value.
fn curve(result: &SweepResult, axis2: f64) -> Vec<f64> {
    result
        .rows
        .iter()
        .filter(|r| r.axis2 == Some(axis2))
        .map(|r| r.qjsd)
        .collect()
}

fn interior_min_depth(c: &[f64]) -> f64 {
    let ends = c[0].min(c[c.len() - 1]);
    let interior = c[1..c.len() - 1]
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    ends - interior
}

fn interior_max_excess(c: &[f64]) -> f64 {
    let ends = c[0].max(c[c.len() - 1]);
    let interior = c[1..c.len() - 1]
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    interior - ends
}

fn assert_nondecreasing(c: &[f64], what: &str) {
    for (i, pair) in c.windows(2).enumerate() {
        assert!(
            pair[1] >= pair[0] - 1e-9,
            "{what}: decreasing step at index {i}: {} -> {}",
            pair[0],
            pair[1]
        );
    }
}

fn assert_nonincreasing(c: &[f64], what: &str) {
    for (i, pair) in c.windows(2).enumerate() {
        assert!(
            pair[1] <= pair[0] + 1e-9,
            "{what}: increasing step at index {i}: {} -> {}",
            pair[0],
            pair[1]
        );
    }
}

#[test]
fn criterion_8_shape_suite() {
    let start = Instant::now();

    // scan 1b at T = 0.5: interior minimum over the DM range
    let result = run_sweep(&figure_preset("1b").unwrap().with_steps(50)).unwrap();
    let c = curve(&result, 0.5);
    assert_eq!(c.len(), 50);
    let depth = interior_min_depth(&c);
    assert!(
        depth > TREND_EXTREMUM_THRESHOLD,
        "1b: no interior minimum (depth {depth:.3e})"
    );

    // scan 2b: non-decreasing in the DM strength at every curve temperature
    let result = run_sweep(&figure_preset("2b").unwrap().with_steps(50)).unwrap();
    for t in [0.5, 1.0, 1.5] {
        assert_nondecreasing(&curve(&result, t), &format!("2b at T={t}"));
    }

    // scan 2c: non-increasing in the homogeneous field
    let result = run_sweep(&figure_preset("2c").unwrap().with_steps(50)).unwrap();
    for t in [0.5, 1.0, 1.5] {
        assert_nonincreasing(&curve(&result, t), &format!("2c at T={t}"));
    }

    // scan 4b: non-decreasing in the DM strength
    let result = run_sweep(&figure_preset("4b").unwrap().with_steps(50)).unwrap();
    for t in [0.5, 1.0, 1.5] {
        assert_nondecreasing(&curve(&result, t), &format!("4b at T={t}"));
    }

    // scan 2d at T = 0.5: interior maximum over the inhomogeneous field
    let result = run_sweep(&figure_preset("2d").unwrap().with_steps(50)).unwrap();
    let c = curve(&result, 0.5);
    let excess = interior_max_excess(&c);
    assert!(
        excess > TREND_EXTREMUM_THRESHOLD,
        "2d: no interior maximum (excess {excess:.3e})"
    );

    finish(
        "8 (shape suite)",
        "all five curve-shape checks hold at 50-point resolution",
        start.elapsed(),
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_9_determinism() {
    let start = Instant::now();
    let bin = env!("CARGO_BIN_EXE_spincoh");
    let run = || {
        let output = Command::new(bin)
            .args(["fig", "1a", "--steps", "50"])
            .output()
            .expect("binary runs");
        assert!(output.status.success(), "fig 1a failed: {output:?}");
        output.stdout
    };
    let first = run();
    let second = run();
    assert!(!first.is_empty());
    assert_eq!(first, second, "fig 1a produced different bytes on rerun");
    finish(
        "9 (determinism)",
        "fig 1a --steps 50 is byte-identical across runs",
        start.elapsed(),
        Duration::from_secs(30),
    );
}
