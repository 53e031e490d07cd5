//! Report format, golden files and the `ga-bench` command line.

use std::process::Command;

use cga_motion::bench::{emit_report, improvement_pct, run_bench, BenchConfig, BenchResults, Format, CSV_HEADER};
use cga_motion::netsync::Pipeline;

fn synthetic() -> BenchResults {
    BenchResults::from_raw(vec![
        (50, Pipeline::Traditional, 0.25, 0.24, 0.3, 0),
        (50, Pipeline::GaNaive, 2.0, 1.9, 2.5, 54000),
        (50, Pipeline::GaPooled, 0.5, 0.48, 0.6, 0),
        (200, Pipeline::Traditional, 1.0, 0.98, 1.2, 0),
        (200, Pipeline::GaNaive, 5.27, 5.1, 6.0, 216000),
        (200, Pipeline::GaPooled, 1.19, 1.15, 1.4, 0),
    ])
}

#[test]
fn golden_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report");
    emit_report(&synthetic(), Some(&out), Format::Both).unwrap();
    let csv = std::fs::read_to_string(out.with_extension("csv")).unwrap();
    let txt = std::fs::read_to_string(out.with_extension("txt")).unwrap();
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        let golden = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
        std::fs::write(golden.join("bench_report.csv"), &csv).unwrap();
        std::fs::write(golden.join("bench_report.txt"), &txt).unwrap();
        return;
    }
    assert_eq!(csv, include_str!("golden/bench_report.csv"));
    assert_eq!(txt, include_str!("golden/bench_report.txt"));
}

#[test]
fn improvement_recomputes_from_columns() {
    let parsed = BenchResults::from_csv(&synthetic().to_csv()).unwrap();
    for row in &parsed.rows {
        let naive = parsed.get(row.count, Pipeline::GaNaive).unwrap().mean_ms;
        let trad = parsed.get(row.count, Pipeline::Traditional).unwrap().mean_ms;
        assert_eq!(row.improvement_vs_naive_pct, Some(improvement_pct(naive, row.mean_ms)));
        assert_eq!(
            row.improvement_vs_traditional_pct,
            Some(improvement_pct(trad, row.mean_ms))
        );
    }
    let pooled_200 = parsed.get(200, Pipeline::GaPooled).unwrap();
    assert!((pooled_200.improvement_vs_naive_pct.unwrap() - 77.4).abs() < 0.1);
}

#[test]
fn cli_writes_both_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let status = Command::new(env!("CARGO_BIN_EXE_ga-bench"))
        .args([
            "--counts",
            "4,8",
            "--duration",
            "1.5",
            "--warmup",
            "0.5",
            "--seed",
            "3",
            "--format",
            "both",
        ])
        .arg("--out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let csv = std::fs::read_to_string(out.with_extension("csv")).unwrap();
    assert!(csv.starts_with(CSV_HEADER));
    let parsed = BenchResults::from_csv(&csv).unwrap();
    assert_eq!(parsed.rows.len(), 6);
    assert!(std::fs::read_to_string(out.with_extension("txt"))
        .unwrap()
        .contains("GA_POOLED"));
    for row in parsed.rows.iter().filter(|r| r.pipeline == Pipeline::GaPooled) {
        assert_eq!(row.allocs, 0);
    }
}

#[test]
fn cli_rejects_bad_configuration() {
    let bin = env!("CARGO_BIN_EXE_ga-bench");
    let run = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    assert!(!run(&["--pipelines", "WARP"]).status.success());
    assert!(!run(&["--counts", "0"]).status.success());
    assert!(!run(&["--duration", "1", "--warmup", "2"]).status.success());
    let bad_out = run(&[
        "--counts",
        "1",
        "--duration",
        "1.5",
        "--warmup",
        "0.5",
        "--out",
        "/nonexistent/x/report",
    ]);
    assert!(!bad_out.status.success());
    assert!(String::from_utf8_lossy(&bad_out.stderr).contains("/nonexistent/x/report"));
}

#[test]
fn workload_grows_with_object_count() {
    let cfg = BenchConfig {
        object_counts: vec![20, 100, 250],
        duration_s: 3.0,
        warmup_s: 1.0,
        ..BenchConfig::default()
    };
    let results = run_bench(&cfg).unwrap();
    for pipeline in Pipeline::ALL {
        let means: Vec<f64> = cfg
            .object_counts
            .iter()
            .map(|&c| results.get(c, pipeline).unwrap().mean_ms)
            .collect();
        let inversions: Vec<f64> = means
            .windows(2)
            .filter(|w| w[1] < w[0])
            .map(|w| (w[0] - w[1]) / w[0])
            .collect();
        assert!(
            inversions.len() <= 1 && inversions.iter().all(|&d| d <= 0.10),
            "{pipeline}: {means:?}"
        );
    }
}
