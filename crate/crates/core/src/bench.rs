//! Benchmark harness: interpolate N objects for a fixed simulated
//! duration under each pipeline and compare mean frame-batch times.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::netsync::sim::{run_simulation, Pipeline, SimConfig, SimError};

pub const CSV_HEADER: &str =
    "count,pipeline,mean_ms,median_ms,p95_ms,allocs,improvement_vs_naive_pct,improvement_vs_traditional_pct";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Csv,
    Both,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub object_counts: Vec<usize>,
    pub duration_s: f64,
    pub pipelines: Vec<Pipeline>,
    pub warmup_s: f64,
    pub seed: u64,
    /// Output path; `None` writes to standard output. With
    /// [`Format::Both`] the extension is replaced by `.txt` and `.csv`.
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            object_counts: vec![50, 100, 150, 200, 250],
            duration_s: 10.0,
            pipelines: Pipeline::ALL.to_vec(),
            warmup_s: 2.0,
            seed: 0,
            out: None,
            format: Format::Both,
        }
    }
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), BenchError> {
        let fail = |m: &str| Err(BenchError::Config(m.to_string()));
        if self.pipelines.is_empty() {
            return fail("pipeline set is empty");
        }
        if self.object_counts.is_empty() || self.object_counts.contains(&0) {
            return fail("object counts must be non-empty and at least 1");
        }
        if !(self.warmup_s >= 0.0 && self.duration_s > self.warmup_s) {
            return fail("duration must exceed the warm-up");
        }
        if let Some(out) = &self.out {
            let parent = out
                .parent()
                .filter(|p| !p.as_os_str().is_empty())
                .unwrap_or(Path::new("."));
            if !parent.is_dir() {
                return Err(BenchError::Io {
                    path: out.clone(),
                    source: std::io::Error::new(std::io::ErrorKind::NotFound, "parent directory does not exist"),
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub count: usize,
    pub pipeline: Pipeline,
    pub mean_ms: f64,
    pub median_ms: f64,
    pub p95_ms: f64,
    pub allocs: u64,
    /// `(naive - this) / naive` in percent, when GA_NAIVE ran for this count.
    pub improvement_vs_naive_pct: Option<f64>,
    /// `(traditional - this) / traditional` in percent, when TRADITIONAL ran.
    pub improvement_vs_traditional_pct: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct BenchResults {
    pub rows: Vec<BenchRow>,
}

/// `(a - b) / a` in percent: how much faster `b` is than `a`.
pub fn improvement_pct(a: f64, b: f64) -> f64 {
    (a - b) / a * 100.0
}

impl BenchResults {
    /// Rows from raw timings; fills the improvement columns.
    pub fn from_raw(raw: Vec<(usize, Pipeline, f64, f64, f64, u64)>) -> Self {
        let mut rows: Vec<BenchRow> = raw
            .into_iter()
            .map(|(count, pipeline, mean_ms, median_ms, p95_ms, allocs)| BenchRow {
                count,
                pipeline,
                mean_ms,
                median_ms,
                p95_ms,
                allocs,
                improvement_vs_naive_pct: None,
                improvement_vs_traditional_pct: None,
            })
            .collect();
        rows.sort_by_key(|r| (r.count, r.pipeline));
        let snapshot = rows.clone();
        let mean_of = |count: usize, p: Pipeline| {
            snapshot
                .iter()
                .find(|r| r.count == count && r.pipeline == p)
                .map(|r| r.mean_ms)
        };
        for row in &mut rows {
            row.improvement_vs_naive_pct =
                mean_of(row.count, Pipeline::GaNaive).map(|a| improvement_pct(a, row.mean_ms));
            row.improvement_vs_traditional_pct =
                mean_of(row.count, Pipeline::Traditional).map(|a| improvement_pct(a, row.mean_ms));
        }
        Self { rows }
    }

    pub fn get(&self, count: usize, pipeline: Pipeline) -> Option<&BenchRow> {
        self.rows.iter().find(|r| r.count == count && r.pipeline == pipeline)
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        w.write_record(CSV_HEADER.split(',')).expect("in-memory write");
        for r in &self.rows {
            let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
            w.write_record([
                r.count.to_string(),
                r.pipeline.name().to_string(),
                r.mean_ms.to_string(),
                r.median_ms.to_string(),
                r.p95_ms.to_string(),
                r.allocs.to_string(),
                opt(r.improvement_vs_naive_pct),
                opt(r.improvement_vs_traditional_pct),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
    }

    pub fn from_csv(text: &str) -> Result<Self, String> {
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let header: Vec<String> = reader
            .headers()
            .map_err(|e| e.to_string())?
            .iter()
            .map(String::from)
            .collect();
        if header.join(",") != CSV_HEADER {
            return Err(format!("unexpected header {:?}", header.join(",")));
        }
        let mut rows = Vec::new();
        for record in reader.records() {
            let rec = record.map_err(|e| e.to_string())?;
            let f = |i: usize| rec[i].parse::<f64>().map_err(|e| format!("column {i}: {e}"));
            let opt = |i: usize| if rec[i].is_empty() { Ok(None) } else { f(i).map(Some) };
            rows.push(BenchRow {
                count: rec[0].parse().map_err(|e| format!("count: {e}"))?,
                pipeline: rec[1].parse()?,
                mean_ms: f(2)?,
                median_ms: f(3)?,
                p95_ms: f(4)?,
                allocs: rec[5].parse().map_err(|e| format!("allocs: {e}"))?,
                improvement_vs_naive_pct: opt(6)?,
                improvement_vs_traditional_pct: opt(7)?,
            });
        }
        Ok(Self { rows })
    }

    pub fn to_table(&self) -> String {
        let opt = |v: Option<f64>| v.map(|x| format!("{x:.1}%")).unwrap_or_else(|| "-".into());
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{:>6}  {:<12} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}",
            "count", "pipeline", "mean_ms", "median_ms", "p95_ms", "allocs", "vs_naive", "vs_trad"
        );
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{:>6}  {:<12} {:>10.4} {:>10.4} {:>10.4} {:>10} {:>10} {:>10}",
                r.count,
                r.pipeline.name(),
                r.mean_ms,
                r.median_ms,
                r.p95_ms,
                r.allocs,
                opt(r.improvement_vs_naive_pct),
                opt(r.improvement_vs_traditional_pct)
            );
        }
        s
    }
}

pub fn run_bench(cfg: &BenchConfig) -> Result<BenchResults, BenchError> {
    cfg.validate()?;
    let mut raw = Vec::new();
    for &count in &cfg.object_counts {
        for &pipeline in &cfg.pipelines {
            let mut sim = SimConfig::new(pipeline, count, cfg.duration_s, cfg.seed);
            sim.warmup_s = cfg.warmup_s;
            let r = run_simulation(&sim)?;
            log::info!("{count} objects, {pipeline}: mean {:.4} ms/frame", r.mean_ms);
            raw.push((count, pipeline, r.mean_ms, r.median_ms, r.p95_ms, r.allocations));
        }
    }
    Ok(BenchResults::from_raw(raw))
}

/// Writes the report in the requested format, to files or standard output.
pub fn emit_report(results: &BenchResults, out: Option<&Path>, format: Format) -> Result<(), BenchError> {
    if results.rows.is_empty() {
        return Err(BenchError::Config("no results to report".into()));
    }
    let write =
        |path: PathBuf, text: String| std::fs::write(&path, text).map_err(|source| BenchError::Io { path, source });
    match (out, format) {
        (None, Format::Table) => print!("{}", results.to_table()),
        (None, Format::Csv) => print!("{}", results.to_csv()),
        (None, Format::Both) => print!("{}\n{}", results.to_table(), results.to_csv()),
        (Some(p), Format::Table) => write(p.to_path_buf(), results.to_table())?,
        (Some(p), Format::Csv) => write(p.to_path_buf(), results.to_csv())?,
        (Some(p), Format::Both) => {
            write(p.with_extension("txt"), results.to_table())?;
            write(p.with_extension("csv"), results.to_csv())?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic() -> BenchResults {
        BenchResults::from_raw(vec![
            (50, Pipeline::GaPooled, 1.0, 0.9, 1.5, 0),
            (50, Pipeline::Traditional, 0.5, 0.5, 0.6, 0),
            (50, Pipeline::GaNaive, 4.0, 3.9, 5.0, 1000),
        ])
    }

    #[test]
    fn improvement_columns() {
        let r = synthetic();
        assert_eq!(r.rows.len(), 3);
        let pooled = r.get(50, Pipeline::GaPooled).unwrap();
        assert_eq!(pooled.improvement_vs_naive_pct, Some(75.0));
        assert_eq!(pooled.improvement_vs_traditional_pct, Some(-100.0));
        assert_eq!(
            r.get(50, Pipeline::GaNaive).unwrap().improvement_vs_naive_pct,
            Some(0.0)
        );
        assert_eq!(r.rows[0].pipeline, Pipeline::Traditional, "rows in a fixed order");
    }

    #[test]
    fn csv_round_trip() {
        let r = synthetic();
        let text = r.to_csv();
        assert!(text.starts_with(CSV_HEADER));
        assert_eq!(BenchResults::from_csv(&text).unwrap(), r);
    }

    #[test]
    fn config_errors() {
        let cfg = BenchConfig {
            pipelines: vec![],
            ..BenchConfig::default()
        };
        assert!(matches!(run_bench(&cfg), Err(BenchError::Config(_))));
        let cfg = BenchConfig {
            out: Some("/nonexistent/dir/report".into()),
            ..BenchConfig::default()
        };
        assert!(matches!(cfg.validate(), Err(BenchError::Io { .. })));
        assert!(emit_report(&BenchResults::default(), None, Format::Csv).is_err());
    }

    #[test]
    fn small_run() {
        let cfg = BenchConfig {
            object_counts: vec![3],
            duration_s: 1.0,
            warmup_s: 0.5,
            ..BenchConfig::default()
        };
        let r = run_bench(&cfg).unwrap();
        assert_eq!(r.rows.len(), 3);
        assert_eq!(r.get(3, Pipeline::GaPooled).unwrap().allocs, 0);
    }
}
