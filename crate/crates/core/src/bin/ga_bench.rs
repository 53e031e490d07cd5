//! Runs the pooled-vs-naive interpolation benchmark and writes a table
//! and/or CSV report.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use cga_motion::bench::{emit_report, run_bench, BenchConfig, Format};
use cga_motion::netsync::Pipeline;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
    Both,
}

#[derive(Debug, Parser)]
#[command(
    name = "ga-bench",
    about = "Interpolate N objects per pipeline and compare frame times"
)]
struct Args {
    /// Object counts, comma-separated.
    #[arg(long, value_delimiter = ',', default_values_t = [50usize, 100, 150, 200, 250])]
    counts: Vec<usize>,
    /// Simulated seconds per (count, pipeline) run.
    #[arg(long, default_value_t = 10.0)]
    duration: f64,
    /// Pipelines, comma-separated: TRADITIONAL, GA_NAIVE, GA_POOLED.
    #[arg(long, value_delimiter = ',', default_value = "TRADITIONAL,GA_NAIVE,GA_POOLED")]
    pipelines: Vec<Pipeline>,
    /// Simulated seconds discarded before timing starts.
    #[arg(long, default_value_t = 2.0)]
    warmup: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; standard output when omitted. With `--format both`
    /// the report goes to <out>.txt and <out>.csv.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = FormatArg::Both)]
    format: FormatArg,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let format = match args.format {
        FormatArg::Table => Format::Table,
        FormatArg::Csv => Format::Csv,
        FormatArg::Both => Format::Both,
    };
    let cfg = BenchConfig {
        object_counts: args.counts,
        duration_s: args.duration,
        pipelines: args.pipelines,
        warmup_s: args.warmup,
        seed: args.seed,
        out: args.out,
        format,
    };
    let result = run_bench(&cfg).and_then(|r| emit_report(&r, cfg.out.as_deref(), cfg.format));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ga-bench: {e}");
            ExitCode::from(2)
        }
    }
}
