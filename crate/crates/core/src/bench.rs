//! Benchmark harness: repeated solves over instance specs, with every
//! proper result re-checked from its serialized report.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::InstanceError;
use crate::generate::{generate_instance, InstanceSpec};
use crate::graph::SimpleGraph;
use crate::report::{emit_report, parse_report, Format};
use crate::solver::{solve, Algorithm, RunReport, SolveError, Verdict};
use crate::config::verify_edge_coloring;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub spec: String,
    pub seed: u64,
    pub verdict: &'static str,
    pub colors: usize,
    pub walks: u64,
    pub exchanges: u64,
    pub time_s: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub spec: String,
    pub runs: usize,
    pub successes: usize,
    /// Largest number of colors used by a successful run.
    pub colors: Option<usize>,
    pub min_s: String,
    pub median_s: String,
    pub p95_s: String,
    pub max_s: String,
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("{spec}: {source}")]
    Instance {
        spec: String,
        #[source]
        source: InstanceError,
    },
    #[error("{spec} seed {seed}: {source}")]
    Solve {
        spec: String,
        seed: u64,
        #[source]
        source: SolveError,
    },
    #[error("{spec} seed {seed}: reloaded coloring failed verification: {message}")]
    Verification { spec: String, seed: u64, message: String },
}

/// Runs every spec `reps` times with a Δ palette. Repetition `j` uses
/// seed `spec.seed + j` both for the instance and for the solver. Rows are
/// sorted by spec label, then seed.
pub fn run_bench(specs: &[InstanceSpec], algorithm: Algorithm, reps: usize) -> Result<Vec<BenchRow>, BenchError> {
    let jobs: Vec<InstanceSpec> = specs
        .iter()
        .flat_map(|s| {
            (0..reps as u64).map(move |j| InstanceSpec {
                seed: s.seed.wrapping_add(j),
                ..s.clone()
            })
        })
        .collect();
    let mut rows = jobs
        .par_iter()
        .map(|spec| run_one(spec, algorithm))
        .collect::<Result<Vec<_>, _>>()?;
    rows.sort_by(|a, b| a.spec.cmp(&b.spec).then(a.seed.cmp(&b.seed)));
    Ok(rows)
}

fn run_one(spec: &InstanceSpec, algorithm: Algorithm) -> Result<BenchRow, BenchError> {
    let label = spec.label();
    let graph = generate_instance(spec).map_err(|source| BenchError::Instance {
        spec: label.clone(),
        source,
    })?;
    let report = solve(&graph, algorithm, graph.max_degree(), spec.seed).map_err(|source| BenchError::Solve {
        spec: label.clone(),
        seed: spec.seed,
        source,
    })?;
    if report.verdict == Verdict::Proper {
        recheck(&graph, &report).map_err(|message| BenchError::Verification {
            spec: label.clone(),
            seed: spec.seed,
            message,
        })?;
    }
    Ok(BenchRow {
        spec: label,
        seed: spec.seed,
        verdict: report.verdict.name(),
        colors: report.colors_used(),
        walks: report.counters.walks,
        exchanges: report.counters.exchanges,
        time_s: format!("{:.6}", report.wall_time_s),
    })
}

/// Verifies the coloring as read back from the JSON report.
pub fn recheck(graph: &SimpleGraph, report: &RunReport) -> Result<(), String> {
    let back = parse_report(&emit_report(report, Format::Json, false))?;
    let colors = back.coloring.ok_or("proper report without a coloring")?;
    verify_edge_coloring(graph, &colors, back.palette)
}

/// Per-spec aggregates, in the order specs first appear in `rows`.
pub fn summarize(rows: &[BenchRow]) -> Vec<SummaryRow> {
    let mut labels: Vec<&str> = Vec::new();
    for r in rows {
        if !labels.contains(&r.spec.as_str()) {
            labels.push(&r.spec);
        }
    }
    labels
        .into_iter()
        .map(|label| {
            let group: Vec<&BenchRow> = rows.iter().filter(|r| r.spec == label).collect();
            let successes: Vec<&&BenchRow> = group.iter().filter(|r| r.verdict == Verdict::Proper.name()).collect();
            let mut times: Vec<f64> = group.iter().map(|r| r.time_s.parse().unwrap_or(0.0)).collect();
            times.sort_by(f64::total_cmp);
            let rank = |q: f64| -> String {
                if times.is_empty() {
                    return String::new();
                }
                let i = ((q * times.len() as f64).ceil() as usize).clamp(1, times.len()) - 1;
                format!("{:.6}", times[i])
            };
            SummaryRow {
                spec: label.to_string(),
                runs: group.len(),
                successes: successes.len(),
                colors: successes.iter().map(|r| r.colors).max(),
                min_s: rank(0.0),
                median_s: rank(0.5),
                p95_s: rank(0.95),
                max_s: rank(1.0),
            }
        })
        .collect()
}

pub fn to_csv<T: Serialize>(rows: &[T], header: &[&str]) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.serialize(r).expect("rows serialize");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

pub const ROW_HEADER: [&str; 7] = ["spec", "seed", "verdict", "colors", "walks", "exchanges", "time_s"];
pub const SUMMARY_HEADER: [&str; 8] = ["spec", "runs", "successes", "colors", "min_s", "median_s", "p95_s", "max_s"];

pub fn rows_csv(rows: &[BenchRow]) -> String {
    to_csv(rows, &ROW_HEADER)
}

pub fn summary_csv(rows: &[SummaryRow]) -> String {
    to_csv(rows, &SUMMARY_HEADER)
}
