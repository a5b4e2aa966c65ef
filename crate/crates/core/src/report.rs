//! Run reports as JSON or plain text.
//!
//! Colors are written 1-based. Wall time is left out unless requested, so
//! that equal runs serialize to equal bytes.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::color::Color;
use crate::config::Counters;
use crate::solver::{Algorithm, RunReport, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(format!("unknown format `{s}` (expected json or text)")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    verdict: Verdict,
    algorithm: Algorithm,
    palette: usize,
    max_degree: usize,
    class_two_claimed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coloring: Option<Vec<u32>>,
    counters: Counters,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    wall_time_s: Option<f64>,
    seed: u64,
}

/// Serializes a report. `timing` adds `wall_time_s` at microsecond
/// precision.
pub fn emit_report(report: &RunReport, format: Format, timing: bool) -> String {
    match format {
        Format::Json => {
            let wire = Wire {
                verdict: report.verdict,
                algorithm: report.algorithm,
                palette: report.palette,
                max_degree: report.max_degree,
                class_two_claimed: report.class_two_claimed,
                coloring: report
                    .coloring
                    .as_ref()
                    .map(|cs| cs.iter().map(|c| c.index() as u32 + 1).collect()),
                counters: report.counters,
                wall_time_s: timing.then(|| micros(report.wall_time_s)),
                seed: report.seed,
            };
            let mut s = serde_json::to_string_pretty(&wire).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => text(report, timing),
    }
}

fn micros(t: f64) -> f64 {
    (t * 1e6).round() / 1e6
}

fn text(r: &RunReport, timing: bool) -> String {
    let mut s = String::new();
    let verdict = match r.verdict {
        Verdict::Proper => format!("proper {}-edge-coloring", r.palette),
        Verdict::Canonical => "canonical configuration (variables left on odd cycles)".to_string(),
        Verdict::ClaimDeltaPlusOne => format!("chromatic index claimed to be {}", r.max_degree + 1),
    };
    let _ = writeln!(s, "verdict:    {verdict}");
    if r.class_two_claimed {
        let _ = writeln!(s, "class:      2 (claimed; coloring from a {}-color rerun)", r.palette);
    }
    let _ = writeln!(s, "algorithm:  {}", r.algorithm);
    let _ = writeln!(s, "palette:    {} (max degree {})", r.palette, r.max_degree);
    let _ = writeln!(s, "seed:       {}", r.seed);
    let c = &r.counters;
    let _ = writeln!(
        s,
        "counters:   walks={} steps={} exchanges={} inversions={} deflections={} eliminated={}",
        c.walks, c.steps, c.exchanges, c.inversions, c.deflections, c.eliminated
    );
    if timing {
        let _ = writeln!(s, "time:       {:.6} s", r.wall_time_s);
    }
    if let Some(colors) = &r.coloring {
        let list: Vec<String> = colors.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(s, "coloring:   {}", list.join(" "));
    }
    s
}

/// Reads a JSON report back. A missing `wall_time_s` reads as zero.
pub fn parse_report(text: &str) -> Result<RunReport, String> {
    let wire: Wire = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let coloring = match wire.coloring {
        None => None,
        Some(cs) => Some(
            cs.into_iter()
                .map(|c| {
                    if c == 0 || c > u16::MAX as u32 + 1 {
                        Err(format!("color {c} is not a 1-based color"))
                    } else {
                        Ok(Color((c - 1) as u16))
                    }
                })
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    Ok(RunReport {
        verdict: wire.verdict,
        algorithm: wire.algorithm,
        palette: wire.palette,
        max_degree: wire.max_degree,
        class_two_claimed: wire.class_two_claimed,
        coloring,
        counters: wire.counters,
        wall_time_s: wire.wall_time_s.unwrap_or(0.0),
        seed: wire.seed,
    })
}
