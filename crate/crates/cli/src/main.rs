use std::fs::{self, File};
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use chromatic_core::bench::{rows_csv, run_bench, summarize, summary_csv};
use chromatic_core::config::verify_edge_coloring;
use chromatic_core::dimacs::{parse_dimacs, write_dimacs};
use chromatic_core::generate::{generate_instance, parse_spec_file, InstanceKind, InstanceSpec};
use chromatic_core::report::{emit_report, parse_report, Format};
use chromatic_core::solver::color_with_fallback_traced;
use chromatic_core::trace::Tracer;
use chromatic_core::{Algorithm, Palette, RunReport, SimpleGraph, SolveOptions, Verdict};

const EXIT_ERROR: u8 = 1;
const EXIT_CLAIM: u8 = 2;
const EXIT_CANONICAL: u8 = 3;

#[derive(Parser)]
#[command(name = "chromatic", version, about = "Edge coloring by complex-color variable elimination")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Color the edges of a DIMACS graph
    Color {
        file: PathBuf,
        #[arg(long, default_value = "wst")]
        algorithm: Algorithm,
        /// delta, delta+1 or a number of colors
        #[arg(long, default_value = "delta")]
        palette: Palette,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Rerun with Δ+1 colors when no Δ-coloring is found
        #[arg(long)]
        fallback: bool,
        /// Print recolorings and walk events to stderr (also CHROMATIC_TRACE=1)
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value = "json")]
        format: Format,
        /// Include wall-clock time in the report
        #[arg(long)]
        timing: bool,
    },
    /// Generate an instance and print it in DIMACS format
    Gen {
        /// regular:D, gnm:DENSITY, bipartite:DENSITY, petersen, complete or rook
        kind: String,
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a spec file (`kind n seed` per line) and print per-run CSV
    Bench {
        spec_file: PathBuf,
        #[arg(long, default_value_t = 1)]
        reps: usize,
        #[arg(long, default_value = "wst")]
        algorithm: Algorithm,
        /// Also write per-spec summary CSV here
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Check a JSON report's coloring against a graph
    Verify { graph: PathBuf, report: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Color {
            file,
            algorithm,
            palette,
            seed,
            fallback,
            trace,
            format,
            timing,
        } => {
            let graph = load_graph(&file)?;
            let options = SolveOptions {
                algorithm,
                palette,
                seed,
                fallback,
                ..SolveOptions::default()
            };
            let trace = trace || std::env::var("CHROMATIC_TRACE").is_ok_and(|v| v == "1");
            let tracer: Option<Tracer> = trace.then(|| {
                Box::new(|event: &_| {
                    let _ = writeln!(io::stderr().lock(), "{event}");
                }) as Tracer
            });
            let (report, _) = color_with_fallback_traced(&graph, &options, tracer)?;
            io::stdout().write_all(emit_report(&report, format, timing).as_bytes())?;
            Ok(exit_code(&report))
        }
        Command::Gen { kind, n, seed } => {
            let kind: InstanceKind = kind.parse()?;
            let graph = generate_instance(&InstanceSpec { kind, n, seed })?;
            write_dimacs(&graph, io::stdout().lock())?;
            Ok(0)
        }
        Command::Bench {
            spec_file,
            reps,
            algorithm,
            summary,
        } => {
            let text = fs::read_to_string(&spec_file).with_context(|| format!("reading {}", spec_file.display()))?;
            let specs = parse_spec_file(&text)?;
            let rows = run_bench(&specs, algorithm, reps)?;
            io::stdout().write_all(rows_csv(&rows).as_bytes())?;
            if let Some(path) = summary {
                fs::write(&path, summary_csv(&summarize(&rows)))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(0)
        }
        Command::Verify { graph, report } => {
            let graph = load_graph(&graph)?;
            let text = fs::read_to_string(&report).with_context(|| format!("reading {}", report.display()))?;
            let report = parse_report(&text).map_err(anyhow::Error::msg).context("parsing report")?;
            let Some(colors) = &report.coloring else {
                bail!("report has verdict {} and no coloring", report.verdict.name());
            };
            verify_edge_coloring(&graph, colors, report.palette).map_err(anyhow::Error::msg)?;
            println!("ok: proper {}-edge-coloring of {} edges", report.palette, graph.edge_count());
            Ok(0)
        }
    }
}

fn load_graph(path: &Path) -> Result<SimpleGraph> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let parsed = parse_dimacs(BufReader::new(file)).with_context(|| format!("parsing {}", path.display()))?;
    if parsed.duplicate_edges > 0 {
        eprintln!("warning: dropped {} duplicate edges", parsed.duplicate_edges);
    }
    if parsed.ignored_lines > 0 {
        eprintln!("warning: ignored {} unrecognized lines", parsed.ignored_lines);
    }
    Ok(parsed.graph)
}

fn exit_code(report: &RunReport) -> u8 {
    match report.verdict {
        _ if report.class_two_claimed => EXIT_CLAIM,
        Verdict::Proper => 0,
        Verdict::ClaimDeltaPlusOne => EXIT_CLAIM,
        Verdict::Canonical => EXIT_CANONICAL,
    }
}
