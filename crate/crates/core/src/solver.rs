//! End-to-end edge coloring: initial configuration, Kempe-walk reduction,
//! then per-color directional walks under the step budget.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::budget::step_budget;
use crate::color::Color;
use crate::config::{initial_configuration, variables_containing, verify_edge_coloring, Configuration, Counters};
use crate::directional::{walk_to_next_step, Guide, StepOutcome};
use crate::error::ColoringError;
use crate::graph::{EdgeId, SimpleGraph};
use crate::kempe::{wkp, WkpOutcome};
use crate::trace::{TraceEvent, Tracer};
use crate::tree::build_spanning_tree;

/// Color sweeps are repeated while inversions for later colors leave
/// variables of earlier ones behind. Reaching this many sweeps counts as
/// a claim.
pub const MAX_SWEEPS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Kempe walks only.
    Wkp,
    /// Directional walks guided by a spanning tree.
    Wst,
    /// Directional walks with uniformly random moves.
    Random,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Wkp => "wkp",
            Algorithm::Wst => "wst",
            Algorithm::Random => "random",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "wkp" => Ok(Algorithm::Wkp),
            "wst" => Ok(Algorithm::Wst),
            "random" => Ok(Algorithm::Random),
            _ => Err(format!("unknown algorithm `{s}` (expected wkp, wst or random)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Palette {
    Delta,
    DeltaPlusOne,
    Fixed(usize),
}

impl Palette {
    pub fn size(self, graph: &SimpleGraph) -> usize {
        match self {
            Palette::Delta => graph.max_degree(),
            Palette::DeltaPlusOne => graph.max_degree() + 1,
            Palette::Fixed(k) => k,
        }
    }
}

impl FromStr for Palette {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "delta" => Ok(Palette::Delta),
            "delta+1" => Ok(Palette::DeltaPlusOne),
            _ => s
                .parse()
                .map(Palette::Fixed)
                .map_err(|_| format!("bad palette `{s}` (expected delta, delta+1 or a number)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "proper")]
    Proper,
    /// Kempe walks stopped with variables left, each alone on an odd cycle.
    #[serde(rename = "canonical")]
    Canonical,
    /// Some walker exhausted its budget: the chromatic index is claimed to
    /// be one more than the maximum degree.
    #[serde(rename = "chromatic_claim_delta_plus_1")]
    ClaimDeltaPlusOne,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Proper => "proper",
            Verdict::Canonical => "canonical",
            Verdict::ClaimDeltaPlusOne => "chromatic_claim_delta_plus_1",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub algorithm: Algorithm,
    pub palette: Palette,
    pub seed: u64,
    pub fallback: bool,
    pub fallback_retries: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            algorithm: Algorithm::Wst,
            palette: Palette::Delta,
            seed: 0,
            fallback: false,
            fallback_retries: 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub verdict: Verdict,
    pub algorithm: Algorithm,
    pub palette: usize,
    pub max_degree: usize,
    /// Set when a Δ-palette run claimed Δ+1 and the coloring came from a
    /// fallback run.
    pub class_two_claimed: bool,
    /// Per-edge colors, present iff the verdict is proper.
    pub coloring: Option<Vec<Color>>,
    pub counters: Counters,
    pub wall_time_s: f64,
    pub seed: u64,
}

impl RunReport {
    pub fn colors_used(&self) -> usize {
        let mut seen: Vec<Color> = self.coloring.iter().flatten().copied().collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SolveError {
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("no proper coloring after {attempts} fallback attempts with {palette} colors")]
    FallbackExhausted { attempts: usize, palette: usize },
    #[error("solver produced an invalid coloring: {0}")]
    Verification(String),
}

/// Runs one pipeline with the given palette, without fallback.
pub fn solve(graph: &SimpleGraph, algorithm: Algorithm, palette: usize, seed: u64) -> Result<RunReport, SolveError> {
    solve_traced(graph, algorithm, palette, seed, None).map(|(r, _)| r)
}

/// As [`solve`], forwarding events to `tracer`, which is handed back.
pub fn solve_traced(
    graph: &SimpleGraph,
    algorithm: Algorithm,
    palette: usize,
    seed: u64,
    tracer: Option<Tracer>,
) -> Result<(RunReport, Option<Tracer>), SolveError> {
    let clock = Instant::now();
    let mut config = initial_configuration(graph, palette, seed)?;
    if let Some(t) = tracer {
        config.set_tracer(t);
    }
    let initial = config.variable_count();
    let verdict = match algorithm {
        Algorithm::Wkp => match wkp(&mut config) {
            WkpOutcome::Proper => Verdict::Proper,
            WkpOutcome::Canonical(_) => Verdict::Canonical,
        },
        Algorithm::Wst => {
            let tree = build_spanning_tree(graph, seed);
            directional(&mut config, Guide::Tree(&tree), seed)?
        }
        Algorithm::Random => directional(&mut config, Guide::Random, seed)?,
    };
    let coloring = match verdict {
        Verdict::Proper => {
            let colors = config.edge_colors().expect("proper verdict leaves no variables");
            verify_edge_coloring(graph, &colors, palette).map_err(SolveError::Verification)?;
            Some(colors)
        }
        _ => None,
    };
    let mut counters = config.counters();
    counters.eliminated = (initial - config.variable_count()) as u64;
    let wall_time_s = clock.elapsed().as_secs_f64();
    let report = RunReport {
        verdict,
        algorithm,
        palette,
        max_degree: graph.max_degree(),
        class_two_claimed: false,
        coloring,
        counters,
        wall_time_s,
        seed,
    };
    Ok((report, config.take_tracer()))
}

/// Solves per `options`. With fallback enabled, a non-proper result is
/// followed by runs with Δ+1 colors and seeds `seed+1, seed+2, ...`.
pub fn color_with_fallback(graph: &SimpleGraph, options: &SolveOptions) -> Result<RunReport, SolveError> {
    color_with_fallback_traced(graph, options, None).map(|(r, _)| r)
}

pub fn color_with_fallback_traced(
    graph: &SimpleGraph,
    options: &SolveOptions,
    tracer: Option<Tracer>,
) -> Result<(RunReport, Option<Tracer>), SolveError> {
    let palette = options.palette.size(graph);
    let (first, mut tracer) = solve_traced(graph, options.algorithm, palette, options.seed, tracer)?;
    if first.verdict == Verdict::Proper || !options.fallback {
        return Ok((first, tracer));
    }
    let wider = graph.max_degree() + 1;
    let mut counters = first.counters;
    let mut wall = first.wall_time_s;
    for attempt in 1..=options.fallback_retries {
        let seed = options.seed.wrapping_add(attempt as u64);
        let (run, t) = solve_traced(graph, options.algorithm, wider, seed, tracer)?;
        tracer = t;
        add_counters(&mut counters, &run.counters);
        wall += run.wall_time_s;
        if run.verdict == Verdict::Proper {
            let report = RunReport {
                class_two_claimed: first.verdict == Verdict::ClaimDeltaPlusOne,
                counters,
                wall_time_s: wall,
                seed: options.seed,
                ..run
            };
            return Ok((report, tracer));
        }
    }
    Err(SolveError::FallbackExhausted {
        attempts: options.fallback_retries,
        palette: wider,
    })
}

fn add_counters(total: &mut Counters, run: &Counters) {
    total.walks += run.walks;
    total.steps += run.steps;
    total.exchanges += run.exchanges;
    total.inversions += run.inversions;
    total.deflections += run.deflections;
    total.eliminated += run.eliminated;
}

/// Kempe reduction followed by directional walks, one color at a time,
/// one component at a time.
fn directional(
    config: &mut Configuration<'_>,
    guide: Guide<'_>,
    seed: u64,
) -> Result<Verdict, ColoringError> {
    let graph = config.graph();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    if wkp(config) == WkpOutcome::Proper {
        return Ok(Verdict::Proper);
    }
    let labels = graph.components();
    let count = labels.iter().copied().max().map_or(0, |c| c + 1);
    let mut component_edges = vec![0usize; count];
    for &(lo, _) in graph.edges() {
        component_edges[labels[lo]] += 1;
    }
    let in_component = |e: EdgeId, comp: usize| labels[graph.endpoints(e).0] == comp;

    for _ in 0..MAX_SWEEPS {
        if config.variable_count() == 0 {
            return Ok(Verdict::Proper);
        }
        for comp in 0..count {
            for color in (0..config.palette()).map(Color::new) {
                let cleared = clear_color(config, guide, color, &mut rng, component_edges[comp], |e| {
                    in_component(e, comp)
                })?;
                if !cleared {
                    return Ok(Verdict::ClaimDeltaPlusOne);
                }
            }
        }
    }
    Ok(if config.variable_count() == 0 {
        Verdict::Proper
    } else {
        Verdict::ClaimDeltaPlusOne
    })
}

/// Removes every `color`-variable of one component. Returns false when all
/// variables of the current list exhaust their step allowance.
fn clear_color(
    config: &mut Configuration<'_>,
    guide: Guide<'_>,
    color: Color,
    rng: &mut ChaCha8Rng,
    m: usize,
    keep: impl Fn(EdgeId) -> bool,
) -> Result<bool, ColoringError> {
    let listed = |config: &Configuration<'_>| -> Vec<EdgeId> {
        variables_containing(config, color).into_iter().filter(|&e| keep(e)).collect()
    };
    let mut list = listed(config);
    let n_i = list.len();
    let palette = config.palette();
    while !list.is_empty() {
        let k = list.len();
        let n = n_i.max(k);
        let allowance = step_budget(n, k, palette, m)?;
        config.emit(TraceEvent::Budget {
            color,
            k,
            n_i: n,
            allowance,
        });
        let mut progressed = false;
        'list: for &start in &list {
            let mut tagged = start;
            for _ in 1..allowance {
                match walk_to_next_step(config, tagged, guide, color, rng)? {
                    StepOutcome::Eliminated => {
                        progressed = true;
                        break 'list;
                    }
                    StepOutcome::Moved(e) => tagged = e,
                    StepOutcome::Released => match listed(config).first() {
                        Some(&e) => tagged = e,
                        None => {
                            progressed = true;
                            break 'list;
                        }
                    },
                }
            }
        }
        if !progressed {
            return Ok(false);
        }
        list = listed(config);
    }
    Ok(true)
}
