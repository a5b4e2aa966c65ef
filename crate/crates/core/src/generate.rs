//! Seeded random instances and the `kind n seed` instance specs used by the
//! benchmark harness.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dimacs::parse_dimacs;
use crate::error::{InstanceError, ParseError};
use crate::graph::{families, SimpleGraph, VertexId};

/// Attempts at building a simple regular graph before giving up.
pub const REGULAR_RETRIES: usize = 10_000;

#[derive(Clone, Debug, PartialEq)]
pub enum InstanceKind {
    /// Random `d`-regular graph.
    Regular(usize),
    /// Uniform random simple graph with `⌊δ·n⌋` edges.
    Gnm(f64),
    /// Uniform random bipartite graph on halves of sizes `⌊n/2⌋` and
    /// `⌈n/2⌉` with `⌊δ·n⌋` edges.
    Bipartite(f64),
    Petersen,
    /// `K_n`.
    Complete,
    /// Rook's graph on an `n × n` board.
    Rook,
    Dimacs(PathBuf),
}

impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceKind::Regular(d) => write!(f, "regular:{d}"),
            InstanceKind::Gnm(x) => write!(f, "gnm:{x}"),
            InstanceKind::Bipartite(x) => write!(f, "bipartite:{x}"),
            InstanceKind::Petersen => f.write_str("petersen"),
            InstanceKind::Complete => f.write_str("complete"),
            InstanceKind::Rook => f.write_str("rook"),
            InstanceKind::Dimacs(p) => write!(f, "dimacs:{}", p.display()),
        }
    }
}

impl FromStr for InstanceKind {
    type Err = InstanceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || InstanceError::BadSpec(s.to_string());
        let density = |v: &str| -> Result<f64, InstanceError> {
            let x: f64 = v.parse().map_err(|_| bad())?;
            if x.is_finite() && x >= 0.0 {
                Ok(x)
            } else {
                Err(bad())
            }
        };
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        match (head, arg) {
            ("regular", Some(d)) => d.parse().map(InstanceKind::Regular).map_err(|_| bad()),
            ("gnm", Some(x)) => density(x).map(InstanceKind::Gnm),
            ("bipartite", Some(x)) => density(x).map(InstanceKind::Bipartite),
            ("dimacs", Some(p)) if !p.is_empty() => Ok(InstanceKind::Dimacs(PathBuf::from(p))),
            ("petersen", None) => Ok(InstanceKind::Petersen),
            ("complete", None) => Ok(InstanceKind::Complete),
            ("rook", None) => Ok(InstanceKind::Rook),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InstanceSpec {
    pub kind: InstanceKind,
    pub n: usize,
    pub seed: u64,
}

impl InstanceSpec {
    /// `kind n`, the label a spec is reported under.
    pub fn label(&self) -> String {
        format!("{} {}", self.kind, self.n)
    }

    /// Checks the size constraints of the kind.
    pub fn validate(&self) -> Result<(), InstanceError> {
        let n = self.n;
        let max_edges = n * n.saturating_sub(1) / 2;
        match &self.kind {
            InstanceKind::Regular(d) => {
                if !(n * d).is_multiple_of(2) {
                    return Err(InstanceError::Infeasible(format!("n·Δ = {n}·{d} is odd")));
                }
                if *d >= n && !(n == 0 && *d == 0) {
                    return Err(InstanceError::Infeasible(format!("degree {d} needs more than {n} vertices")));
                }
            }
            InstanceKind::Gnm(x) => {
                let m = (x * n as f64).floor() as usize;
                if m > max_edges {
                    return Err(InstanceError::Infeasible(format!("{m} edges exceed n(n−1)/2 = {max_edges}")));
                }
            }
            InstanceKind::Bipartite(x) => {
                let m = (x * n as f64).floor() as usize;
                let cap = (n / 2) * (n - n / 2);
                if m > cap {
                    return Err(InstanceError::Infeasible(format!("{m} edges exceed the {cap} available pairs")));
                }
            }
            InstanceKind::Petersen | InstanceKind::Complete | InstanceKind::Rook | InstanceKind::Dimacs(_) => {}
        }
        Ok(())
    }
}

impl FromStr for InstanceSpec {
    type Err = InstanceError;

    /// Parses `kind n seed`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || InstanceError::BadSpec(s.to_string());
        let fields: Vec<&str> = s.split_whitespace().collect();
        let [kind, n, seed] = fields[..] else {
            return Err(bad());
        };
        Ok(InstanceSpec {
            kind: kind.parse()?,
            n: n.parse().map_err(|_| bad())?,
            seed: seed.parse().map_err(|_| bad())?,
        })
    }
}

/// Reads a spec file: one `kind n seed` per line, `#` starts a comment.
pub fn parse_spec_file(text: &str) -> Result<Vec<InstanceSpec>, InstanceError> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::parse)
        .collect()
}

pub fn generate_instance(spec: &InstanceSpec) -> Result<SimpleGraph, InstanceError> {
    spec.validate()?;
    let n = spec.n;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let graph = match &spec.kind {
        InstanceKind::Regular(d) => random_regular(n, *d, &mut rng)?,
        InstanceKind::Gnm(x) => {
            let m = (x * n as f64).floor() as usize;
            let edges = sample_pairs(m, &mut rng, |rng| {
                let u = rng.gen_range(0..n);
                let v = rng.gen_range(0..n);
                (u != v).then(|| (u.min(v), u.max(v)))
            });
            SimpleGraph::new(n, edges).expect("sampled edges are simple")
        }
        InstanceKind::Bipartite(x) => {
            let m = (x * n as f64).floor() as usize;
            let left = n / 2;
            let edges = sample_pairs(m, &mut rng, |rng| Some((rng.gen_range(0..left), rng.gen_range(left..n))));
            SimpleGraph::new(n, edges).expect("sampled edges are simple")
        }
        InstanceKind::Petersen => families::petersen(),
        InstanceKind::Complete => families::complete(n),
        InstanceKind::Rook => families::rook(n),
        InstanceKind::Dimacs(path) => {
            let file = File::open(path).map_err(ParseError::Io)?;
            parse_dimacs(BufReader::new(file))?.graph
        }
    };
    Ok(graph)
}

/// Distinct pairs drawn by rejection, in draw order.
fn sample_pairs(
    m: usize,
    rng: &mut ChaCha8Rng,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> Option<(VertexId, VertexId)>,
) -> Vec<(VertexId, VertexId)> {
    let mut seen = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        if let Some(p) = draw(rng) {
            if seen.insert(p) {
                edges.push(p);
            }
        }
    }
    edges
}

/// Random `d`-regular simple graph by the pairing model, re-pairing only
/// the stubs whose pairs were rejected.
pub fn random_regular(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Result<SimpleGraph, InstanceError> {
    if !(n * d).is_multiple_of(2) || (d >= n && d > 0) {
        return Err(InstanceError::Infeasible(format!("no {d}-regular graph on {n} vertices")));
    }
    for _ in 0..REGULAR_RETRIES {
        if let Some(mut edges) = try_pairing(n, d, rng) {
            edges.sort_unstable();
            return Ok(SimpleGraph::new(n, edges).expect("pairing yields a simple graph"));
        }
    }
    Err(InstanceError::RetriesExhausted {
        n,
        degree: d,
        attempts: REGULAR_RETRIES,
    })
}

fn try_pairing(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(VertexId, VertexId)>> {
    let mut edges: HashSet<(VertexId, VertexId)> = HashSet::with_capacity(n * d / 2);
    let mut stubs: Vec<VertexId> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    while !stubs.is_empty() {
        let mut leftover: HashMap<VertexId, usize> = HashMap::new();
        stubs.shuffle(rng);
        for pair in stubs.chunks_exact(2) {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if a != b && edges.insert((a, b)) {
                continue;
            }
            *leftover.entry(a).or_default() += 1;
            *leftover.entry(b).or_default() += 1;
        }
        if !suitable(&edges, &leftover) {
            return None;
        }
        let mut nodes: Vec<VertexId> = leftover.keys().copied().collect();
        nodes.sort_unstable();
        stubs = nodes.into_iter().flat_map(|v| std::iter::repeat_n(v, leftover[&v])).collect();
    }
    Some(edges.into_iter().collect())
}

/// True if some two leftover vertices could still be joined.
fn suitable(edges: &HashSet<(VertexId, VertexId)>, leftover: &HashMap<VertexId, usize>) -> bool {
    if leftover.is_empty() {
        return true;
    }
    let mut nodes: Vec<VertexId> = leftover.keys().copied().collect();
    nodes.sort_unstable();
    nodes
        .iter()
        .enumerate()
        .any(|(i, &a)| nodes[i + 1..].iter().any(|&b| !edges.contains(&(a, b))))
}
