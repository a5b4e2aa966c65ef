//! Two-color machinery: exchanges, maximal (α,β) paths, color inversion,
//! Kempe walks and the walk-on-Kempe-path elimination loop.

use std::collections::HashSet;

use crate::color::Color;
use crate::config::{variables, Configuration};
use crate::error::ColoringError;
use crate::graph::{EdgeId, Link, VertexId};
use crate::trace::Op;

/// Unordered pair of distinct colors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ColorPair(pub Color, pub Color);

impl ColorPair {
    pub fn new(a: Color, b: Color) -> Self {
        debug_assert_ne!(a, b, "a color pair needs two distinct colors");
        ColorPair(a, b)
    }

    pub fn contains(self, c: Color) -> bool {
        self.0 == c || self.1 == c
    }

    /// The other color of the pair. `c` must belong to the pair.
    pub fn partner(self, c: Color) -> Color {
        if c == self.0 {
            self.1
        } else {
            debug_assert_eq!(c, self.1);
            self.0
        }
    }
}

/// Where an open maximal path stops.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathEnd {
    /// At the midpoint of `edge`: its other link is colored outside the pair.
    Midpoint { edge: EdgeId },
    /// At a real vertex that has no link of the partner color.
    Vertex { vertex: VertexId },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathKind {
    Cycle,
    /// `head` is the end at `links[0]`, `tail` the end at the last link.
    Open { head: PathEnd, tail: PathEnd },
}

/// A maximal two-colored sequence of links. Consecutive links share either
/// an edge midpoint or a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KempePath {
    pub pair: ColorPair,
    pub links: Vec<Link>,
    pub kind: PathKind,
}

impl KempePath {
    pub fn is_cycle(&self) -> bool {
        self.kind == PathKind::Cycle
    }

    pub fn contains_link(&self, link: Link) -> bool {
        self.links.contains(&link)
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.links.iter().any(|l| l.edge == e)
    }

    /// Edges with both links on the path, in path order.
    pub fn full_edges(&self) -> Vec<EdgeId> {
        let mut once = HashSet::new();
        let mut out = Vec::new();
        for l in &self.links {
            if !once.insert(l.edge) {
                out.push(l.edge);
            }
        }
        out
    }

    /// Number of edges of a cycle, or of fully covered edges of an open path.
    pub fn edge_length(&self) -> usize {
        self.full_edges().len()
    }

    /// (α,β)-variables lying on the path.
    pub fn variables(&self, config: &Configuration<'_>) -> Vec<EdgeId> {
        self.full_edges().into_iter().filter(|&e| config.is_variable(e)).collect()
    }

    /// Vertices where consecutive links meet.
    pub fn interior_chain(&self) -> Vec<VertexId> {
        let mut chain: Vec<VertexId> = self
            .links
            .windows(2)
            .filter(|w| w[0].edge != w[1].edge)
            .map(|w| w[0].endpoint)
            .collect();
        if self.is_cycle() {
            if let (Some(first), Some(last)) = (self.links.first(), self.links.last()) {
                if first.edge != last.edge {
                    chain.push(first.endpoint);
                }
            }
        }
        chain
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Junction {
    Vertex,
    Midpoint,
}

enum Stop {
    Returned,
    End(PathEnd),
}

/// Follows the two-colored sequence from `start` until it stops or comes
/// back to `start`. The links after `start` are appended to `out`.
fn extend(config: &Configuration<'_>, start: Link, pair: ColorPair, first: Junction, out: &mut Vec<Link>) -> Stop {
    let graph = config.graph();
    let mut cur = start;
    let mut via = first;
    let limit = 2 * graph.edge_count() + 2;
    for _ in 0..limit {
        let next = match via {
            Junction::Vertex => {
                let want = pair.partner(config.link_color(cur));
                match config.edge_at(cur.endpoint, want) {
                    Some(f) => Link::new(f, cur.endpoint),
                    None => return Stop::End(PathEnd::Vertex { vertex: cur.endpoint }),
                }
            }
            Junction::Midpoint => {
                let twin = cur.twin(graph);
                if pair.contains(config.link_color(twin)) {
                    twin
                } else {
                    return Stop::End(PathEnd::Midpoint { edge: cur.edge });
                }
            }
        };
        if next == start {
            return Stop::Returned;
        }
        out.push(next);
        cur = next;
        via = match via {
            Junction::Vertex => Junction::Midpoint,
            Junction::Midpoint => Junction::Vertex,
        };
    }
    panic!("two-colored path exceeded {limit} links; configuration is inconsistent");
}

/// Traces the unique maximal `pair`-colored path through `start_link`.
///
/// A cycle is listed from the start link, through its vertex first. An
/// open path is listed end to end, starting from the smaller end link, so
/// it does not depend on the start link.
pub fn trace_max_path(config: &Configuration<'_>, start_link: Link, pair: ColorPair) -> KempePath {
    debug_assert!(pair.contains(config.link_color(start_link)), "start link must carry a pair color");
    let mut forward = vec![start_link];
    match extend(config, start_link, pair, Junction::Vertex, &mut forward) {
        Stop::Returned => KempePath {
            pair,
            links: forward,
            kind: PathKind::Cycle,
        },
        Stop::End(tail) => {
            let mut backward = Vec::new();
            let head = match extend(config, start_link, pair, Junction::Midpoint, &mut backward) {
                Stop::End(end) => end,
                Stop::Returned => unreachable!("an open path cannot close in one direction"),
            };
            backward.reverse();
            backward.extend(forward);
            let (mut head, mut tail) = (head, tail);
            if backward.last() < backward.first() {
                backward.reverse();
                std::mem::swap(&mut head, &mut tail);
            }
            KempePath {
                pair,
                links: backward,
                kind: PathKind::Open { head, tail },
            }
        }
    }
}

/// Swaps the colors of the links of `edge_a` and `edge_b` at `v`.
pub fn exchange(config: &mut Configuration<'_>, v: VertexId, edge_a: EdgeId, edge_b: EdgeId) -> Result<(), ColoringError> {
    let graph = config.graph();
    if edge_a == edge_b {
        return Err(ColoringError::SameEdge(edge_a));
    }
    for e in [edge_a, edge_b] {
        if !graph.is_incident(e, v) {
            return Err(ColoringError::NotIncident { edge: e, vertex: v });
        }
    }
    let la = Link::new(edge_a, v);
    let lb = Link::new(edge_b, v);
    let ca = config.link_color(la);
    let cb = config.link_color(lb);
    config.begin_op(Op::Exchange);
    config.set_link(la, cb);
    config.set_link(lb, ca);
    config.end_op();
    config.counters.exchanges += 1;
    config.debug_check();
    Ok(())
}

/// Exchange against a don't-care edge: recolors the `v` side of `edge_a`
/// to `color`, which must be absent at `v`.
pub fn exchange_with_dontcare(
    config: &mut Configuration<'_>,
    v: VertexId,
    edge_a: EdgeId,
    color: Color,
) -> Result<(), ColoringError> {
    if !config.graph().is_incident(edge_a, v) {
        return Err(ColoringError::NotIncident { edge: edge_a, vertex: v });
    }
    if color.index() >= config.palette() {
        return Err(ColoringError::ColorOutOfRange(color));
    }
    if config.edge_at(v, color).is_some() {
        return Err(ColoringError::ColorPresent { vertex: v, color });
    }
    config.begin_op(Op::DontCare);
    config.set_link(Link::new(edge_a, v), color);
    config.end_op();
    config.counters.exchanges += 1;
    config.debug_check();
    Ok(())
}

/// Swaps the two pair colors on every link of a maximal path. The path is
/// re-traced first and rejected if the configuration has moved on.
pub fn invert_path(config: &mut Configuration<'_>, path: &KempePath) -> Result<(), ColoringError> {
    let Some(&start) = path.links.first() else {
        return Err(ColoringError::StalePath);
    };
    if !path.pair.contains(config.link_color(start)) || trace_max_path(config, start, path.pair) != *path {
        return Err(ColoringError::StalePath);
    }
    flip_links(config, &path.links, path.pair, Op::Invert);
    config.counters.inversions += 1;
    Ok(())
}

/// Swaps pair colors on a set of links. Consistency holds afterwards when
/// every vertex junction inside the set has both of its links in the set.
pub(crate) fn flip_links(config: &mut Configuration<'_>, links: &[Link], pair: ColorPair, op: Op) {
    config.begin_op(op);
    for &l in links {
        let c = config.link_color(l);
        config.set_link(l, pair.partner(c));
    }
    config.end_op();
    config.debug_check();
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalkKind {
    EliminatedTwo,
    EliminatedOne,
    Stepped,
    ClosedCycle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkOutcome {
    pub kind: WalkKind,
    /// Edge now carrying the walking variable, when it survived the move.
    pub moved_variable: Option<EdgeId>,
    pub steps_taken: usize,
}

/// One Kempe move of the variable `variable` through its endpoint `front`.
///
/// With `variable = (α at the tail, β at front)`, the link of color α at
/// `front` is exchanged with the variable's β link. Returns a closed-cycle
/// outcome without touching the configuration when the variable is the
/// only variable of its (α,β) cycle.
pub fn kempe_step(config: &mut Configuration<'_>, variable: EdgeId, front: VertexId) -> Result<WalkOutcome, ColoringError> {
    let graph = config.graph();
    if !graph.is_incident(variable, front) {
        return Err(ColoringError::NotIncident { edge: variable, vertex: front });
    }
    if !config.is_variable(variable) {
        return Err(ColoringError::NotVariable(variable));
    }
    let head = Link::new(variable, front);
    let tail_color = config.link_color(head.twin(graph));
    let pair = ColorPair::new(config.link_color(head), tail_color);
    let path = trace_max_path(config, head, pair);
    if path.is_cycle() && path.variables(config).len() == 1 {
        return Ok(WalkOutcome {
            kind: WalkKind::ClosedCycle,
            moved_variable: None,
            steps_taken: 0,
        });
    }
    Ok(step_unchecked(config, variable, front))
}

fn step_unchecked(config: &mut Configuration<'_>, variable: EdgeId, front: VertexId) -> WalkOutcome {
    let graph = config.graph();
    let head = Link::new(variable, front);
    let head_color = config.link_color(head);
    let tail_color = config.link_color(head.twin(graph));
    let Some(next) = config.edge_at(front, tail_color) else {
        exchange_with_dontcare(config, front, variable, tail_color).expect("tail color is absent at front");
        return WalkOutcome {
            kind: WalkKind::EliminatedOne,
            moved_variable: None,
            steps_taken: 1,
        };
    };
    let far = config.link_color(Link::new(next, graph.opposite(next, front)));
    exchange(config, front, variable, next).expect("adjacent distinct edges");
    let (kind, moved_variable) = if far == head_color {
        (WalkKind::EliminatedTwo, None)
    } else if far == tail_color {
        (WalkKind::Stepped, Some(next))
    } else {
        (WalkKind::EliminatedOne, None)
    };
    WalkOutcome {
        kind,
        moved_variable,
        steps_taken: 1,
    }
}

/// Result of a successful Kempe walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KempeWalk {
    pub kind: WalkKind,
    /// The edge the walk ran into: another (α,β)-variable, or the edge at
    /// a midpoint end. `None` when it ended at a degenerate vertex.
    pub target: Option<EdgeId>,
    pub exchanges: usize,
}

/// Walks `variable` along its (α,β) path, starting from its lower
/// endpoint, until it meets another variable or a degenerate vertex, and
/// performs the interior-chain exchanges. Returns `None`, leaving the
/// configuration untouched, when the path closes into a cycle first.
pub fn walk_variable(config: &mut Configuration<'_>, variable: EdgeId) -> Option<KempeWalk> {
    if !config.is_variable(variable) {
        return None;
    }
    config.counters.walks += 1;
    let graph = config.graph();
    let (lo, hi) = graph.endpoints(variable);
    let start = Link::new(variable, lo);
    let closing = Link::new(variable, hi);
    let pair = ColorPair::new(config.link_color(start), config.link_color(closing));

    let mut segment = vec![start];
    let mut cur = start;
    let mut junctions = 0;
    let limit = graph.edge_count() + 1;
    let (kind, target) = 'search: {
        for _ in 0..limit {
            let v = cur.endpoint;
            let want = pair.partner(config.link_color(cur));
            let Some(f) = config.edge_at(v, want) else {
                junctions += 1;
                break 'search (WalkKind::EliminatedOne, None);
            };
            let near = Link::new(f, v);
            if near == closing {
                return None;
            }
            junctions += 1;
            segment.push(near);
            let far = near.twin(graph);
            let far_color = config.link_color(far);
            if !pair.contains(far_color) {
                break 'search (WalkKind::EliminatedOne, Some(f));
            }
            if far_color != want {
                break 'search (WalkKind::EliminatedTwo, Some(f));
            }
            segment.push(far);
            cur = far;
        }
        panic!("Kempe walk exceeded {limit} edges; configuration is inconsistent");
    };
    flip_links(config, &segment, pair, Op::Walk);
    config.counters.exchanges += junctions as u64;
    Some(KempeWalk {
        kind,
        target,
        exchanges: junctions,
    })
}

/// True iff the walk eliminated at least one variable.
pub fn variable_walk(config: &mut Configuration<'_>, variable: EdgeId) -> bool {
    walk_variable(config, variable).is_some()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WkpOutcome {
    Proper,
    /// Variables that no single-variable Kempe walk can remove.
    Canonical(Vec<EdgeId>),
}

/// Runs variable walks over the ascending variable list, restarting from
/// the head after every elimination, until no variables remain or none of
/// them can walk.
pub fn wkp(config: &mut Configuration<'_>) -> WkpOutcome {
    wkp_restricted(config, |_| true)
}

/// WKP over the variables accepted by `keep`.
pub(crate) fn wkp_restricted(config: &mut Configuration<'_>, keep: impl Fn(EdgeId) -> bool) -> WkpOutcome {
    let mut stuck = StuckCache::new(config.graph().edge_count());
    loop {
        let list: Vec<EdgeId> = variables(config).into_iter().filter(|&e| keep(e)).collect();
        if list.is_empty() {
            return WkpOutcome::Proper;
        }
        let mut progressed = false;
        for &e in &list {
            if stuck.still_stuck(config, e) {
                continue;
            }
            if variable_walk(config, e) {
                progressed = true;
                break;
            }
            stuck.record(config, e);
        }
        if !progressed {
            return WkpOutcome::Canonical(list);
        }
    }
}

/// Remembers variables whose walk closed into a cycle. Such a walk only
/// reads the links of that cycle, so it keeps failing until one of them
/// is rewritten; the check compares link colors instead of re-tracing.
struct StuckCache {
    cycles: Vec<Option<Vec<(Link, Color)>>>,
}

impl StuckCache {
    fn new(m: usize) -> Self {
        StuckCache { cycles: vec![None; m] }
    }

    fn record(&mut self, config: &Configuration<'_>, e: EdgeId) {
        let graph = config.graph();
        let (lo, hi) = graph.endpoints(e);
        let start = Link::new(e, lo);
        let pair = ColorPair::new(config.link_color(start), config.link_color(Link::new(e, hi)));
        let path = trace_max_path(config, start, pair);
        debug_assert!(path.is_cycle());
        self.cycles[e] = Some(path.links.iter().map(|&l| (l, config.link_color(l))).collect());
    }

    fn still_stuck(&mut self, config: &Configuration<'_>, e: EdgeId) -> bool {
        let Some(snapshot) = &self.cycles[e] else { return false };
        if snapshot.iter().all(|&(l, c)| config.link_color(l) == c) {
            true
        } else {
            self.cycles[e] = None;
            false
        }
    }
}
