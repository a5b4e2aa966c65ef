//! Directional walks: one-step moves of a tagged variable onto an
//! arbitrary neighbouring edge, with the preparatory color inversion the
//! move needs, plus deflection when a move is blocked.
//!
//! Naming used throughout: the tagged variable `e1` runs from its tail
//! `v0` to the front vertex `v1`, with link colors α at `v0` and β at
//! `v1`. The next edge `e2` runs from `v1` to `v2` with colors γ at `v1`
//! and δ at `v2`. The move itself is always the exchange of `e1` and `e2`
//! at `v1`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::color::Color;
use crate::config::Configuration;
use crate::error::ColoringError;
use crate::graph::{EdgeId, Link, VertexId};
use crate::kempe::{
    exchange, exchange_with_dontcare, flip_links, invert_path, trace_max_path, walk_variable, ColorPair, KempePath,
    WalkKind, WalkOutcome,
};
use crate::trace::{Op, TraceEvent};
use crate::tree::SpanningTree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DwCase {
    /// γ = α or δ = β: the plain exchange is already effective.
    KempeReducible,
    /// e2 = (γ,α): invert the (γ,α) path through e2, eliminating e1.
    Dw11,
    /// DW1.1 whose inversions both run into e1. The (α,β) path from v2
    /// reaches e1 first at one of its links; flipping the stretch up to
    /// that link makes e1 constant. No exchange follows.
    Dw11Cut,
    /// e2 = (γ,γ): invert the (γ,α) path through e2, then step forward.
    Dw12,
    /// DW1.2 whose (γ,α) path returns to v0 on the v2 side: exchange along
    /// the interior chain from v2 to v0, then step forward.
    Dw12Chain,
    /// α-type inversion of the (γ,α) path at v1.
    Dw21,
    /// β-type inversion of the (δ,β) path at v2.
    Dw22,
    /// DW1.2 whose (γ,α) path reaches e1's tail on the v1 side.
    BlockedDw12,
    /// Both DW2 inversions would also recolor e1.
    BlockedDw2,
}

impl DwCase {
    pub fn is_blocked(self) -> bool {
        matches!(self, DwCase::BlockedDw12 | DwCase::BlockedDw2)
    }

    pub fn name(self) -> &'static str {
        match self {
            DwCase::KempeReducible => "kempe",
            DwCase::Dw11 => "dw1.1",
            DwCase::Dw11Cut => "dw1.1-cut",
            DwCase::Dw12 => "dw1.2",
            DwCase::Dw12Chain => "dw1.2-chain",
            DwCase::Dw21 => "dw2.1",
            DwCase::Dw22 => "dw2.2",
            DwCase::BlockedDw12 => "blocked-dw1.2",
            DwCase::BlockedDw2 => "blocked-dw2",
        }
    }
}

/// The color inversion a move performs before its exchange.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inversion {
    /// A whole maximal path.
    Path(KempePath),
    /// A contiguous stretch of a maximal path, from a link of e2 to a link
    /// of e1.
    Segment { pair: ColorPair, links: Vec<Link> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DwClassification {
    pub tagged: EdgeId,
    pub next: EdgeId,
    pub front: VertexId,
    pub case: DwCase,
    pub inversion: Option<Inversion>,
}

/// Classifies the move of the variable `tagged` onto the adjacent edge
/// `next`, through their shared vertex.
pub fn classify_move(config: &Configuration<'_>, tagged: EdgeId, next: EdgeId) -> Result<DwClassification, ColoringError> {
    let graph = config.graph();
    if !config.is_variable(tagged) {
        return Err(ColoringError::NotVariable(tagged));
    }
    let front = graph.common_vertex(tagged, next).ok_or(ColoringError::NotAdjacent(tagged, next))?;
    let v0 = graph.opposite(tagged, front);
    let v2 = graph.opposite(next, front);
    let tail = Link::new(tagged, v0);
    let head = Link::new(tagged, front);
    let near = Link::new(next, front);
    let far = Link::new(next, v2);
    let alpha = config.link_color(tail);
    let beta = config.link_color(head);
    let gamma = config.link_color(near);
    let delta = config.link_color(far);

    let done = |case, inversion| {
        Ok(DwClassification {
            tagged,
            next,
            front,
            case,
            inversion,
        })
    };
    if gamma == alpha || delta == beta {
        return done(DwCase::KempeReducible, None);
    }
    let touches_tagged = |p: &KempePath| p.contains_link(tail) || p.contains_link(head);

    let alpha_path = trace_max_path(config, near, ColorPair::new(gamma, alpha));
    if delta == alpha {
        if !touches_tagged(&alpha_path) {
            return done(DwCase::Dw11, Some(Inversion::Path(alpha_path)));
        }
        let pair = ColorPair::new(alpha, beta);
        let beta_path = trace_max_path(config, far, pair);
        if !touches_tagged(&beta_path) {
            return done(DwCase::Dw22, Some(Inversion::Path(beta_path)));
        }
        // near is not an (α,β) link, so far is an end of this path
        let links = if beta_path.links[0] == far {
            let stop = beta_path.links.iter().position(|&l| l == tail || l == head).expect("path touches e1");
            beta_path.links[..=stop].to_vec()
        } else {
            let stop = beta_path.links.iter().rposition(|&l| l == tail || l == head).expect("path touches e1");
            beta_path.links[stop..].to_vec()
        };
        return done(DwCase::Dw11Cut, Some(Inversion::Segment { pair, links }));
    }
    if delta == gamma {
        if !touches_tagged(&alpha_path) {
            return done(DwCase::Dw12, Some(Inversion::Path(alpha_path)));
        }
        // The path ends in e1's tail link, so that link is one of its ends.
        let path = alpha_path;
        let pos = |l: Link| path.links.iter().position(|&x| x == l).expect("e2 lies on its own path");
        let (i_near, i_far) = (pos(near), pos(far));
        let links = if path.links[0] == tail {
            (i_far < i_near).then(|| path.links[..=i_far].to_vec())
        } else {
            (i_far > i_near).then(|| path.links[i_far..].to_vec())
        };
        return match links {
            Some(links) => done(DwCase::Dw12Chain, Some(Inversion::Segment { pair: path.pair, links })),
            None => done(DwCase::BlockedDw12, None),
        };
    }

    if !touches_tagged(&alpha_path) {
        return done(DwCase::Dw21, Some(Inversion::Path(alpha_path)));
    }
    let beta_type = trace_max_path(config, far, ColorPair::new(delta, beta));
    if !touches_tagged(&beta_type) {
        return done(DwCase::Dw22, Some(Inversion::Path(beta_type)));
    }
    done(DwCase::BlockedDw2, None)
}

/// Performs a classified move: the inversion, if any, then the exchange
/// at the front vertex.
pub fn apply_move(config: &mut Configuration<'_>, classification: &DwClassification) -> Result<WalkOutcome, ColoringError> {
    if classification.case.is_blocked() {
        return Err(ColoringError::Blocked);
    }
    let current = classify_move(config, classification.tagged, classification.next)?;
    if current != *classification {
        return Err(ColoringError::StaleClassification);
    }
    let before = config.variable_count();
    match &classification.inversion {
        None => {}
        Some(Inversion::Path(path)) => invert_path(config, path)?,
        Some(Inversion::Segment { pair, links }) => {
            flip_links(config, links, *pair, Op::Chain);
            config.counters.inversions += 1;
        }
    }
    if classification.case != DwCase::Dw11Cut {
        exchange(config, classification.front, classification.tagged, classification.next)?;
    }
    let after = config.variable_count();
    debug_assert!(after <= before, "{:?} increased the variable count", classification.case);
    let moved_variable = if config.is_variable(classification.next) && !config.is_variable(classification.tagged) {
        Some(classification.next)
    } else if config.is_variable(classification.tagged) {
        Some(classification.tagged)
    } else {
        None
    };
    let kind = match before.saturating_sub(after) {
        0 => WalkKind::Stepped,
        1 => WalkKind::EliminatedOne,
        _ => WalkKind::EliminatedTwo,
    };
    Ok(WalkOutcome {
        kind,
        moved_variable,
        steps_taken: 1,
    })
}

/// What picks the next edge of a directional walk.
#[derive(Clone, Copy, Debug)]
pub enum Guide<'t> {
    /// Head for the root of the spanning tree.
    Tree(&'t SpanningTree),
    /// Uniform choice of front endpoint and next edge.
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    /// The number of variables containing the walk color went down.
    Eliminated,
    /// The tagged variable now sits on this edge.
    Moved(EdgeId),
    /// No variable containing the walk color is left at the walker's
    /// position, though the color's variable count did not drop.
    Released,
}

/// A slot at the walk front that the tagged variable can move onto: a
/// real edge, or the don't-care edge standing in for a color missing there.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Candidate {
    Edge { next: EdgeId },
    DontCare { front: VertexId, color: Color },
}

/// One move of a tagged variable containing `color`, deflecting to fresh
/// neighbouring slots while the preferred move is blocked, followed by a
/// Kempe walk from the new position.
pub fn walk_to_next_step<R: Rng + ?Sized>(
    config: &mut Configuration<'_>,
    tagged: EdgeId,
    guide: Guide<'_>,
    color: Color,
    rng: &mut R,
) -> Result<StepOutcome, ColoringError> {
    let cc = config.complex_color(tagged);
    if !cc.is_variable() {
        return Err(ColoringError::NotVariable(tagged));
    }
    if !cc.contains(color) {
        let (lo, _) = config.graph().endpoints(tagged);
        return Err(ColoringError::ColorNotOnLink { edge: tagged, vertex: lo, color });
    }
    config.counters.steps += 1;
    let baseline = (config.variable_count(), config.color_variable_count(color));
    let dropped = |config: &Configuration<'_>| {
        config.variable_count() < baseline.0 && config.color_variable_count(color) < baseline.1
    };

    let preferred = preferred_move(config, tagged, guide, rng);
    let mut outcome = try_candidate(config, tagged, preferred)?;
    if outcome.is_none() {
        let mut fresh = all_candidates(config, tagged);
        fresh.retain(|&c| c != preferred);
        fresh.shuffle(rng);
        let limit = 2 * config.palette();
        for (tries, cand) in fresh.into_iter().enumerate() {
            assert!(tries < limit, "deflection exceeded {limit} candidates");
            config.counters.deflections += 1;
            if let Candidate::Edge { next } = cand {
                config.emit(TraceEvent::Deflected { tagged, next });
            }
            outcome = try_candidate(config, tagged, cand)?;
            if outcome.is_some() {
                break;
            }
        }
    }
    let moved = outcome.expect("the tail-color link at either end always admits a move");

    if dropped(config) {
        return Ok(eliminated(config, color));
    }
    let holds = |config: &Configuration<'_>, e: EdgeId| {
        let c = config.complex_color(e);
        c.is_variable() && c.contains(color)
    };
    let position = [moved.moved_variable, Some(tagged)]
        .into_iter()
        .flatten()
        .find(|&e| holds(config, e));
    let Some(position) = position else {
        return Ok(StepOutcome::Released);
    };
    match walk_variable(config, position) {
        None => Ok(StepOutcome::Moved(position)),
        Some(_) if dropped(config) => Ok(eliminated(config, color)),
        Some(walk) => match walk.target.filter(|&t| holds(config, t)) {
            Some(t) => Ok(StepOutcome::Moved(t)),
            None if holds(config, position) => Ok(StepOutcome::Moved(position)),
            None => Ok(StepOutcome::Released),
        },
    }
}

fn eliminated(config: &mut Configuration<'_>, color: Color) -> StepOutcome {
    let remaining = config.color_variable_count(color);
    config.emit(TraceEvent::Eliminated { color, remaining });
    StepOutcome::Eliminated
}

/// Runs a candidate move if it is not blocked.
fn try_candidate(config: &mut Configuration<'_>, tagged: EdgeId, cand: Candidate) -> Result<Option<WalkOutcome>, ColoringError> {
    match cand {
        Candidate::DontCare { front, color } => {
            let tail_color = config.link_color(Link::new(tagged, config.graph().opposite(tagged, front)));
            exchange_with_dontcare(config, front, tagged, color)?;
            let (kind, moved_variable) = if color == tail_color {
                (WalkKind::EliminatedOne, None)
            } else {
                (WalkKind::Stepped, Some(tagged))
            };
            Ok(Some(WalkOutcome {
                kind,
                moved_variable,
                steps_taken: 1,
            }))
        }
        Candidate::Edge { next } => {
            let class = classify_move(config, tagged, next)?;
            config.emit(TraceEvent::Classified { tagged, next, case: class.case });
            if class.case.is_blocked() {
                return Ok(None);
            }
            apply_move(config, &class).map(Some)
        }
    }
}

fn tail_color(config: &Configuration<'_>, tagged: EdgeId, front: VertexId) -> Color {
    config.link_color(Link::new(tagged, config.graph().opposite(tagged, front)))
}

/// The KW4 move at `front` if the tail color is absent there.
fn kw4_at(config: &Configuration<'_>, tagged: EdgeId, front: VertexId) -> Option<Candidate> {
    let color = tail_color(config, tagged, front);
    config.edge_at(front, color).is_none().then_some(Candidate::DontCare { front, color })
}

/// Every slot at `front` other than the tagged edge itself.
fn slots(config: &Configuration<'_>, tagged: EdgeId, front: VertexId) -> Vec<Candidate> {
    let mut out: Vec<Candidate> = config
        .graph()
        .incident(front)
        .iter()
        .filter(|&&e| e != tagged)
        .map(|&next| Candidate::Edge { next })
        .collect();
    out.extend(config.dont_cares(front).into_iter().map(|d| Candidate::DontCare {
        front,
        color: d.color,
    }));
    out
}

fn preferred_move<R: Rng + ?Sized>(config: &Configuration<'_>, tagged: EdgeId, guide: Guide<'_>, rng: &mut R) -> Candidate {
    let graph = config.graph();
    let (lo, hi) = graph.endpoints(tagged);
    let front = match guide {
        Guide::Tree(tree) => {
            if tree.depth[hi] < tree.depth[lo] {
                hi
            } else {
                lo
            }
        }
        Guide::Random => {
            if rng.gen_bool(0.5) {
                lo
            } else {
                hi
            }
        }
    };
    if let Some(c) = kw4_at(config, tagged, front) {
        return c;
    }
    let choice = match guide {
        Guide::Tree(tree) => match tree.parent[front] {
            Some(p) if p != tagged => Some(Candidate::Edge { next: p }),
            // at the root every other slot is equally close
            _ => slots(config, tagged, front).choose(rng).copied(),
        },
        Guide::Random => slots(config, tagged, front).choose(rng).copied(),
    };
    choice
        .or_else(|| slots(config, tagged, graph.opposite(tagged, front)).choose(rng).copied())
        .expect("a variable edge has a free slot at one of its ends")
}

fn all_candidates(config: &Configuration<'_>, tagged: EdgeId) -> Vec<Candidate> {
    let (lo, hi) = config.graph().endpoints(tagged);
    let mut out = slots(config, tagged, lo);
    out.extend(slots(config, tagged, hi));
    out
}
