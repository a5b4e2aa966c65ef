//! Link colorings ("configurations") and the independent verifier.

use std::collections::HashSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::color::{Color, ComplexColor};
use crate::error::ColoringError;
use crate::graph::{EdgeId, Link, SimpleGraph, VertexId};
use crate::trace::{Op, TraceEvent, Tracer};

const EMPTY: u32 = u32::MAX;

/// Operation counters accumulated while a configuration is being solved.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    pub walks: u64,
    pub steps: u64,
    pub exchanges: u64,
    pub inversions: u64,
    pub deflections: u64,
    pub eliminated: u64,
}

/// A color missing at a vertex of degree below the palette size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DontCare {
    pub vertex: VertexId,
    pub color: Color,
}

/// A color assignment for every link of a graph.
///
/// The configuration keeps a `(vertex, color) -> edge` index so that Kempe
/// paths can be followed in constant time per link, plus cached variable
/// counts. The index is only meaningful while the configuration is
/// consistent; [`is_consistent`] and [`is_proper`] never read it.
pub struct Configuration<'g> {
    graph: &'g SimpleGraph,
    palette: usize,
    links: Vec<[Color; 2]>,
    slots: Vec<u32>,
    variable_count: usize,
    color_variables: Vec<usize>,
    pub(crate) counters: Counters,
    tracer: Option<Tracer>,
    op: Option<Op>,
    touched: Vec<(EdgeId, ComplexColor)>,
    touched_set: HashSet<EdgeId>,
}

impl<'g> Configuration<'g> {
    /// Builds a configuration from per-edge complex colors (lower endpoint
    /// first). Only palette bounds are checked; the result may be
    /// inconsistent.
    pub fn from_complex_colors(
        graph: &'g SimpleGraph,
        palette: usize,
        colors: &[ComplexColor],
    ) -> Result<Self, ColoringError> {
        if colors.len() != graph.edge_count() {
            return Err(ColoringError::WrongLength {
                expected: graph.edge_count(),
                got: colors.len(),
            });
        }
        for cc in colors {
            for c in [cc.first, cc.second] {
                if c.index() >= palette {
                    return Err(ColoringError::ColorOutOfRange(c));
                }
            }
        }
        let links = colors.iter().map(|cc| [cc.first, cc.second]).collect();
        Ok(Self::from_links(graph, palette, links))
    }

    /// Builds a configuration in which every edge is the constant given
    /// by `colors[e]`.
    pub fn from_edge_colors(
        graph: &'g SimpleGraph,
        palette: usize,
        colors: &[Color],
    ) -> Result<Self, ColoringError> {
        let complex: Vec<_> = colors.iter().map(|&c| ComplexColor::constant(c)).collect();
        Self::from_complex_colors(graph, palette, &complex)
    }

    fn from_links(graph: &'g SimpleGraph, palette: usize, links: Vec<[Color; 2]>) -> Self {
        let mut slots = vec![EMPTY; graph.vertex_count() * palette];
        let mut variable_count = 0;
        let mut color_variables = vec![0; palette];
        for (e, pair) in links.iter().enumerate() {
            let (u, v) = graph.endpoints(e);
            slots[u * palette + pair[0].index()] = e as u32;
            slots[v * palette + pair[1].index()] = e as u32;
            if pair[0] != pair[1] {
                variable_count += 1;
                color_variables[pair[0].index()] += 1;
                color_variables[pair[1].index()] += 1;
            }
        }
        Configuration {
            graph,
            palette,
            links,
            slots,
            variable_count,
            color_variables,
            counters: Counters::default(),
            tracer: None,
            op: None,
            touched: Vec::new(),
            touched_set: HashSet::new(),
        }
    }

    pub fn graph(&self) -> &'g SimpleGraph {
        self.graph
    }

    /// Palette size K.
    pub fn palette(&self) -> usize {
        self.palette
    }

    pub fn colors(&self) -> impl Iterator<Item = Color> {
        (0..self.palette).map(Color::new)
    }

    pub fn complex_color(&self, e: EdgeId) -> ComplexColor {
        let [a, b] = self.links[e];
        ComplexColor::new(a, b)
    }

    pub fn link_color(&self, link: Link) -> Color {
        self.links[link.edge][self.graph.side(link.edge, link.endpoint)]
    }

    pub fn is_variable(&self, e: EdgeId) -> bool {
        self.complex_color(e).is_variable()
    }

    /// Cached number of variable edges, n_c.
    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    /// Cached number of variables that have `c` among their link colors.
    pub fn color_variable_count(&self, c: Color) -> usize {
        self.color_variables[c.index()]
    }

    /// Edge whose link at `v` has color `c`, assuming consistency.
    pub fn edge_at(&self, v: VertexId, c: Color) -> Option<EdgeId> {
        match self.slots[v * self.palette + c.index()] {
            EMPTY => None,
            e => Some(e as EdgeId),
        }
    }

    /// Colors absent at `v`; non-empty exactly when `degree(v) < K`.
    pub fn dont_cares(&self, v: VertexId) -> Vec<DontCare> {
        self.colors()
            .filter(|&c| self.edge_at(v, c).is_none())
            .map(|color| DontCare { vertex: v, color })
            .collect()
    }

    pub fn counters(&self) -> Counters {
        self.counters
    }

    /// Recounts variables from the link colors, ignoring the cache.
    pub fn recount_variables(&self) -> usize {
        self.links.iter().filter(|p| p[0] != p[1]).count()
    }

    /// Per-edge colors if every edge is constant.
    pub fn edge_colors(&self) -> Option<Vec<Color>> {
        self.links
            .iter()
            .map(|p| (p[0] == p[1]).then_some(p[0]))
            .collect()
    }

    pub fn complex_colors(&self) -> Vec<ComplexColor> {
        (0..self.links.len()).map(|e| self.complex_color(e)).collect()
    }

    pub fn set_tracer(&mut self, tracer: Tracer) {
        self.tracer = Some(tracer);
    }

    pub fn take_tracer(&mut self) -> Option<Tracer> {
        self.tracer.take()
    }

    pub(crate) fn emit(&mut self, event: TraceEvent) {
        if let Some(t) = self.tracer.as_mut() {
            t(&event);
        }
    }

    /// Starts a traced operation; link writes until [`Self::end_op`] are
    /// reported as one recolor event per edge.
    pub(crate) fn begin_op(&mut self, op: Op) {
        if self.tracer.is_some() {
            self.op = Some(op);
        }
    }

    pub(crate) fn end_op(&mut self) {
        let Some(op) = self.op.take() else { return };
        let touched = std::mem::take(&mut self.touched);
        self.touched_set.clear();
        for (edge, before) in touched {
            let after = self.complex_color(edge);
            if after != before {
                self.emit(TraceEvent::Recolor { op, edge, before, after });
            }
        }
    }

    /// Writes one link color and keeps the index and counters in step.
    /// Callers are responsible for restoring consistency by the end of
    /// the batch of writes they perform.
    pub(crate) fn set_link(&mut self, link: Link, c: Color) {
        let e = link.edge;
        let side = self.graph.side(e, link.endpoint);
        let old = self.links[e][side];
        if old == c {
            return;
        }
        let before = self.complex_color(e);
        if self.op.is_some() && self.touched_set.insert(e) {
            self.touched.push((e, before));
        }
        if before.is_variable() {
            self.variable_count -= 1;
            self.color_variables[before.first.index()] -= 1;
            self.color_variables[before.second.index()] -= 1;
        }
        self.links[e][side] = c;
        let v = link.endpoint;
        let old_slot = v * self.palette + old.index();
        if self.slots[old_slot] == e as u32 {
            self.slots[old_slot] = EMPTY;
        }
        self.slots[v * self.palette + c.index()] = e as u32;
        let after = self.complex_color(e);
        if after.is_variable() {
            self.variable_count += 1;
            self.color_variables[after.first.index()] += 1;
            self.color_variables[after.second.index()] += 1;
        }
    }

    /// Debug-build check that the cached counter matches a full rescan.
    pub(crate) fn debug_check(&self) {
        debug_assert_eq!(self.variable_count, self.recount_variables(), "stale variable count");
    }
}

impl Clone for Configuration<'_> {
    /// Clones the coloring and counters; the tracer is not carried over.
    fn clone(&self) -> Self {
        Configuration {
            graph: self.graph,
            palette: self.palette,
            links: self.links.clone(),
            slots: self.slots.clone(),
            variable_count: self.variable_count,
            color_variables: self.color_variables.clone(),
            counters: self.counters,
            tracer: None,
            op: None,
            touched: Vec::new(),
            touched_set: HashSet::new(),
        }
    }
}

impl PartialEq for Configuration<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.graph, other.graph) && self.palette == other.palette && self.links == other.links
    }
}

impl fmt::Debug for Configuration<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Configuration")
            .field("palette", &self.palette)
            .field("variables", &self.variable_count)
            .field("colors", &self.complex_colors().iter().map(|c| c.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

/// A consistent starting configuration: every vertex independently draws
/// a seeded permutation of the palette and hands its first `degree(v)`
/// colors to its links in adjacency order.
pub fn initial_configuration(
    graph: &SimpleGraph,
    palette: usize,
    seed: u64,
) -> Result<Configuration<'_>, ColoringError> {
    if palette < graph.max_degree() {
        return Err(ColoringError::PaletteTooSmall {
            palette,
            max_degree: graph.max_degree(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut links = vec![[Color(0); 2]; graph.edge_count()];
    let mut perm: Vec<Color> = (0..palette).map(Color::new).collect();
    for v in 0..graph.vertex_count() {
        let incident = graph.incident(v);
        let (chosen, _) = perm.partial_shuffle(&mut rng, incident.len());
        for (&e, &c) in incident.iter().zip(chosen.iter()) {
            links[e][graph.side(e, v)] = c;
        }
    }
    Ok(Configuration::from_links(graph, palette, links))
}

/// True iff the links at every vertex carry pairwise distinct colors.
/// Scans link colors directly.
pub fn is_consistent(config: &Configuration<'_>) -> bool {
    let graph = config.graph();
    let mut seen = vec![usize::MAX; config.palette()];
    for v in 0..graph.vertex_count() {
        for &e in graph.incident(v) {
            let c = config.link_color(Link::new(e, v)).index();
            if seen[c] == v {
                return false;
            }
            seen[c] = v;
        }
    }
    true
}

/// The independent verifier: consistent and no variables, recomputed
/// from scratch.
pub fn is_proper(config: &Configuration<'_>) -> bool {
    is_consistent(config) && config.recount_variables() == 0
}

/// Variable edges with `c` among their link colors, ascending by id.
pub fn variables_containing(config: &Configuration<'_>, c: Color) -> Vec<EdgeId> {
    (0..config.graph().edge_count())
        .filter(|&e| {
            let cc = config.complex_color(e);
            cc.is_variable() && cc.contains(c)
        })
        .collect()
}

/// All variable edges, ascending by id.
pub fn variables(config: &Configuration<'_>) -> Vec<EdgeId> {
    (0..config.graph().edge_count()).filter(|&e| config.is_variable(e)).collect()
}

/// Checks a per-edge coloring against the graph: every color inside the
/// palette and no two edges sharing a vertex with the same color.
pub fn verify_edge_coloring(graph: &SimpleGraph, colors: &[Color], palette: usize) -> Result<(), String> {
    if colors.len() != graph.edge_count() {
        return Err(format!("coloring has {} entries, graph has {} edges", colors.len(), graph.edge_count()));
    }
    if let Some((e, c)) = colors.iter().enumerate().find(|(_, c)| c.index() >= palette) {
        return Err(format!("edge {e} has color {c} outside a palette of {palette}"));
    }
    let mut owner = vec![usize::MAX; palette];
    let mut stamp = vec![usize::MAX; palette];
    for v in 0..graph.vertex_count() {
        for &e in graph.incident(v) {
            let c = colors[e].index();
            if stamp[c] == v {
                return Err(format!("edges {} and {} share vertex {} and color {}", owner[c], e, v, colors[e]));
            }
            stamp[c] = v;
            owner[c] = e;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;

    fn cc(a: u16, b: u16) -> ComplexColor {
        ComplexColor::new(Color(a), Color(b))
    }

    /// Tetrahedron on vertices 0..3 with colors g=0, r=1, b=2, edges in
    /// the order 01, 02, 03, 12, 13, 23. Edges 01 and 02 are the two
    /// variables (r,g) and (g,r).
    fn tetrahedron_with_variables(g: &SimpleGraph) -> Configuration<'_> {
        Configuration::from_complex_colors(g, 3, &[cc(1, 0), cc(0, 1), cc(2, 2), cc(2, 2), cc(1, 1), cc(0, 0)]).unwrap()
    }

    #[test]
    fn single_edge_palette_one() {
        let g = families::path(2);
        let c = initial_configuration(&g, 1, 9).unwrap();
        assert_eq!(c.complex_color(0), cc(0, 0));
        assert_eq!(c.variable_count(), 0);
        assert!(is_proper(&c));
    }

    #[test]
    fn path_is_consistent_for_any_seed() {
        let g = families::path(3);
        for seed in 0..32 {
            let c = initial_configuration(&g, 2, seed).unwrap();
            assert!(is_consistent(&c));
            assert!(c.variable_count() <= 2);
        }
    }

    /// Brute force over all 2^6 link colorings of K3 with two colors: no
    /// consistent one is free of variables.
    #[test]
    fn triangle_with_two_colors_always_has_variables() {
        let g = families::complete(3);
        let mut consistent = 0;
        for mask in 0u32..64 {
            let colors: Vec<_> = (0..3)
                .map(|e| cc(((mask >> (2 * e)) & 1) as u16, ((mask >> (2 * e + 1)) & 1) as u16))
                .collect();
            let c = Configuration::from_complex_colors(&g, 2, &colors).unwrap();
            if is_consistent(&c) {
                consistent += 1;
                assert!(c.recount_variables() >= 1);
            }
        }
        assert!(consistent > 0);
        for seed in 0..64 {
            let c = initial_configuration(&g, 2, seed).unwrap();
            assert!(is_consistent(&c));
            assert!(c.variable_count() >= 1);
        }
    }

    #[test]
    fn palette_too_small() {
        let g = families::star(3);
        assert_eq!(
            initial_configuration(&g, 2, 0).unwrap_err(),
            ColoringError::PaletteTooSmall { palette: 2, max_degree: 3 }
        );
    }

    #[test]
    fn tetrahedron_figures() {
        let g = families::complete(4);
        let c = tetrahedron_with_variables(&g);
        assert!(is_consistent(&c));
        assert!(!is_proper(&c));
        assert_eq!(c.variable_count(), 2);
        assert_eq!(variables_containing(&c, Color(1)), vec![0, 1]);
        assert!(variables_containing(&c, Color(2)).is_empty());

        // perfect matchings {01,23}, {02,13}, {03,12}
        let proper = Configuration::from_edge_colors(&g, 3, &[Color(0), Color(1), Color(2), Color(2), Color(1), Color(0)]).unwrap();
        assert!(is_proper(&proper));
        assert!(variables_containing(&proper, Color(0)).is_empty());
    }

    #[test]
    fn inconsistent_configuration_detected() {
        let g = families::path(3);
        let c = Configuration::from_complex_colors(&g, 2, &[cc(0, 1), cc(1, 0)]).unwrap();
        assert!(!is_consistent(&c));
        assert!(!is_proper(&c));
    }

    #[test]
    fn empty_graph_is_proper() {
        let g = SimpleGraph::new(0, []).unwrap();
        let c = initial_configuration(&g, 0, 1).unwrap();
        assert!(is_proper(&c));
    }

    #[test]
    fn single_variable_query_other_color() {
        let g = families::path(2);
        let c = Configuration::from_complex_colors(&g, 3, &[cc(0, 1)]).unwrap();
        assert!(variables_containing(&c, Color(2)).is_empty());
        assert_eq!(variables_containing(&c, Color(0)), vec![0]);
    }

    #[test]
    fn dont_care_count_matches_degree_deficit() {
        let g = families::path(4);
        let c = initial_configuration(&g, 3, 5).unwrap();
        for v in 0..4 {
            assert_eq!(c.dont_cares(v).len(), 3 - g.degree(v));
        }
        let c2 = initial_configuration(&g, 2, 5).unwrap();
        assert_eq!(c2.dont_cares(0).len(), 1);
        assert!(c2.dont_cares(1).is_empty());
    }

    #[test]
    fn verifier_rejects_conflicts() {
        let g = families::path(3);
        assert!(verify_edge_coloring(&g, &[Color(0), Color(1)], 2).is_ok());
        assert!(verify_edge_coloring(&g, &[Color(0), Color(0)], 2).is_err());
        assert!(verify_edge_coloring(&g, &[Color(0), Color(2)], 2).is_err());
        assert!(verify_edge_coloring(&g, &[Color(0)], 2).is_err());
    }

    #[test]
    fn wrong_length_rejected() {
        let g = families::path(3);
        assert!(matches!(
            Configuration::from_complex_colors(&g, 2, &[cc(0, 0)]),
            Err(ColoringError::WrongLength { expected: 2, got: 1 })
        ));
    }
}
