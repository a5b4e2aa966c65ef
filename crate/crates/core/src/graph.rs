//! Immutable simple graphs with stable vertex and edge identifiers.

use std::collections::HashSet;
use std::fmt;

use crate::error::GraphError;

pub type VertexId = usize;
pub type EdgeId = usize;

/// Undirected simple graph.
///
/// Every edge is stored once in canonical orientation `(lo, hi)` with
/// `lo < hi`. Edge identifiers are positions in the edge list and never
/// change after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    adjacency: Vec<Vec<EdgeId>>,
    max_degree: usize,
}

impl SimpleGraph {
    /// Builds a graph from an edge list. Rejects self-loops, repeated edges
    /// and out-of-range endpoints; edge ids follow the input order.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Self, GraphError> {
        let mut canonical = Vec::new();
        let mut seen = HashSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(GraphError::DuplicateEdge(e.0, e.1));
            }
            canonical.push(e);
        }
        Ok(Self::from_canonical(n, canonical))
    }

    fn from_canonical(n: usize, edges: Vec<(VertexId, VertexId)>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            adjacency[u].push(id);
            adjacency[v].push(id);
        }
        let max_degree = adjacency.iter().map(Vec::len).max().unwrap_or(0);
        SimpleGraph {
            n,
            edges,
            adjacency,
            max_degree,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Maximum vertex degree, Δ.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    /// Canonical endpoints `(lo, hi)` of an edge.
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    /// Incident edge ids of `v`, in insertion order.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.adjacency[v]
    }

    /// The endpoint of `e` that is not `v`.
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            debug_assert_eq!(b, v, "vertex {v} is not an endpoint of edge {e}");
            a
        }
    }

    pub fn is_incident(&self, e: EdgeId, v: VertexId) -> bool {
        let (a, b) = self.edges[e];
        a == v || b == v
    }

    /// 0 if `v` is the lower endpoint of `e`, 1 if it is the higher one.
    pub(crate) fn side(&self, e: EdgeId, v: VertexId) -> usize {
        usize::from(self.edges[e].0 != v)
    }

    /// Shared vertex of two distinct edges, if they are adjacent.
    pub fn common_vertex(&self, a: EdgeId, b: EdgeId) -> Option<VertexId> {
        if a == b {
            return None;
        }
        let (a0, a1) = self.edges[a];
        let (b0, b1) = self.edges[b];
        if a0 == b0 || a0 == b1 {
            Some(a0)
        } else if a1 == b0 || a1 == b1 {
            Some(a1)
        } else {
            None
        }
    }

    /// Connected component label for every vertex, numbered in order of
    /// their lowest vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &e in &self.adjacency[v] {
                    let w = self.opposite(e, v);
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![u8::MAX; self.n];
        let mut stack = Vec::new();
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &e in &self.adjacency[v] {
                    let w = self.opposite(e, v);
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[v];
                        stack.push(w);
                    } else if side[w] == side[v] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimpleGraph")
            .field("n", &self.n)
            .field("m", &self.edges.len())
            .field("max_degree", &self.max_degree)
            .finish()
    }
}

/// A half-edge: the side of `edge` attached to `endpoint`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Link {
    pub edge: EdgeId,
    pub endpoint: VertexId,
}

impl Link {
    pub fn new(edge: EdgeId, endpoint: VertexId) -> Self {
        Link { edge, endpoint }
    }

    /// The other half of the same edge.
    pub fn twin(self, graph: &SimpleGraph) -> Link {
        Link::new(self.edge, graph.opposite(self.edge, self.endpoint))
    }
}

/// Small named graphs used as fixtures and benchmark instances.
pub mod families {
    use super::SimpleGraph;

    pub fn path(n: usize) -> SimpleGraph {
        SimpleGraph::new(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    pub fn cycle(n: usize) -> SimpleGraph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        SimpleGraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    pub fn complete(n: usize) -> SimpleGraph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        SimpleGraph::new(n, edges).expect("complete graph is simple")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> SimpleGraph {
        let edges = (0..a).flat_map(|u| (0..b).map(move |v| (u, a + v)));
        SimpleGraph::new(a + b, edges).expect("complete bipartite graph is simple")
    }

    pub fn star(leaves: usize) -> SimpleGraph {
        complete_bipartite(1, leaves)
    }

    /// Outer 5-cycle 0..4, spokes i–(i+5), inner pentagram on 5..9.
    pub fn petersen() -> SimpleGraph {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        SimpleGraph::new(10, edges).expect("Petersen graph is simple")
    }

    /// Rook's graph on an `order × order` board: cells sharing a row or a
    /// column are adjacent. This is the `qg.order<N>` quasigroup family.
    pub fn rook(order: usize) -> SimpleGraph {
        let cell = |r: usize, c: usize| r * order + c;
        let mut edges = Vec::new();
        for r in 0..order {
            for c in 0..order {
                for c2 in c + 1..order {
                    edges.push((cell(r, c), cell(r, c2)));
                }
                for r2 in r + 1..order {
                    edges.push((cell(r, c), cell(r2, c)));
                }
            }
        }
        SimpleGraph::new(order * order, edges).expect("rook graph is simple")
    }
}
