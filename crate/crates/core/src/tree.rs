//! Breadth-first spanning forests that guide directional walks.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{EdgeId, SimpleGraph, VertexId};

/// One BFS tree per connected component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    /// One root per component, in order of component discovery.
    pub roots: Vec<VertexId>,
    /// Tree edge towards the root; `None` at roots.
    pub parent: Vec<Option<EdgeId>>,
    /// Hop distance to the component root.
    pub depth: Vec<usize>,
}

impl SpanningTree {
    pub fn is_root(&self, v: VertexId) -> bool {
        self.parent[v].is_none()
    }

    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }
}

/// Roots each component at its maximum-degree vertex (lowest id on ties).
/// The seed only permutes the order in which neighbours are discovered.
pub fn build_spanning_tree(graph: &SimpleGraph, seed: u64) -> SpanningTree {
    let n = graph.vertex_count();
    let labels = graph.components();
    let components = labels.iter().copied().max().map_or(0, |c| c + 1);
    let mut best: Vec<Option<VertexId>> = vec![None; components];
    for v in 0..n {
        let slot = &mut best[labels[v]];
        match slot {
            Some(u) if graph.degree(*u) >= graph.degree(v) => {}
            _ => *slot = Some(v),
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parent = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut roots = Vec::with_capacity(components);
    let mut queue = VecDeque::new();
    let mut order: Vec<EdgeId> = Vec::new();
    for root in best.into_iter().flatten() {
        roots.push(root);
        depth[root] = 0;
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            order.clear();
            order.extend_from_slice(graph.incident(v));
            order.shuffle(&mut rng);
            for &e in &order {
                let w = graph.opposite(e, v);
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = Some(e);
                    queue.push_back(w);
                }
            }
        }
    }
    SpanningTree { roots, parent, depth }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families;

    #[test]
    fn star_rooted_at_center() {
        let g = families::star(4);
        let t = build_spanning_tree(&g, 3);
        assert_eq!(t.roots, vec![0]);
        assert!((1..5).all(|v| t.depth[v] == 1));
    }

    #[test]
    fn path_rooted_at_interior_vertex() {
        let g = families::path(6);
        let t = build_spanning_tree(&g, 0);
        assert_eq!(t.roots, vec![1]);
        assert_eq!(t.depth, vec![1, 0, 1, 2, 3, 4]);
    }

    #[test]
    fn petersen_tree_has_depth_two() {
        let g = families::petersen();
        for seed in 0..8 {
            let t = build_spanning_tree(&g, seed);
            assert_eq!(t.roots, vec![0]);
            assert_eq!(t.height(), 2);
            // 3 neighbours at depth 1, the other 6 vertices at depth 2
            assert_eq!(t.depth.iter().filter(|&&d| d == 1).count(), 3);
            assert_eq!(t.depth.iter().filter(|&&d| d == 2).count(), 6);
        }
    }

    #[test]
    fn parents_form_a_tree() {
        let g = families::rook(5);
        let t = build_spanning_tree(&g, 11);
        for v in 0..g.vertex_count() {
            match t.parent[v] {
                None => assert_eq!(t.depth[v], 0),
                Some(e) => {
                    let u = g.opposite(e, v);
                    assert_eq!(t.depth[v], t.depth[u] + 1);
                }
            }
        }
        assert_eq!(build_spanning_tree(&g, 11), t);
    }

    #[test]
    fn one_root_per_component() {
        let g = SimpleGraph::new(6, [(0, 1), (2, 3), (3, 4), (2, 4)]).unwrap();
        let t = build_spanning_tree(&g, 0);
        assert_eq!(t.roots, vec![0, 2, 5]);
        assert_eq!(t.depth[1], 1);
        assert_eq!(t.depth[4], 1);
    }
}
