use std::collections::BTreeSet;

use crate::hypergraph::{Hypergraph, VertexId, VertexSet};

/// The ⊆-conflict graph: `{u,v}` is an edge when some pair of hyperedges
/// has `u` only in the first and `v` only in the second.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConflictGraph {
    vertices: VertexSet,
    edges: BTreeSet<(VertexId, VertexId)>,
}

impl ConflictGraph {
    /// Builds the conflict graph of an arbitrary family of vertex sets.
    pub fn from_sets<'a, I>(sets: I) -> Self
    where
        I: IntoIterator<Item = &'a VertexSet>,
    {
        let sets: Vec<&VertexSet> = sets.into_iter().collect();
        let mut g = ConflictGraph::default();
        for s in &sets {
            g.vertices.union_with(s);
        }
        for (i, a) in sets.iter().enumerate() {
            for b in &sets[i + 1..] {
                let only_a = a.difference(b);
                if only_a.is_empty() {
                    continue;
                }
                let only_b = b.difference(a);
                for u in only_a.iter() {
                    for v in only_b.iter() {
                        g.edges.insert((u.min(v), u.max(v)));
                    }
                }
            }
        }
        g
    }

    /// Builds a graph from explicit vertices and edges; loops are dropped.
    pub fn from_edges(
        vertices: VertexSet,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Self {
        let mut vertices = vertices;
        let edges = edges
            .into_iter()
            .filter(|(u, v)| u != v)
            .map(|(u, v)| {
                vertices.insert(u);
                vertices.insert(v);
                (u.min(v), u.max(v))
            })
            .collect();
        ConflictGraph { vertices, edges }
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    /// Edges as `(smaller id, larger id)` pairs in ascending order.
    pub fn edges(&self) -> &BTreeSet<(VertexId, VertexId)> {
        &self.edges
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_vertex_cover(&self, s: &VertexSet) -> bool {
        self.edges
            .iter()
            .all(|&(u, v)| s.contains(u) || s.contains(v))
    }
}

/// The ⊆-conflict graph of the edges of `h`.
pub fn conflict_graph(h: &Hypergraph) -> ConflictGraph {
    let mut g = ConflictGraph::from_sets(h.edges().iter().map(|e| e.vertices()));
    g.vertices = h.vertices().clone();
    g
}

/// All inclusion-minimal vertex covers of size at most `k`.
///
/// Branches on the first uncovered edge, then drops duplicates and covers
/// that strictly contain another found cover. Every minimal cover of size
/// `≤ k` is reached by following its own endpoints, so the result is exact.
/// Output is sorted.
pub fn minimal_vertex_covers(g: &ConflictGraph, k: usize) -> Vec<VertexSet> {
    let edges: Vec<(VertexId, VertexId)> = g.edges.iter().copied().collect();
    let mut found = BTreeSet::new();
    branch(&edges, k, VertexSet::new(), &mut found);
    let found: Vec<VertexSet> = found.into_iter().collect();
    found
        .iter()
        .filter(|c| !found.iter().any(|d| d != *c && d.is_subset(c)))
        .cloned()
        .collect()
}

fn branch(
    edges: &[(VertexId, VertexId)],
    budget: usize,
    current: VertexSet,
    out: &mut BTreeSet<VertexSet>,
) {
    let uncovered = edges
        .iter()
        .find(|(u, v)| !current.contains(*u) && !current.contains(*v));
    let Some(&(u, v)) = uncovered else {
        out.insert(current);
        return;
    };
    if budget == 0 {
        return;
    }
    for w in [u, v] {
        let mut next = current.clone();
        next.insert(w);
        branch(edges, budget - 1, next, out);
    }
}
