//! Hypergraphs with interned vertex names and deduplicated, labelled edges.
//!
//! Vertex ids are dense indices into a shared [`Universe`]; every hypergraph
//! derived from another one (vertex deletion, subhypergraphs, components)
//! shares its universe, so [`VertexSet`]s stay meaningful across derivations.
//! Ids are assigned in first-appearance order, which doubles as the canonical
//! vertex order. Edges keep the order in which their vertex set first
//! appeared.

mod text;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
pub use crate::vertex_set::{VertexId, VertexSet};

/// Name table shared by a family of hypergraphs.
#[derive(Debug, Default, Clone)]
pub struct Universe {
    names: Vec<String>,
    ids: HashMap<String, VertexId>,
}

impl Universe {
    fn intern(&mut self, name: &str) -> VertexId {
        if let Some(&id) = self.ids.get(name) {
            return id;
        }
        let id = VertexId(self.names.len() as u32);
        self.names.push(name.to_string());
        self.ids.insert(name.to_string(), id);
        id
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    pub fn id(&self, name: &str) -> Option<VertexId> {
        self.ids.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// Index of an edge inside one particular hypergraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    labels: Vec<String>,
    vertices: VertexSet,
}

impl Edge {
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// All labels of the edge joined by `/` (several source edges may have
    /// collapsed into this one).
    pub fn label(&self) -> String {
        self.labels.join("/")
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }
}

/// Result of testing a vertex set for the nest-set property.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NestVerdict {
    NotNestSet,
    /// `guard` is the canonically first incident edge with maximal residual;
    /// `None` only when no edge is incident to the set.
    NestSet {
        guard: Option<EdgeId>,
    },
}

impl NestVerdict {
    pub fn is_nest_set(self) -> bool {
        matches!(self, NestVerdict::NestSet { .. })
    }

    pub fn guard(self) -> Option<EdgeId> {
        match self {
            NestVerdict::NestSet { guard } => guard,
            NestVerdict::NotNestSet => None,
        }
    }
}

/// True iff the given sets are pairwise comparable under inclusion.
pub fn is_chain(sets: &[VertexSet]) -> bool {
    let mut sorted: Vec<&VertexSet> = sets.iter().collect();
    sorted.sort_by_key(|s| s.len());
    sorted.windows(2).all(|w| w[0].is_subset(w[1]))
}

#[derive(Clone)]
pub struct Hypergraph {
    universe: Arc<Universe>,
    vertices: VertexSet,
    edges: Vec<Edge>,
}

/// Incremental construction from named vertices and labelled edges.
#[derive(Default)]
pub struct HypergraphBuilder {
    universe: Universe,
    vertices: VertexSet,
    edges: Vec<(String, VertexSet)>,
}

impl HypergraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a vertex, which may stay isolated.
    pub fn vertex(&mut self, name: &str) -> VertexId {
        let id = self.universe.intern(name);
        self.vertices.insert(id);
        id
    }

    /// Adds an edge; repeated vertex names collapse and an empty vertex list
    /// contributes nothing.
    pub fn edge<I, S>(&mut self, label: &str, vertices: I) -> &mut Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let set: VertexSet = vertices
            .into_iter()
            .map(|v| self.vertex(v.as_ref()))
            .collect();
        self.edges.push((label.to_string(), set));
        self
    }

    pub fn build(self) -> Hypergraph {
        let universe = Arc::new(self.universe);
        let edges = merge_edges(
            self.edges
                .into_iter()
                .map(|(label, set)| (vec![label], set)),
        );
        Hypergraph {
            universe,
            vertices: self.vertices,
            edges,
        }
    }
}

/// Drops empty edges and merges equal vertex sets, concatenating labels and
/// keeping the position of the first occurrence.
fn merge_edges(edges: impl Iterator<Item = (Vec<String>, VertexSet)>) -> Vec<Edge> {
    let mut out: Vec<Edge> = Vec::new();
    let mut seen: HashMap<VertexSet, usize> = HashMap::new();
    for (labels, vertices) in edges {
        if vertices.is_empty() {
            continue;
        }
        match seen.get(&vertices) {
            Some(&i) => out[i].labels.extend(labels),
            None => {
                seen.insert(vertices.clone(), out.len());
                out.push(Edge { labels, vertices });
            }
        }
    }
    out
}

impl Hypergraph {
    /// Builds a hypergraph from `(label, vertex names)` pairs; the vertex set
    /// is the union of the edges.
    pub fn from_edges<I, L, V, S>(edges: I) -> Self
    where
        I: IntoIterator<Item = (L, V)>,
        L: AsRef<str>,
        V: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut b = HypergraphBuilder::new();
        for (label, vs) in edges {
            b.edge(label.as_ref(), vs);
        }
        b.build()
    }

    /// Same universe, no vertices, no edges.
    pub fn empty_like(&self) -> Self {
        Hypergraph {
            universe: self.universe.clone(),
            vertices: VertexSet::new(),
            edges: Vec::new(),
        }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id.0]
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// The empty hypergraph has neither vertices nor edges.
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty()
    }

    pub fn name(&self, v: VertexId) -> &str {
        self.universe.name(v)
    }

    /// Looks up a vertex of this hypergraph by name.
    pub fn vertex_id(&self, name: &str) -> Result<VertexId> {
        match self.universe.id(name) {
            Some(v) if self.vertices.contains(v) => Ok(v),
            _ => Err(Error::UnknownVertex(name.to_string())),
        }
    }

    pub fn vertex_set<I, S>(&self, names: I) -> Result<VertexSet>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        names
            .into_iter()
            .map(|n| self.vertex_id(n.as_ref()))
            .collect()
    }

    /// Vertex names of `s` in canonical order.
    pub fn names<'a>(&'a self, s: &'a VertexSet) -> impl Iterator<Item = &'a str> + 'a {
        s.iter().map(move |v| self.universe.name(v))
    }

    /// `{a,b,c}` rendering of a vertex set.
    pub fn fmt_set(&self, s: &VertexSet) -> String {
        format!("{{{}}}", self.names(s).collect::<Vec<_>>().join(","))
    }

    pub fn find_edge(&self, vertices: &VertexSet) -> Option<EdgeId> {
        self.edges
            .iter()
            .position(|e| &e.vertices == vertices)
            .map(EdgeId)
    }

    fn check_subset(&self, s: &VertexSet) -> Result<()> {
        match s.difference(&self.vertices).first() {
            None => Ok(()),
            Some(v) if v.index() < self.universe.len() => {
                Err(Error::UnknownVertex(self.universe.name(v).to_string()))
            }
            Some(v) => Err(Error::UnknownVertex(format!("#{}", v.0))),
        }
    }

    /// Edges meeting `s`, in canonical order.
    pub fn incident_edges(&self, s: &VertexSet) -> Result<Vec<EdgeId>> {
        self.check_subset(s)?;
        Ok(self.incident_unchecked(s).collect())
    }

    fn incident_unchecked<'a>(&'a self, s: &'a VertexSet) -> impl Iterator<Item = EdgeId> + 'a {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.vertices.intersects(s))
            .map(|(i, _)| EdgeId(i))
    }

    /// The set `{ e \ s | e incident to s }`, deduplicated in first-appearance
    /// order; it may contain the empty set.
    pub fn residual_edges(&self, s: &VertexSet) -> Result<Vec<VertexSet>> {
        self.check_subset(s)?;
        let mut out: Vec<VertexSet> = Vec::new();
        for id in self.incident_unchecked(s) {
            let r = self.edges[id.0].vertices.difference(s);
            if !out.contains(&r) {
                out.push(r);
            }
        }
        Ok(out)
    }

    /// Decides whether `s` is a nest-set and, if so, names its guard.
    pub fn nest_verdict(&self, s: &VertexSet) -> Result<NestVerdict> {
        if s.is_empty() {
            return Err(Error::invalid("nest-sets are nonempty"));
        }
        self.check_subset(s)?;
        let residuals: Vec<(EdgeId, VertexSet)> = self
            .incident_unchecked(s)
            .map(|id| (id, self.edges[id.0].vertices.difference(s)))
            .collect();
        let sets: Vec<VertexSet> = residuals.iter().map(|(_, r)| r.clone()).collect();
        if !is_chain(&sets) {
            return Ok(NestVerdict::NotNestSet);
        }
        let max_len = sets.iter().map(VertexSet::len).max();
        let guard = residuals
            .iter()
            .find(|(_, r)| Some(r.len()) == max_len)
            .map(|(id, _)| *id);
        Ok(NestVerdict::NestSet { guard })
    }

    pub fn is_nest_set(&self, s: &VertexSet) -> Result<bool> {
        Ok(self.nest_verdict(s)?.is_nest_set())
    }

    /// True iff `guard` is incident to `s` and its residual contains every
    /// other residual of `s`.
    pub fn is_guard_of(&self, s: &VertexSet, guard: EdgeId) -> bool {
        let g = &self.edges[guard.0].vertices;
        if !g.intersects(s) {
            return false;
        }
        let top = g.difference(s);
        self.incident_unchecked(s)
            .all(|id| self.edges[id.0].vertices.difference(s).is_subset(&top))
    }

    /// The vertex-induced subhypergraph on `V(H) \ x`.
    pub fn remove_vertices(&self, x: &VertexSet) -> Result<Hypergraph> {
        self.check_subset(x)?;
        Ok(self.remove_unchecked(x))
    }

    pub(crate) fn remove_unchecked(&self, x: &VertexSet) -> Hypergraph {
        let edges = merge_edges(
            self.edges
                .iter()
                .map(|e| (e.labels.clone(), e.vertices.difference(x))),
        );
        Hypergraph {
            universe: self.universe.clone(),
            vertices: self.vertices.difference(x),
            edges,
        }
    }

    /// The vertex-induced subhypergraph `H[u]`.
    pub fn induced(&self, u: &VertexSet) -> Result<Hypergraph> {
        self.check_subset(u)?;
        Ok(self.remove_unchecked(&self.vertices.difference(u)))
    }

    /// The subhypergraph formed by the given edges; its vertices are their
    /// union. Edge order follows `ids`.
    pub fn subhypergraph(&self, ids: &[EdgeId]) -> Hypergraph {
        let edges: Vec<Edge> = ids.iter().map(|id| self.edges[id.0].clone()).collect();
        let mut vertices = VertexSet::new();
        for e in &edges {
            vertices.union_with(&e.vertices);
        }
        Hypergraph {
            universe: self.universe.clone(),
            vertices,
            edges,
        }
    }

    /// Vertices that lie in no edge.
    pub fn isolated_vertices(&self) -> VertexSet {
        let mut covered = VertexSet::new();
        for e in &self.edges {
            covered.union_with(&e.vertices);
        }
        self.vertices.difference(&covered)
    }

    /// Drops isolated vertices.
    pub fn without_isolated(&self) -> Hypergraph {
        let mut h = self.clone();
        h.vertices = self.vertices.difference(&self.isolated_vertices());
        h
    }

    /// Connected components, each as the subhypergraph of its edges. Isolated
    /// vertices are ignored. Components are ordered by their first edge.
    pub fn components(&self) -> Vec<Hypergraph> {
        let n = self.edges.len();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            let mut stack = vec![start];
            let mut reach = self.edges[start].vertices.clone();
            while stack.pop().is_some() {
                for (j, e) in self.edges.iter().enumerate() {
                    if comp[j] == usize::MAX && e.vertices.intersects(&reach) {
                        comp[j] = count;
                        reach.union_with(&e.vertices);
                        stack.push(j);
                    }
                }
            }
            count += 1;
        }
        (0..count)
            .map(|c| {
                let ids: Vec<EdgeId> = (0..n).filter(|&i| comp[i] == c).map(EdgeId).collect();
                self.subhypergraph(&ids)
            })
            .collect()
    }

    /// β-acyclicity by nest-point elimination: repeatedly delete some vertex
    /// whose incident edges form a chain.
    pub fn is_beta_acyclic(&self) -> bool {
        let mut h = self.clone();
        'outer: while !h.vertices.is_empty() {
            let point = h.vertices.iter().find(|&v| {
                h.nest_verdict(&VertexSet::singleton(v))
                    .map(|x| x.is_nest_set())
                    .unwrap_or(false)
            });
            if let Some(v) = point {
                h = h.remove_unchecked(&VertexSet::singleton(v));
                continue 'outer;
            }
            return false;
        }
        true
    }

    /// Equality of vertex names and of edges as sets of vertex names,
    /// ignoring labels and order.
    pub fn same_shape(&self, other: &Hypergraph) -> bool {
        use std::collections::BTreeSet;
        let shape = |h: &Hypergraph| {
            let vertices: BTreeSet<String> = h.names(&h.vertices).map(str::to_string).collect();
            let edges: BTreeSet<BTreeSet<String>> = h
                .edges
                .iter()
                .map(|e| h.names(&e.vertices).map(str::to_string).collect())
                .collect();
            (vertices, edges)
        };
        shape(self) == shape(other)
    }

    /// Adds an existing edge of the same universe; a no-op if an edge with
    /// that vertex set is already present.
    pub(crate) fn with_edge(&self, edge: &Edge) -> Hypergraph {
        let mut h = self.clone();
        if h.find_edge(&edge.vertices).is_none() {
            h.vertices.union_with(&edge.vertices);
            h.edges.push(edge.clone());
        }
        h
    }
}

/// Two hypergraphs are equal when they have the same vertices, the same
/// edge sets in the same order, and the same label multisets per edge.
impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        let names = |h: &Hypergraph, s: &VertexSet| -> Vec<String> {
            h.names(s).map(str::to_string).collect()
        };
        names(self, &self.vertices) == names(other, &other.vertices)
            && self.edges.len() == other.edges.len()
            && self.edges.iter().zip(&other.edges).all(|(a, b)| {
                let mut la = a.labels.clone();
                let mut lb = b.labels.clone();
                la.sort();
                lb.sort();
                la == lb && names(self, &a.vertices) == names(other, &b.vertices)
            })
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges
            .iter()
            .map(|e| format!("{}{}", e.label(), self.fmt_set(&e.vertices)))
            .collect();
        f.debug_struct("Hypergraph")
            .field("vertices", &self.fmt_set(&self.vertices))
            .field("edges", &edges)
            .finish()
    }
}


#[cfg(test)]
mod tests {
    use super::tests_support::h0;
    use super::*;

    fn sets(h: &Hypergraph, ids: &[EdgeId]) -> Vec<String> {
        ids.iter()
            .map(|&i| h.fmt_set(h.edge(i).vertices()))
            .collect()
    }

    fn fmt_all(h: &Hypergraph, s: &[VertexSet]) -> Vec<String> {
        s.iter().map(|x| h.fmt_set(x)).collect()
    }

    #[test]
    fn incident_edges_of_example_sets() {
        let h = h0();
        let cf = h.vertex_set(["c", "f"]).unwrap();
        assert_eq!(
            sets(&h, &h.incident_edges(&cf).unwrap()),
            ["{a,b,c,d}", "{c,d,f}", "{c,f}"]
        );
        assert!(h.incident_edges(&VertexSet::new()).unwrap().is_empty());
        let e = h.vertex_set(["e"]).unwrap();
        assert_eq!(
            sets(&h, &h.incident_edges(&e).unwrap()),
            ["{a,d,e}", "{b,e}"]
        );
    }

    #[test]
    fn unknown_vertices_are_rejected() {
        let h = h0();
        assert_eq!(
            h.vertex_set(["z"]).unwrap_err(),
            Error::UnknownVertex("z".into())
        );
        let g = h.remove_vertices(&h.vertex_set(["a"]).unwrap()).unwrap();
        let a = h.vertex_set(["a"]).unwrap();
        assert_eq!(
            g.incident_edges(&a).unwrap_err(),
            Error::UnknownVertex("a".into())
        );
    }

    #[test]
    fn residual_edges_of_example_sets() {
        let h = h0();
        let cf = h.vertex_set(["c", "f"]).unwrap();
        assert_eq!(
            fmt_all(&h, &h.residual_edges(&cf).unwrap()),
            ["{a,b,d}", "{d}", "{}"]
        );
        let c = h.vertex_set(["c"]).unwrap();
        let r = fmt_all(&h, &h.residual_edges(&c).unwrap());
        assert!(r.contains(&"{a,b,d}".to_string()));
        assert!(r.contains(&"{d,f}".to_string()));
        assert_eq!(
            h.residual_edges(h.vertices()).unwrap(),
            vec![VertexSet::new()]
        );
    }

    #[test]
    fn nest_sets_of_example() {
        let h = h0();
        let cf = h.vertex_set(["c", "f"]).unwrap();
        let verdict = h.nest_verdict(&cf).unwrap();
        assert_eq!(
            h.fmt_set(h.edge(verdict.guard().unwrap()).vertices()),
            "{a,b,c,d}"
        );
        assert!(!h.is_nest_set(&h.vertex_set(["c"]).unwrap()).unwrap());
        assert!(h.is_nest_set(&h.vertex_set(["f"]).unwrap()).unwrap());
        assert!(h.nest_verdict(&VertexSet::new()).is_err());
    }

    #[test]
    fn guard_ties_break_by_canonical_order() {
        let h = Hypergraph::from_edges([("x", vec!["a", "b"]), ("y", vec!["c", "b"])]);
        let ac = h.vertex_set(["a", "c"]).unwrap();
        assert_eq!(h.nest_verdict(&ac).unwrap().guard(), Some(EdgeId(0)));
        assert!(h.is_guard_of(&ac, EdgeId(1)));
    }

    #[test]
    fn remove_vertices_of_example() {
        let h = h0();
        let h1 = h
            .remove_vertices(&h.vertex_set(["c", "f"]).unwrap())
            .unwrap();
        let edges: Vec<String> = h1
            .edges()
            .iter()
            .map(|e| h1.fmt_set(e.vertices()))
            .collect();
        assert_eq!(edges, ["{a,b,d}", "{a,d,e}", "{d}", "{b,e}"]);
        assert_eq!(h1.edges()[2].labels(), ["e3"]);
        assert_eq!(h.remove_vertices(&VertexSet::new()).unwrap(), h);
        assert!(h.remove_vertices(h.vertices()).unwrap().is_empty());
    }

    #[test]
    fn beta_acyclicity() {
        assert!(!h0().is_beta_acyclic());
        let chain = Hypergraph::from_edges([
            ("x", vec!["a"]),
            ("y", vec!["a", "b"]),
            ("z", vec!["a", "b", "c"]),
        ]);
        assert!(chain.is_beta_acyclic());
        assert!(h0().empty_like().is_beta_acyclic());
    }

    #[test]
    fn components_and_isolated_vertices() {
        let mut b = HypergraphBuilder::new();
        b.edge("x", ["a", "b"])
            .edge("y", ["c"])
            .edge("z", ["b", "d"]);
        b.vertex("lonely");
        let h = b.build();
        assert_eq!(h.fmt_set(&h.isolated_vertices()), "{lonely}");
        let comps = h.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(h.fmt_set(comps[0].vertices()), "{a,b,d}");
        assert_eq!(h.without_isolated().num_vertices(), 4);
    }

    #[test]
    fn duplicate_edges_merge_and_empty_edges_vanish() {
        let h = Hypergraph::from_edges([
            ("r", vec!["x", "y", "x"]),
            ("s", vec!["y", "x"]),
            ("t", vec![]),
        ]);
        assert_eq!(h.num_edges(), 1);
        assert_eq!(h.edges()[0].label(), "r/s");
    }
}
