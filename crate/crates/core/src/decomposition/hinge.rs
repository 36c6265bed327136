use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, Hypergraph, VertexSet};

/// Edges of `h` not contained in the union of `covering`.
pub fn exhaustive_subhypergraph(h: &Hypergraph, covering: &[EdgeId]) -> Hypergraph {
    let mut union = VertexSet::new();
    for &id in covering {
        union.union_with(h.edge(id).vertices());
    }
    let rest: Vec<EdgeId> = h
        .edge_ids()
        .filter(|&id| !h.edge(id).vertices().is_subset(&union))
        .collect();
    h.subhypergraph(&rest)
}

/// An exhaustive hinge around a guard edge.
#[derive(Clone, Debug)]
pub struct Hinge {
    /// The guard followed by one cover edge per vertex of `s` outside it.
    pub edges: Vec<EdgeId>,
    pub guard: EdgeId,
    /// Connected components of the exhaustive subhypergraph of `edges`.
    pub components: Vec<Hypergraph>,
}

impl Hinge {
    pub fn union(&self, h: &Hypergraph) -> VertexSet {
        let mut u = VertexSet::new();
        for &id in &self.edges {
            u.union_with(h.edge(id).vertices());
        }
        u
    }
}

/// Builds the hinge of nest-set `s` with the given guard: the guard plus,
/// for each vertex of `s` not in the guard, its first incident edge.
pub fn exhaustive_hinge(h: &Hypergraph, s: &VertexSet, guard: EdgeId) -> Result<Hinge> {
    if guard.0 >= h.num_edges() {
        return Err(Error::invalid(format!("no edge with index {}", guard.0)));
    }
    if !h.is_nest_set(s)? {
        return Err(Error::invalid(format!(
            "{} is not a nest-set",
            h.fmt_set(s)
        )));
    }
    if !h.is_guard_of(s, guard) {
        return Err(Error::invalid(format!(
            "{} is not a guard of {}",
            h.edge(guard).label(),
            h.fmt_set(s)
        )));
    }
    let g = h.edge(guard).vertices();
    let mut edges = vec![guard];
    for v in s.difference(g).iter() {
        let first = h
            .edge_ids()
            .find(|&id| h.edge(id).vertices().contains(v))
            .ok_or_else(|| Error::invalid(format!("vertex {} lies in no edge", h.name(v))))?;
        if !edges.contains(&first) {
            edges.push(first);
        }
    }
    let components = exhaustive_subhypergraph(h, &edges).components();
    let hinge = Hinge {
        edges,
        guard,
        components,
    };
    check_hinge(h, s, &hinge)?;
    Ok(hinge)
}

fn check_hinge(h: &Hypergraph, s: &VertexSet, hinge: &Hinge) -> Result<()> {
    let union = hinge.union(h);
    for id in h.incident_edges(s)? {
        if !h.edge(id).vertices().is_subset(&union) {
            return Err(Error::invariant(format!(
                "hinge misses incident edge {}",
                h.edge(id).label()
            )));
        }
    }
    if hinge.edges.len() > s.len() {
        return Err(Error::invariant(
            "hinge has more edges than the nest-set has vertices",
        ));
    }
    let g = h.edge(hinge.guard).vertices();
    for c in &hinge.components {
        if !c.vertices().intersection(&union).is_subset(g) {
            return Err(Error::invariant(
                "component meets the hinge outside its guard",
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::tests_support::h0;

    fn edge_sets(h: &Hypergraph, ids: &[EdgeId]) -> Vec<String> {
        ids.iter()
            .map(|&i| h.fmt_set(h.edge(i).vertices()))
            .collect()
    }

    #[test]
    fn exhaustive_subhypergraph_examples() {
        let h = h0();
        let sub = exhaustive_subhypergraph(&h, &[EdgeId(0), EdgeId(4)]);
        let edges: Vec<String> = sub
            .edges()
            .iter()
            .map(|e| h.fmt_set(e.vertices()))
            .collect();
        assert_eq!(edges, ["{a,d,e}", "{b,e}"]);
        let all: Vec<EdgeId> = h.edge_ids().collect();
        assert!(exhaustive_subhypergraph(&h, &all).is_empty());
        assert_eq!(exhaustive_subhypergraph(&h, &[]), h);
    }

    #[test]
    fn hinge_examples() {
        let h = h0();
        let cf = h.vertex_set(["c", "f"]).unwrap();
        let hinge = exhaustive_hinge(&h, &cf, EdgeId(0)).unwrap();
        assert_eq!(edge_sets(&h, &hinge.edges), ["{a,b,c,d}", "{c,d,f}"]);
        assert_eq!(hinge.components.len(), 1);

        let f = h.vertex_set(["f"]).unwrap();
        let hinge = exhaustive_hinge(&h, &f, EdgeId(2)).unwrap();
        assert_eq!(edge_sets(&h, &hinge.edges), ["{c,d,f}"]);

        let single = Hypergraph::from_edges([("e", ["a", "b"])]);
        let hinge = exhaustive_hinge(&single, single.vertices(), EdgeId(0)).unwrap();
        assert_eq!(hinge.edges, vec![EdgeId(0)]);
        assert!(hinge.components.is_empty());
    }

    #[test]
    fn hinge_rejects_bad_input() {
        let h = h0();
        let c = h.vertex_set(["c"]).unwrap();
        assert!(matches!(
            exhaustive_hinge(&h, &c, EdgeId(0)),
            Err(Error::InvalidInput(_))
        ));
        let cf = h.vertex_set(["c", "f"]).unwrap();
        assert!(matches!(
            exhaustive_hinge(&h, &cf, EdgeId(4)),
            Err(Error::InvalidInput(_))
        ));
    }
}
