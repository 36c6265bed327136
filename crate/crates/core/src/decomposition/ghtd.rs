use std::fmt;

use super::hinge::exhaustive_hinge;
use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, Hypergraph, VertexSet};
use crate::nestset::{check_neo, Neo};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhtdNode {
    pub parent: Option<usize>,
    pub bag: VertexSet,
    pub cover: Vec<EdgeId>,
}

/// A rooted tree of bags with edge covers. Node 0 is the root and every other
/// node's parent precedes it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ghtd {
    nodes: Vec<GhtdNode>,
}

impl Ghtd {
    pub fn new(nodes: Vec<GhtdNode>) -> Result<Self> {
        for (i, n) in nodes.iter().enumerate() {
            match (i, n.parent) {
                (0, None) => {}
                (0, Some(_)) => return Err(Error::invalid("node 0 must be the root")),
                (_, Some(p)) if p < i => {}
                (_, _) => {
                    return Err(Error::invalid(format!(
                        "node {i} needs a parent with a smaller id"
                    )))
                }
            }
        }
        Ok(Ghtd { nodes })
    }

    pub fn nodes(&self) -> &[GhtdNode] {
        &self.nodes
    }

    /// Largest cover size.
    pub fn width(&self) -> usize {
        self.nodes.iter().map(|n| n.cover.len()).max().unwrap_or(0)
    }

    /// The line format `node <id> parent=<id|-> bag={..} cover={..}`.
    pub fn display<'a>(&'a self, h: &'a Hypergraph) -> impl fmt::Display + 'a {
        GhtdDisplay { d: self, h }
    }
}

struct GhtdDisplay<'a> {
    d: &'a Ghtd,
    h: &'a Hypergraph,
}

impl fmt::Display for GhtdDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.d.nodes.iter().enumerate() {
            let parent = n.parent.map_or("-".to_string(), |p| p.to_string());
            let cover: Vec<String> = n
                .cover
                .iter()
                .map(|&e| {
                    if e.0 < self.h.num_edges() {
                        self.h.edge(e).label()
                    } else {
                        format!("#{}", e.0)
                    }
                })
                .collect();
            writeln!(
                f,
                "node {i} parent={parent} bag={} cover={{{}}}",
                self.h.fmt_set(&n.bag),
                cover.join(",")
            )?;
        }
        Ok(())
    }
}

/// Intermediate tree whose covers are vertex sets of edges of the
/// hypergraph currently being decomposed.
#[derive(Clone, Debug)]
struct Tree {
    bag: VertexSet,
    cover: Vec<VertexSet>,
    children: Vec<Tree>,
}

impl Tree {
    fn preorder<'a>(&'a self, out: &mut Vec<&'a Tree>) {
        out.push(self);
        for c in &self.children {
            c.preorder(out);
        }
    }

    fn map_covers(&mut self, f: &impl Fn(&VertexSet) -> Result<VertexSet>) -> Result<()> {
        self.cover = self.cover.iter().map(f).collect::<Result<_>>()?;
        for c in &mut self.children {
            c.map_covers(f)?;
        }
        Ok(())
    }

    /// The same tree hung from its `root`-th node in preorder.
    fn reroot(self, root: usize) -> Tree {
        if root == 0 {
            return self;
        }
        let mut bags = Vec::new();
        let mut covers = Vec::new();
        let mut adj: Vec<Vec<usize>> = Vec::new();
        fn flatten(
            t: Tree,
            parent: Option<usize>,
            bags: &mut Vec<VertexSet>,
            covers: &mut Vec<Vec<VertexSet>>,
            adj: &mut Vec<Vec<usize>>,
        ) {
            let id = bags.len();
            bags.push(t.bag);
            covers.push(t.cover);
            adj.push(Vec::new());
            if let Some(p) = parent {
                adj[p].push(id);
                adj[id].push(p);
            }
            for c in t.children {
                flatten(c, Some(id), bags, covers, adj);
            }
        }
        flatten(self, None, &mut bags, &mut covers, &mut adj);
        fn build(
            u: usize,
            from: Option<usize>,
            bags: &[VertexSet],
            covers: &[Vec<VertexSet>],
            adj: &[Vec<usize>],
        ) -> Tree {
            Tree {
                bag: bags[u].clone(),
                cover: covers[u].clone(),
                children: adj[u]
                    .iter()
                    .filter(|&&w| Some(w) != from)
                    .map(|&w| build(w, Some(u), bags, covers, adj))
                    .collect(),
            }
        }
        build(root, None, &bags, &covers, &adj)
    }
}

/// Builds a generalized hypertree decomposition of width at most the width
/// of `neo`, which must be a valid NEO of `h`.
pub fn ghtd_from_neo(h: &Hypergraph, neo: &Neo) -> Result<Ghtd> {
    if h.vertices().is_empty() {
        return Err(Error::invalid("cannot decompose the empty hypergraph"));
    }
    if !h.isolated_vertices().is_empty() {
        return Err(Error::invalid(format!(
            "isolated vertices {} lie in no edge",
            h.fmt_set(&h.isolated_vertices())
        )));
    }
    check_neo(h, neo, neo.width()).map_err(|v| Error::invalid(format!("invalid NEO: {v}")))?;
    let tree = build(h, neo.sets())?;
    let mut order = Vec::new();
    tree.preorder(&mut order);
    let mut nodes = Vec::with_capacity(order.len());
    let mut parents = vec![None; order.len()];
    // Preorder ids: a node's children follow it, so record parent links on
    // a second walk.
    fn link(t: &Tree, id: &mut usize, parent: Option<usize>, parents: &mut Vec<Option<usize>>) {
        let me = *id;
        parents[me] = parent;
        *id += 1;
        for c in &t.children {
            link(c, id, Some(me), parents);
        }
    }
    link(&tree, &mut 0, None, &mut parents);
    for (t, parent) in order.iter().zip(parents) {
        let cover = t
            .cover
            .iter()
            .map(|c| {
                h.find_edge(c)
                    .ok_or_else(|| Error::invariant("cover refers to a truncated edge"))
            })
            .collect::<Result<Vec<_>>>()?;
        nodes.push(GhtdNode {
            parent,
            bag: t.bag.clone(),
            cover,
        });
    }
    let d = Ghtd::new(nodes)?;
    debug_assert!(validate_ghtd(h, &d).is_valid());
    Ok(d)
}

fn build(h: &Hypergraph, neo: &[VertexSet]) -> Result<Tree> {
    let (s1, tail) = neo
        .split_first()
        .ok_or_else(|| Error::invariant("ran out of nest-sets"))?;
    if tail.is_empty() {
        let mut covered = VertexSet::new();
        let mut cover = Vec::new();
        for e in h.edges() {
            if !e.vertices().is_subset(&covered) {
                covered.union_with(e.vertices());
                cover.push(e.vertices().clone());
            }
        }
        return Ok(Tree {
            bag: h.vertices().clone(),
            cover,
            children: Vec::new(),
        });
    }
    let guard = h
        .nest_verdict(s1)?
        .guard()
        .ok_or_else(|| Error::invariant("nest-set without incident edges"))?;
    let hinge = exhaustive_hinge(h, s1, guard)?;
    let g = h.edge(guard);
    let mut root = Tree {
        bag: hinge.union(h),
        cover: hinge
            .edges
            .iter()
            .map(|&e| h.edge(e).vertices().clone())
            .collect(),
        children: Vec::new(),
    };
    for comp in &hinge.components {
        let ci = comp.with_edge(g);
        let s1i = s1.intersection(ci.vertices());
        let delta = h.vertices().difference(ci.vertices());
        let trimmed: Vec<VertexSet> = tail
            .iter()
            .map(|s| s.difference(&delta))
            .filter(|s| !s.is_empty())
            .collect();
        let sub = ci.remove_unchecked(&s1i);
        let mut child = build(&sub, &trimmed)?;
        child.map_covers(&|c: &VertexSet| {
            ci.edges()
                .iter()
                .map(|e| e.vertices())
                .find(|e| &e.difference(&s1i) == c)
                .cloned()
                .ok_or_else(|| Error::invariant("truncated cover edge has no original"))
        })?;
        let interface = g.vertices().difference(&s1i);
        let mut order = Vec::new();
        child.preorder(&mut order);
        let at = order
            .iter()
            .position(|t| interface.is_subset(&t.bag))
            .ok_or_else(|| Error::invariant("no node of the child holds the guard interface"))?;
        root.children.push(child.reroot(at));
    }
    Ok(root)
}

/// Result of checking the decomposition properties.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GhtdReport {
    pub width: usize,
    pub violations: Vec<String>,
}

impl GhtdReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks connectedness, edge coverage and `bag ⊆ ∪cover` (the special
/// condition of hypertree decompositions is not checked).
pub fn validate_ghtd(h: &Hypergraph, d: &Ghtd) -> GhtdReport {
    let mut violations = Vec::new();
    let nodes = d.nodes();
    for (i, n) in nodes.iter().enumerate() {
        let mut union = VertexSet::new();
        for &e in &n.cover {
            if e.0 >= h.num_edges() {
                violations.push(format!("node {i}: cover refers to unknown edge #{}", e.0));
            } else {
                union.union_with(h.edge(e).vertices());
            }
        }
        let stray = n.bag.difference(h.vertices());
        if !stray.is_empty() {
            violations.push(format!("node {i}: bag has vertices outside the hypergraph"));
        }
        let uncovered = n.bag.intersection(h.vertices()).difference(&union);
        if !uncovered.is_empty() {
            violations.push(format!(
                "node {i}: bag vertices {} are not covered",
                h.fmt_set(&uncovered)
            ));
        }
    }
    for e in h.edges() {
        if !nodes.iter().any(|n| e.vertices().is_subset(&n.bag)) {
            violations.push(format!("edge {} is in no bag", e.label()));
        }
    }
    for v in h.vertices().iter() {
        let tops = nodes
            .iter()
            .filter(|n| n.bag.contains(v) && n.parent.is_none_or(|p| !nodes[p].bag.contains(v)))
            .count();
        if tops > 1 {
            violations.push(format!(
                "vertex {} occurs in {tops} disconnected parts of the tree",
                h.name(v)
            ));
        }
    }
    GhtdReport {
        width: d.width(),
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::tests_support::h0;
    use crate::nestset::nsw;

    #[test]
    fn decomposes_h0() {
        let h = h0();
        let neo = Neo::new(vec![
            h.vertex_set(["c", "f"]).unwrap(),
            h.vertex_set(["b", "e"]).unwrap(),
            h.vertex_set(["a", "d"]).unwrap(),
        ]);
        let d = ghtd_from_neo(&h, &neo).unwrap();
        let report = validate_ghtd(&h, &d);
        assert!(report.is_valid(), "{:?}", report.violations);
        assert!(report.width <= 2);
        let text = d.display(&h).to_string();
        assert!(
            text.starts_with("node 0 parent=- bag={a,b,c,d,f} cover={e1,e3}\n"),
            "{text}"
        );
    }

    #[test]
    fn single_edge_has_width_one() {
        let h = Hypergraph::from_edges([("e", ["a", "b", "c"])]);
        let neo = Neo::new(h.vertices().iter().map(VertexSet::singleton).collect());
        let d = ghtd_from_neo(&h, &neo).unwrap();
        assert!(validate_ghtd(&h, &d).is_valid());
        assert_eq!(d.width(), 1);
    }

    #[test]
    fn four_cycle_decomposes_within_its_width() {
        let h = Hypergraph::from_edges([
            ("e1", ["v1", "v2"]),
            ("e2", ["v2", "v3"]),
            ("e3", ["v3", "v4"]),
            ("e4", ["v4", "v1"]),
        ]);
        let (k, neo) = nsw(&h);
        assert_eq!(k, 3);
        let d = ghtd_from_neo(&h, &neo).unwrap();
        let report = validate_ghtd(&h, &d);
        assert!(report.is_valid() && report.width <= 3);
    }

    #[test]
    fn validator_catches_broken_decompositions() {
        let h = Hypergraph::from_edges([("x", ["a", "b"]), ("y", ["b", "c"])]);
        let a = h.vertex_set(["a", "b"]).unwrap();
        let bc = h.vertex_set(["b", "c"]).unwrap();
        let c = h.vertex_set(["c"]).unwrap();
        // b appears in nodes 0 and 2 but not in node 1 between them.
        let split = Ghtd::new(vec![
            GhtdNode {
                parent: None,
                bag: a.clone(),
                cover: vec![EdgeId(0)],
            },
            GhtdNode {
                parent: Some(0),
                bag: c.clone(),
                cover: vec![EdgeId(1)],
            },
            GhtdNode {
                parent: Some(1),
                bag: bc.clone(),
                cover: vec![EdgeId(1)],
            },
        ])
        .unwrap();
        let report = validate_ghtd(&h, &split);
        assert!(report.violations.iter().any(|v| v.contains("vertex b")));

        let missing = Ghtd::new(vec![GhtdNode {
            parent: None,
            bag: a,
            cover: vec![EdgeId(0)],
        }])
        .unwrap();
        let report = validate_ghtd(&h, &missing);
        assert_eq!(report.violations, ["edge y is in no bag"]);

        assert!(Ghtd::new(vec![
            GhtdNode {
                parent: None,
                bag: bc.clone(),
                cover: vec![]
            },
            GhtdNode {
                parent: Some(3),
                bag: bc,
                cover: vec![]
            },
        ])
        .is_err());
    }

    #[test]
    fn rejects_invalid_orderings() {
        let h = h0();
        let bad = Neo::new(vec![h.vertex_set(["a", "d"]).unwrap()]);
        assert!(matches!(
            ghtd_from_neo(&h, &bad),
            Err(Error::InvalidInput(_))
        ));
        assert!(ghtd_from_neo(&h.empty_like(), &Neo::default()).is_err());
    }
}
