use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::text::{is_ident_char, strip_comment};

/// A simple loop-free graph with named vertices and ordered edges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimpleGraph {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// A graph on `v1..vn` with the given edges (0-based endpoints).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = SimpleGraph::new();
        for i in 1..=n {
            g.add_vertex(&format!("v{i}"));
        }
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::invalid(format!(
                    "edge ({a},{b}) leaves the {n} vertices"
                )));
            }
            g.add_edge_ids(a, b)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, name: &str) -> usize {
        match self.vertices.iter().position(|v| v == name) {
            Some(i) => i,
            None => {
                self.vertices.push(name.to_string());
                self.vertices.len() - 1
            }
        }
    }

    pub fn add_edge(&mut self, a: &str, b: &str) -> Result<()> {
        let a = self.add_vertex(a);
        let b = self.add_vertex(b);
        self.add_edge_ids(a, b)
    }

    fn add_edge_ids(&mut self, a: usize, b: usize) -> Result<()> {
        if a == b {
            return Err(Error::invalid(format!("loop at {}", self.vertices[a])));
        }
        let e = (a.min(b), a.max(b));
        if self.edges.contains(&e) {
            return Err(Error::invalid(format!(
                "edge {}-{} appears twice",
                self.vertices[e.0], self.vertices[e.1]
            )));
        }
        self.edges.push(e);
        Ok(())
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Edges in insertion order, endpoints as vertex indices.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn is_vertex_cover(&self, cover: &[usize]) -> bool {
        self.edges
            .iter()
            .all(|(a, b)| cover.contains(a) || cover.contains(b))
    }

    /// Some vertex cover with at most `k` vertices, by exhaustive search.
    pub fn vertex_cover_at_most(&self, k: usize) -> Result<Option<Vec<usize>>> {
        let n = self.num_vertices();
        if n > 20 {
            return Err(Error::SizeGuard(format!(
                "{n} vertices exceed the cover oracle limit of 20"
            )));
        }
        Ok((0u32..1 << n)
            .filter(|s| s.count_ones() as usize <= k)
            .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect::<Vec<_>>())
            .find(|c| self.is_vertex_cover(c)))
    }
}

impl FromStr for SimpleGraph {
    type Err = Error;

    /// One edge `u v` or one isolated vertex `u` per line; `#` comments.
    fn from_str(text: &str) -> Result<Self> {
        let mut g = SimpleGraph::new();
        for (i, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            let toks: Vec<(usize, &str)> = line
                .split_whitespace()
                .map(|t| (t.as_ptr() as usize - line.as_ptr() as usize + 1, t))
                .collect();
            if let Some(&(col, t)) = toks.iter().find(|(_, t)| !t.chars().all(is_ident_char)) {
                return Err(Error::parse(
                    i + 1,
                    col,
                    format!("invalid vertex name `{t}`"),
                ));
            }
            match toks[..] {
                [] => {}
                [(_, v)] => {
                    g.add_vertex(v);
                }
                [(_, a), (col, b)] => g
                    .add_edge(a, b)
                    .map_err(|e| Error::parse(i + 1, col, e.to_string()))?,
                [_, _, (col, _), ..] => {
                    return Err(Error::parse(
                        i + 1,
                        col,
                        "expected `u v` or a single vertex",
                    ));
                }
            }
        }
        Ok(g)
    }
}

impl fmt::Display for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut touched = BTreeSet::new();
        for &(a, b) in &self.edges {
            touched.insert(a);
            touched.insert(b);
        }
        for &(a, b) in &self.edges {
            writeln!(f, "{} {}", self.vertices[a], self.vertices[b])?;
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if !touched.contains(&i) {
                writeln!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

/// One representative of every isomorphism class of simple graphs on
/// exactly `n` vertices (`n ≤ 6`), named `v1..vn`.
pub fn graphs_up_to_isomorphism(n: usize) -> Vec<SimpleGraph> {
    assert!(n <= 6, "isomorphism enumeration is limited to 6 vertices");
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = (0..pairs.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| pairs[i])
            .collect();
        let canon = perms
            .iter()
            .map(|p| {
                let mut e: Vec<(usize, usize)> = edges
                    .iter()
                    .map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
                    .collect();
                e.sort();
                e
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(SimpleGraph::from_edges(n, &edges).expect("pairs are simple"));
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_isomorphism_classes() {
        let counts: Vec<usize> = (1..=5).map(|n| graphs_up_to_isomorphism(n).len()).collect();
        assert_eq!(counts, [1, 2, 4, 11, 34]);
    }

    #[test]
    fn parse_and_print() {
        let g: SimpleGraph = "a b\nb c # path\nd\n".parse().unwrap();
        assert_eq!(g.num_vertices(), 4);
        assert_eq!(g.num_edges(), 2);
        assert_eq!(
            g.to_string().parse::<SimpleGraph>().unwrap().edges(),
            g.edges()
        );
        let err = "a a\n".parse::<SimpleGraph>().unwrap_err();
        assert!(matches!(
            err,
            Error::Parse {
                line: 1,
                column: 3,
                ..
            }
        ));
    }

    #[test]
    fn covers() {
        let g: SimpleGraph = "a b\nb c\n".parse().unwrap();
        assert_eq!(g.vertex_cover_at_most(1).unwrap(), Some(vec![1]));
        let tri: SimpleGraph = "a b\nb c\na c\n".parse().unwrap();
        assert_eq!(tri.vertex_cover_at_most(1).unwrap(), None);
    }
}
