use std::fmt;

use super::expand::find_k_nest_set;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexSet};
use crate::text::{is_ident_char, strip_comment};

/// A nest-set elimination ordering: the sets are removed front to back.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Neo(Vec<VertexSet>);

impl Neo {
    pub fn new(sets: Vec<VertexSet>) -> Self {
        Neo(sets)
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.0
    }

    pub fn into_sets(self) -> Vec<VertexSet> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest entry size; 0 for the empty ordering.
    pub fn width(&self) -> usize {
        self.0.iter().map(VertexSet::len).max().unwrap_or(0)
    }

    /// Removes `r` from every entry and drops entries that become empty.
    pub fn trimmed(&self, r: &VertexSet) -> Neo {
        Neo(self
            .0
            .iter()
            .map(|s| s.difference(r))
            .filter(|s| !s.is_empty())
            .collect())
    }

    /// One entry per line, vertex names separated by commas.
    pub fn to_text(&self, h: &Hypergraph) -> String {
        let mut out = String::new();
        for s in &self.0 {
            out.push_str(&h.names(s).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    /// `({c,f}, {b,e}, {a,d})`-style rendering.
    pub fn display<'a>(&'a self, h: &'a Hypergraph) -> impl fmt::Display + 'a {
        NeoDisplay { neo: self, h }
    }

    /// Parses the line format written by [`Neo::to_text`]. Blank lines and
    /// `#` comments are skipped; names must be vertices of `h`.
    pub fn parse(h: &Hypergraph, text: &str) -> Result<Neo> {
        let mut sets = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = strip_comment(raw);
            if line.trim().is_empty() {
                continue;
            }
            let mut set = VertexSet::new();
            let mut col = 0;
            for part in line.split(',') {
                let start = col + (part.len() - part.trim_start().len());
                let name = part.trim();
                let column = line[..start].chars().count() + 1;
                if name.is_empty() || !name.chars().all(is_ident_char) {
                    return Err(Error::parse(
                        i + 1,
                        column,
                        format!("invalid vertex name `{name}`"),
                    ));
                }
                let v = h
                    .vertex_id(name)
                    .map_err(|_| Error::parse(i + 1, column, format!("unknown vertex `{name}`")))?;
                set.insert(v);
                col += part.len() + 1;
            }
            sets.push(set);
        }
        Ok(Neo(sets))
    }
}

struct NeoDisplay<'a> {
    neo: &'a Neo,
    h: &'a Hypergraph,
}

impl fmt::Display for NeoDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.neo.0.iter().map(|s| self.h.fmt_set(s)).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Why a sequence is not a k-NEO.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeoViolation {
    /// Offending entry, or `None` when the sequence leaves vertices behind.
    pub index: Option<usize>,
    pub message: String,
}

impl fmt::Display for NeoViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            Some(i) => write!(f, "entry {}: {}", i + 1, self.message),
            None => f.write_str(&self.message),
        }
    }
}

/// Checks that every entry is a nonempty nest-set of size `≤ k` of the
/// hypergraph left after removing its predecessors, and that nothing is left
/// at the end.
pub fn check_neo(h: &Hypergraph, neo: &Neo, k: usize) -> Result<(), NeoViolation> {
    let mut rest = h.clone();
    for (i, s) in neo.sets().iter().enumerate() {
        let fail = |message: String| NeoViolation {
            index: Some(i),
            message,
        };
        if s.is_empty() {
            return Err(fail("empty nest-set".into()));
        }
        if s.len() > k {
            return Err(fail(format!(
                "{} has {} > {k} vertices",
                h.fmt_set(s),
                s.len()
            )));
        }
        if !s.is_subset(rest.vertices()) {
            return Err(fail(format!(
                "{} is not contained in the remaining vertices",
                h.fmt_set(s)
            )));
        }
        if !rest.is_nest_set(s).unwrap_or(false) {
            return Err(fail(format!("{} is not a nest-set", h.fmt_set(s))));
        }
        rest = rest.remove_unchecked(s);
    }
    if rest.vertices().is_empty() {
        Ok(())
    } else {
        Err(NeoViolation {
            index: None,
            message: format!(
                "vertices {} are never eliminated",
                h.fmt_set(rest.vertices())
            ),
        })
    }
}

pub fn validate_neo(h: &Hypergraph, neo: &Neo, k: usize) -> bool {
    check_neo(h, neo, k).is_ok()
}

/// Greedily removes the first k-nest-set found until nothing is left; `None`
/// iff `nsw(h) > k`.
pub fn compute_neo(h: &Hypergraph, k: usize) -> Option<Neo> {
    let mut rest = h.clone();
    let mut sets = Vec::new();
    while !rest.vertices().is_empty() {
        let s = find_k_nest_set(&rest, k)?;
        rest = rest.remove_unchecked(&s);
        sets.push(s);
    }
    Some(Neo(sets))
}

/// Nest-set width with a witnessing ordering. Isolated vertices are dropped
/// first; the empty hypergraph has width 0.
pub fn nsw(h: &Hypergraph) -> (usize, Neo) {
    nsw_at_most(h, usize::MAX).expect("every hypergraph has a |V|-NEO")
}

/// Like [`nsw`], but gives up once widths above `max_k` would be needed.
pub fn nsw_at_most(h: &Hypergraph, max_k: usize) -> Option<(usize, Neo)> {
    let h = h.without_isolated();
    if h.vertices().is_empty() {
        return Some((0, Neo::default()));
    }
    (1..=h.num_vertices().min(max_k)).find_map(|k| compute_neo(&h, k).map(|neo| (k, neo)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::tests_support::h0;

    fn neo(h: &Hypergraph, sets: &[&[&str]]) -> Neo {
        Neo::new(
            sets.iter()
                .map(|s| h.vertex_set(s.iter()).unwrap())
                .collect(),
        )
    }

    #[test]
    fn validates_the_h0_orderings() {
        let h = h0();
        let good = neo(&h, &[&["c", "f"], &["b", "e"], &["a", "d"]]);
        assert!(validate_neo(&h, &good, 2));
        assert!(!validate_neo(&h, &good, 1));
        let bad = neo(&h, &[&["a", "d"], &["c", "f"], &["b", "e"]]);
        let err = check_neo(&h, &bad, 2).unwrap_err();
        assert_eq!(err.index, Some(0));
        let short = neo(&h, &[&["c", "f"], &["b", "e"]]);
        assert_eq!(check_neo(&h, &short, 2).unwrap_err().index, None);
    }

    #[test]
    fn nsw_of_small_hypergraphs() {
        let h = h0();
        let (k, witness) = nsw(&h);
        assert_eq!(k, 2);
        assert!(validate_neo(&h, &witness, 2));
        assert_eq!(compute_neo(&h, 1), None);
        assert_eq!(nsw(&h.empty_like()), (0, Neo::default()));
        assert_eq!(compute_neo(&h.empty_like(), 1), Some(Neo::default()));
        let single = Hypergraph::from_edges([("e", ["a", "b", "c"])]);
        assert_eq!(nsw(&single).0, 1);
        assert_eq!(nsw_at_most(&h, 1), None);
    }

    #[test]
    fn neo_text_round_trip() {
        let h = h0();
        let good = neo(&h, &[&["c", "f"], &["b", "e"], &["a", "d"]]);
        assert_eq!(good.to_text(&h), "c,f\nb,e\na,d\n");
        assert_eq!(Neo::parse(&h, "# order\nc, f\n\nb,e\na,d").unwrap(), good);
        assert_eq!(good.display(&h).to_string(), "({c,f}, {b,e}, {a,d})");
        let err = Neo::parse(&h, "c,f\nb, zz\n").unwrap_err();
        assert_eq!(err, Error::parse(2, 4, "unknown vertex `zz`"));
    }
}
