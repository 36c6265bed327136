//! `label(v1,...,vn).` line format.

use std::fmt;
use std::str::FromStr;

use super::{Hypergraph, HypergraphBuilder};
use crate::error::Error;
use crate::text::{parse_atom, strip_comment};

impl FromStr for Hypergraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut b = HypergraphBuilder::new();
        for (i, raw) in s.lines().enumerate() {
            let line = strip_comment(raw);
            if line.trim().is_empty() {
                continue;
            }
            let atom = parse_atom(line, i + 1, false, false)?;
            b.edge(&atom.name, &atom.args);
        }
        Ok(b.build())
    }
}

/// Writes one line per label, so the output parses back to an equal
/// hypergraph. Isolated vertices cannot be expressed and are omitted.
impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.edges {
            let vs: Vec<&str> = self.names(&e.vertices).collect();
            for label in &e.labels {
                writeln!(f, "{}({}).", label, vs.join(","))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_blank_lines_and_optional_periods() {
        let text = "# H0\n\ne1(a,b,c,d).\ne2(a,d,e)   # trailing comment\n  e3(c, d, f).\n";
        let h: Hypergraph = text.parse().unwrap();
        assert_eq!(h.num_edges(), 3);
        assert_eq!(h.fmt_set(h.vertices()), "{a,b,c,d,e,f}");
    }

    #[test]
    fn round_trips_through_display() {
        let h: Hypergraph = "r(x,y).\ns(y,x).\nt(z).\n".parse().unwrap();
        let again: Hypergraph = h.to_string().parse().unwrap();
        assert_eq!(h, again);
    }

    #[test]
    fn reports_line_and_column() {
        let err = "e(a,b).\n\n  f(a,,b).\n".parse::<Hypergraph>().unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                column: 7,
                message: "expected identifier, found `,`".into()
            }
        );
    }
}
