use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, HypergraphBuilder};

/// A variable with a phase. Variables are numbered from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit {
    var: u32,
    positive: bool,
}

impl Lit {
    pub fn new(var: u32, positive: bool) -> Self {
        assert!(var > 0, "variables are numbered from 1");
        Lit { var, positive }
    }

    /// From the signed DIMACS encoding.
    pub fn from_dimacs(x: i32) -> Self {
        Lit::new(x.unsigned_abs(), x > 0)
    }

    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            self.var as i64
        } else {
            -(self.var as i64)
        }
    }

    pub fn var(self) -> u32 {
        self.var
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    pub fn negated(self) -> Lit {
        Lit {
            var: self.var,
            positive: !self.positive,
        }
    }
}

/// A non-tautological clause, literals sorted by variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause(Vec<Lit>);

impl Clause {
    /// `None` for tautologies.
    pub fn new(lits: impl IntoIterator<Item = Lit>) -> Option<Clause> {
        let mut v: Vec<Lit> = lits.into_iter().collect();
        v.sort();
        v.dedup();
        if v.windows(2).any(|w| w[0].var == w[1].var) {
            return None;
        }
        Some(Clause(v))
    }

    pub fn empty() -> Clause {
        Clause(Vec::new())
    }

    pub fn lits(&self) -> &[Lit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, l: Lit) -> bool {
        self.0.binary_search(&l).is_ok()
    }

    pub fn mentions(&self, var: u32) -> bool {
        self.0.iter().any(|l| l.var == var)
    }

    pub fn vars(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().map(|l| l.var)
    }

    /// The clause without the variables in `s`.
    pub fn without(&self, s: &[u32]) -> Clause {
        Clause(
            self.0
                .iter()
                .copied()
                .filter(|l| !s.contains(&l.var))
                .collect(),
        )
    }

    /// Whether the assignment (indexed by variable, slot 0 unused) satisfies it.
    pub fn satisfied_by(&self, value: &[bool]) -> bool {
        self.0.iter().any(|l| value[l.var as usize] == l.positive)
    }
}

/// A CNF formula as a set of clauses over variables `1..=num_vars`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CnfFormula {
    num_vars: u32,
    clauses: BTreeSet<Clause>,
}

impl CnfFormula {
    pub fn new(num_vars: u32) -> Self {
        CnfFormula {
            num_vars,
            clauses: BTreeSet::new(),
        }
    }

    /// Builds a formula from DIMACS-style signed literals; tautologies are
    /// dropped and `num_vars` grows to cover every variable used.
    pub fn from_clauses<I, C>(num_vars: u32, clauses: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: IntoIterator<Item = i32>,
    {
        let mut f = CnfFormula::new(num_vars);
        for c in clauses {
            f.add_clause(c.into_iter().map(Lit::from_dimacs));
        }
        f
    }

    /// Adds a clause unless it is a tautology; returns whether it is new.
    pub fn add_clause(&mut self, lits: impl IntoIterator<Item = Lit>) -> bool {
        match Clause::new(lits) {
            Some(c) => self.insert(c),
            None => false,
        }
    }

    pub fn insert(&mut self, c: Clause) -> bool {
        if let Some(m) = c.vars().max() {
            self.num_vars = self.num_vars.max(m);
        }
        self.clauses.insert(c)
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &BTreeSet<Clause> {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.first().is_some_and(Clause::is_empty)
    }

    /// Variables occurring in some clause.
    pub fn used_vars(&self) -> BTreeSet<u32> {
        self.clauses.iter().flat_map(|c| c.vars()).collect()
    }

    /// `F − s`: every clause restricted to the variables outside `s`.
    pub fn without(&self, s: &[u32]) -> BTreeSet<Clause> {
        self.clauses.iter().map(|c| c.without(s)).collect()
    }

    pub fn satisfied_by(&self, value: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.satisfied_by(value))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c.lits() {
                out.push_str(&format!("{} ", l.to_dimacs()));
            }
            out.push_str("0\n");
        }
        out
    }

    pub(crate) fn set_clauses(&mut self, clauses: BTreeSet<Clause>) {
        self.clauses = clauses;
    }
}

/// Vertex name of variable `v` in [`formula_hypergraph`].
pub fn var_name(v: u32) -> String {
    format!("x{v}")
}

/// Inverse of [`var_name`].
pub fn var_of_name(name: &str) -> Option<u32> {
    name.strip_prefix('x')?.parse().ok().filter(|&v| v > 0)
}

/// One vertex `x<i>` per declared variable, one edge per clause scope.
pub fn formula_hypergraph(f: &CnfFormula) -> Hypergraph {
    let mut b = HypergraphBuilder::new();
    for v in 1..=f.num_vars {
        b.vertex(&var_name(v));
    }
    for (i, c) in f.clauses.iter().enumerate() {
        b.edge(&format!("c{}", i + 1), c.vars().map(var_name));
    }
    b.build()
}

impl FromStr for CnfFormula {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut header: Option<(u32, usize)> = None;
        let mut f = CnfFormula::new(0);
        let mut current: Vec<Lit> = Vec::new();
        let mut read = 0usize;
        let mut last = (1, 1);
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            let trimmed = line.trim_start();
            if trimmed.starts_with('c') || trimmed.is_empty() {
                continue;
            }
            if trimmed.starts_with('%') {
                break;
            }
            if trimmed.starts_with('p') {
                let col = line.len() - trimmed.len() + 1;
                if header.is_some() {
                    return Err(Error::parse(lineno, col, "duplicate problem line"));
                }
                let parts: Vec<&str> = trimmed.split_whitespace().collect();
                let parsed = match parts[..] {
                    ["p", "cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                    _ => None,
                };
                let (v, c) = parsed.ok_or_else(|| {
                    Error::parse(lineno, col, "expected `p cnf <vars> <clauses>`")
                })?;
                f.num_vars = v;
                header = Some((v, c));
                continue;
            }
            let Some((num_vars, _)) = header else {
                return Err(Error::parse(lineno, 1, "clause before the `p cnf` line"));
            };
            for (col, tok) in tokens(line) {
                last = (lineno, col);
                let x: i32 = tok
                    .parse()
                    .map_err(|_| Error::parse(lineno, col, format!("invalid literal `{tok}`")))?;
                if x == 0 {
                    f.add_clause(current.drain(..));
                    read += 1;
                    continue;
                }
                if x.unsigned_abs() > num_vars {
                    return Err(Error::parse(
                        lineno,
                        col,
                        format!(
                            "variable {} exceeds the declared {num_vars}",
                            x.unsigned_abs()
                        ),
                    ));
                }
                current.push(Lit::from_dimacs(x));
            }
        }
        let Some((_, declared)) = header else {
            return Err(Error::parse(1, 1, "missing `p cnf` line"));
        };
        if !current.is_empty() {
            return Err(Error::parse(
                last.0,
                last.1,
                "last clause is not terminated by 0",
            ));
        }
        if read != declared {
            return Err(Error::parse(
                last.0,
                last.1,
                format!("header declares {declared} clauses, found {read}"),
            ));
        }
        Ok(f)
    }
}

fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace().map(move |tok| {
        let offset = tok.as_ptr() as usize - line.as_ptr() as usize;
        (line[..offset].chars().count() + 1, tok)
    })
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dimacs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tautologies_and_duplicates_collapse() {
        let f = CnfFormula::from_clauses(3, [vec![1, -1, 2], vec![2, 3], vec![3, 2, 2]]);
        assert_eq!(f.len(), 1);
        assert_eq!(f.num_vars(), 3);
    }

    #[test]
    fn hypergraph_of_scopes() {
        let f = CnfFormula::from_clauses(3, [vec![1, -2], vec![2, 3]]);
        let h = formula_hypergraph(&f);
        assert_eq!(h.num_edges(), 2);
        let f = CnfFormula::from_clauses(1, [vec![1], vec![-1]]);
        assert_eq!(formula_hypergraph(&f).num_edges(), 1);
        let tri = CnfFormula::from_clauses(3, [vec![1, 2], vec![-2, 3], vec![1, -3]]);
        assert_eq!(crate::nestset::nsw(&formula_hypergraph(&tri)).0, 2);
    }

    #[test]
    fn dimacs_round_trip() {
        let text = "c example\np cnf 3 2\n1 -2 0\n2\n3 0\n";
        let f: CnfFormula = text.parse().unwrap();
        assert_eq!(f, CnfFormula::from_clauses(3, [vec![1, -2], vec![2, 3]]));
        assert_eq!(f.to_dimacs().parse::<CnfFormula>().unwrap(), f);
        let empty: CnfFormula = "p cnf 1 1\n0\n".parse().unwrap();
        assert!(empty.has_empty_clause());
    }

    #[test]
    fn dimacs_errors() {
        let err = "p cnf 2 1\n1 3 0\n".parse::<CnfFormula>().unwrap_err();
        assert_eq!(err, Error::parse(2, 3, "variable 3 exceeds the declared 2"));
        let err = "p cnf 2 1\n1 x 0\n".parse::<CnfFormula>().unwrap_err();
        assert_eq!(err, Error::parse(2, 3, "invalid literal `x`"));
        let err = "1 0\n".parse::<CnfFormula>().unwrap_err();
        assert_eq!(err, Error::parse(1, 1, "clause before the `p cnf` line"));
        let err = "p cnf 2 2\n1 0\n".parse::<CnfFormula>().unwrap_err();
        assert_eq!(
            err,
            Error::parse(2, 3, "header declares 2 clauses, found 1")
        );
    }
}
