use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, HypergraphBuilder};
use crate::text::{is_ident_char, parse_atom, strip_comment};

/// A finite set of equal-length tuples over `0..|Dom|`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Relation {
    arity: usize,
    tuples: BTreeSet<Vec<u32>>,
}

impl Relation {
    pub fn new(arity: usize) -> Self {
        Relation {
            arity,
            tuples: BTreeSet::new(),
        }
    }

    pub fn from_tuples<I>(arity: usize, tuples: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let mut r = Relation::new(arity);
        for t in tuples {
            if t.len() != arity {
                return Err(Error::invalid(format!(
                    "tuple {t:?} does not have arity {arity}"
                )));
            }
            r.tuples.insert(t);
        }
        Ok(r)
    }

    /// `Dom^arity`.
    pub fn full(arity: usize, domain: u32) -> Self {
        let mut r = Relation::new(arity);
        r.tuples = all_tuples(arity, domain).collect();
        r
    }

    pub(crate) fn insert(&mut self, t: Vec<u32>) -> bool {
        debug_assert_eq!(t.len(), self.arity);
        self.tuples.insert(t)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, t: &[u32]) -> bool {
        self.tuples.contains(t)
    }

    pub fn tuples(&self) -> &BTreeSet<Vec<u32>> {
        &self.tuples
    }

    pub(crate) fn retain(&mut self, f: impl FnMut(&Vec<u32>) -> bool) {
        self.tuples.retain(f);
    }

    /// `self × Dom^extra`, new columns appended.
    pub fn product(&self, extra: usize, domain: u32) -> Relation {
        let mut out = Relation::new(self.arity + extra);
        for t in &self.tuples {
            for tail in all_tuples(extra, domain) {
                let mut row = t.clone();
                row.extend(tail);
                out.tuples.insert(row);
            }
        }
        out
    }
}

/// All tuples of `Dom^arity` in lexicographic order.
pub(crate) fn all_tuples(arity: usize, domain: u32) -> impl Iterator<Item = Vec<u32>> {
    let mut next = if domain == 0 && arity > 0 {
        None
    } else {
        Some(vec![0u32; arity])
    };
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut succ = current.clone();
        let mut i = arity;
        while i > 0 {
            i -= 1;
            succ[i] += 1;
            if succ[i] < domain {
                next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

/// A signed atom together with its relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Literal {
    pub symbol: String,
    pub polarity: Polarity,
    pub vars: Vec<String>,
    pub relation: Relation,
}

impl Literal {
    pub fn positive(symbol: &str, vars: &[&str], relation: Relation) -> Self {
        Self::with(symbol, Polarity::Positive, vars, relation)
    }

    pub fn negative(symbol: &str, vars: &[&str], relation: Relation) -> Self {
        Self::with(symbol, Polarity::Negative, vars, relation)
    }

    fn with(symbol: &str, polarity: Polarity, vars: &[&str], relation: Relation) -> Self {
        Literal {
            symbol: symbol.to_string(),
            polarity,
            vars: vars.iter().map(|v| v.to_string()).collect(),
            relation,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.polarity == Polarity::Positive
    }

    pub fn mentions(&self, v: &str) -> bool {
        self.vars.iter().any(|x| x == v)
    }

    /// Whether the assignment `value` satisfies this literal.
    pub fn holds(&self, value: impl Fn(&str) -> u32) -> bool {
        let t: Vec<u32> = self.vars.iter().map(|v| value(v)).collect();
        self.relation.contains(&t) == self.is_positive()
    }

    pub(crate) fn has_repeated_vars(&self) -> bool {
        let set: HashSet<&String> = self.vars.iter().collect();
        set.len() != self.vars.len()
    }
}

/// Size measures of an instance.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Sizes {
    pub literals: usize,
    pub max_arity: usize,
    pub max_relation: usize,
    /// Sum over literals of `|R| · ar(R)`.
    pub total: usize,
}

/// A boolean conjunctive query with negation over a finite-domain database.
/// Every relation symbol is used by exactly one literal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryInstance {
    literals: Vec<Literal>,
    domain: u32,
    fresh: usize,
}

impl QueryInstance {
    pub fn new(literals: Vec<Literal>, domain: u32) -> Result<Self> {
        let mut seen = HashSet::new();
        for l in &literals {
            if !seen.insert(l.symbol.as_str()) {
                return Err(Error::invalid(format!("symbol {} is used twice", l.symbol)));
            }
            if l.relation.arity() != l.vars.len() {
                return Err(Error::invalid(format!(
                    "literal {} has {} variables but its relation has arity {}",
                    l.symbol,
                    l.vars.len(),
                    l.relation.arity()
                )));
            }
            if let Some(t) = l
                .relation
                .tuples()
                .iter()
                .find(|t| t.iter().any(|&c| c >= domain))
            {
                return Err(Error::invalid(format!(
                    "relation {} has tuple {t:?} outside the domain",
                    l.symbol
                )));
            }
        }
        Ok(QueryInstance {
            literals,
            domain,
            fresh: 0,
        })
    }

    /// Pairs parsed query literals with the relations of `db`.
    pub fn from_parts(query: &[LiteralSpec], db: &Database) -> Result<Self> {
        let literals = query
            .iter()
            .map(|spec| {
                let relation = db.relations.get(&spec.symbol).cloned().ok_or_else(|| {
                    Error::invalid(format!("no relation for symbol {}", spec.symbol))
                })?;
                Ok(Literal {
                    symbol: spec.symbol.clone(),
                    polarity: spec.polarity,
                    vars: spec.vars.clone(),
                    relation,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        QueryInstance::new(literals, db.domain)
    }

    /// Parses a query text and a database text.
    pub fn parse(query: &str, db: &str) -> Result<Self> {
        Self::from_parts(&parse_query(query)?, &db.parse()?)
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn literal(&self, symbol: &str) -> Option<&Literal> {
        self.literals.iter().find(|l| l.symbol == symbol)
    }

    pub fn domain(&self) -> u32 {
        self.domain
    }

    /// Variables in first-appearance order, the canonical variable order.
    pub fn variables(&self) -> Vec<String> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for l in &self.literals {
            for v in &l.vars {
                if seen.insert(v.as_str()) {
                    out.push(v.clone());
                }
            }
        }
        out
    }

    /// Variables occurring in no positive literal, in canonical order.
    pub fn unsafe_variables(&self) -> Vec<String> {
        let covered: HashSet<&str> = self
            .literals
            .iter()
            .filter(|l| l.is_positive())
            .flat_map(|l| l.vars.iter().map(String::as_str))
            .collect();
        self.variables()
            .into_iter()
            .filter(|v| !covered.contains(v.as_str()))
            .collect()
    }

    pub fn is_safe(&self) -> bool {
        self.unsafe_variables().is_empty()
    }

    pub fn sizes(&self) -> Sizes {
        Sizes {
            literals: self.literals.len(),
            max_arity: self
                .literals
                .iter()
                .map(|l| l.vars.len())
                .max()
                .unwrap_or(0),
            max_relation: self
                .literals
                .iter()
                .map(|l| l.relation.len())
                .max()
                .unwrap_or(0),
            total: self
                .literals
                .iter()
                .map(|l| l.relation.len() * l.vars.len())
                .sum(),
        }
    }

    /// A symbol `<prefix>#<n>` not used by any literal.
    pub(crate) fn fresh_symbol(&mut self, prefix: &str) -> String {
        loop {
            self.fresh += 1;
            let s = format!("{prefix}#{}", self.fresh);
            if self.literal(&s).is_none() {
                return s;
            }
        }
    }

    pub(crate) fn literals_mut(&mut self) -> &mut Vec<Literal> {
        &mut self.literals
    }

    pub(crate) fn with_literals(&self, literals: Vec<Literal>) -> QueryInstance {
        QueryInstance {
            literals,
            domain: self.domain,
            fresh: self.fresh,
        }
    }

    pub(crate) fn with_domain(mut self, domain: u32) -> QueryInstance {
        self.domain = domain;
        self
    }

    /// The query in the line format accepted by [`parse_query`].
    pub fn query_text(&self) -> String {
        let mut out = String::new();
        for l in &self.literals {
            let sign = if l.is_positive() { "" } else { "!" };
            out.push_str(&format!("{sign}{}({}).\n", l.symbol, l.vars.join(",")));
        }
        out
    }

    /// The relations in the database format.
    pub fn database(&self) -> Database {
        Database {
            domain: self.domain,
            relations: self
                .literals
                .iter()
                .map(|l| (l.symbol.clone(), l.relation.clone()))
                .collect(),
        }
    }
}

/// The hypergraph with one edge per distinct literal scope.
pub fn query_hypergraph(q: &QueryInstance) -> Hypergraph {
    let mut b = HypergraphBuilder::new();
    for l in &q.literals {
        b.edge(&l.symbol, &l.vars);
    }
    b.build()
}

/// A parsed query line: `R(x,y)` or `!R(x,y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiteralSpec {
    pub symbol: String,
    pub polarity: Polarity,
    pub vars: Vec<String>,
}

pub fn parse_query(text: &str) -> Result<Vec<LiteralSpec>> {
    let mut out: Vec<LiteralSpec> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let atom = parse_atom(line, i + 1, true, true)?;
        if out.iter().any(|l| l.symbol == atom.name) {
            let column = line.find(atom.name.as_str()).unwrap_or(0) + 1;
            return Err(Error::parse(
                i + 1,
                column,
                format!("symbol `{}` is used by an earlier literal", atom.name),
            ));
        }
        out.push(LiteralSpec {
            symbol: atom.name,
            polarity: if atom.negated {
                Polarity::Negative
            } else {
                Polarity::Positive
            },
            vars: atom.args,
        });
    }
    Ok(out)
}

/// Domain size plus named relations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Database {
    pub domain: u32,
    pub relations: BTreeMap<String, Relation>,
}

impl FromStr for Database {
    type Err = Error;

    /// `domain <N>`, then blocks of `relation <symbol> <arity>` followed by
    /// one tuple per line. A 0-ary tuple is written `()`.
    fn from_str(text: &str) -> Result<Self> {
        let mut domain: Option<u32> = None;
        let mut relations: BTreeMap<String, Relation> = BTreeMap::new();
        let mut current: Option<String> = None;
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = strip_comment(raw);
            let tokens = tokenize(line);
            let Some(&(col, first)) = tokens.first() else {
                continue;
            };
            let Some(n) = domain else {
                if first != "domain" {
                    return Err(Error::parse(lineno, col, "expected `domain <N>` first"));
                }
                let [_, (c, size)] = tokens[..] else {
                    return Err(Error::parse(lineno, col, "expected `domain <N>`"));
                };
                domain = Some(size.parse().map_err(|_| {
                    Error::parse(lineno, c, format!("invalid domain size `{size}`"))
                })?);
                continue;
            };
            match first {
                "domain" => return Err(Error::parse(lineno, col, "domain declared twice")),
                "relation" => {
                    let [_, (sc, sym), (ac, ar)] = tokens[..] else {
                        return Err(Error::parse(
                            lineno,
                            col,
                            "expected `relation <symbol> <arity>`",
                        ));
                    };
                    if !sym.chars().all(is_ident_char) {
                        return Err(Error::parse(lineno, sc, format!("invalid symbol `{sym}`")));
                    }
                    if relations.contains_key(sym) {
                        return Err(Error::parse(
                            lineno,
                            sc,
                            format!("relation `{sym}` declared twice"),
                        ));
                    }
                    let arity: usize = ar
                        .parse()
                        .map_err(|_| Error::parse(lineno, ac, format!("invalid arity `{ar}`")))?;
                    relations.insert(sym.to_string(), Relation::new(arity));
                    current = Some(sym.to_string());
                }
                _ => {
                    let Some(sym) = &current else {
                        return Err(Error::parse(lineno, col, "tuple outside a relation block"));
                    };
                    let rel = relations.get_mut(sym).expect("current relation exists");
                    let tuple = if tokens.len() == 1 && first == "()" {
                        Vec::new()
                    } else {
                        tokens
                            .iter()
                            .map(|&(c, tok)| match tok.parse::<u32>() {
                                Ok(v) if v < n => Ok(v),
                                Ok(v) => Err(Error::parse(
                                    lineno,
                                    c,
                                    format!("constant {v} is outside the domain 0..{n}"),
                                )),
                                Err(_) => Err(Error::parse(
                                    lineno,
                                    c,
                                    format!("invalid constant `{tok}`"),
                                )),
                            })
                            .collect::<Result<Vec<u32>>>()?
                    };
                    if tuple.len() != rel.arity() {
                        return Err(Error::parse(
                            lineno,
                            col,
                            format!("expected {} values, found {}", rel.arity(), tuple.len()),
                        ));
                    }
                    rel.insert(tuple);
                }
            }
        }
        Ok(Database {
            domain: domain.ok_or_else(|| Error::parse(1, 1, "missing `domain <N>` line"))?,
            relations,
        })
    }
}

/// Whitespace-separated tokens with 1-based columns.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line
        .char_indices()
        .chain(std::iter::once((line.len(), ' ')))
    {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((line[..s].chars().count() + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

impl fmt::Display for Database {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "domain {}", self.domain)?;
        for (sym, rel) in &self.relations {
            writeln!(f, "relation {sym} {}", rel.arity())?;
            for t in rel.tuples() {
                if t.is_empty() {
                    writeln!(f, "()")?;
                } else {
                    let vals: Vec<String> = t.iter().map(u32::to_string).collect();
                    writeln!(f, "{}", vals.join(" "))?;
                }
            }
        }
        Ok(())
    }
}
