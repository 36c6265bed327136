use std::collections::{BTreeSet, HashSet};

use super::boolean::{eliminate_packed, Packing};
use super::encode::{binary_decode, binary_encode, bit_var};
use super::normalize::{normalize, s_extension};
use super::query::{
    all_tuples, query_hypergraph, Literal, Polarity, QueryInstance, Relation, Sizes,
};
use crate::error::{Error, Result};
use crate::hypergraph::is_chain;
use crate::nestset::nsw;

/// Satisfying assignments of a set of literals over `vars`.
struct Table {
    vars: Vec<String>,
    rows: Vec<Vec<u32>>,
}

impl Table {
    fn of(l: &Literal) -> Table {
        Table {
            vars: l.vars.clone(),
            rows: l.relation.tuples().iter().cloned().collect(),
        }
    }

    fn column(&self, v: &str) -> Option<usize> {
        self.vars.iter().position(|w| w == v)
    }

    /// Nested-loop join with a literal's relation.
    fn join(&self, l: &Literal) -> Table {
        let shared: Vec<(usize, usize)> = l
            .vars
            .iter()
            .enumerate()
            .filter_map(|(j, v)| self.column(v).map(|i| (i, j)))
            .collect();
        let fresh: Vec<usize> = (0..l.vars.len())
            .filter(|&j| self.column(&l.vars[j]).is_none())
            .collect();
        let mut vars = self.vars.clone();
        vars.extend(fresh.iter().map(|&j| l.vars[j].clone()));
        let mut rows = Vec::new();
        for r in &self.rows {
            for t in l.relation.tuples() {
                if shared.iter().all(|&(i, j)| r[i] == t[j]) {
                    let mut row = r.clone();
                    row.extend(fresh.iter().map(|&j| t[j]));
                    rows.push(row);
                }
            }
        }
        Table { vars, rows }
    }

    /// Keeps the rows whose projection onto `l` is (or, for `keep = false`,
    /// is not) in its relation. All variables of `l` must be columns.
    fn filter(&mut self, l: &Literal, keep: bool) {
        let cols: Vec<usize> = l.vars.iter().map(|v| self.column(v).unwrap()).collect();
        self.rows.retain(|r| {
            let t: Vec<u32> = cols.iter().map(|&c| r[c]).collect();
            l.relation.contains(&t) == keep
        });
    }

    fn project(&self, vars: &[String]) -> BTreeSet<Vec<u32>> {
        let cols: Vec<usize> = vars.iter().map(|v| self.column(v).unwrap()).collect();
        self.rows
            .iter()
            .map(|r| cols.iter().map(|&c| r[c]).collect())
            .collect()
    }
}

/// Output of [`elim_positive`]: the rewritten query and the symbols of the
/// new literals `P` and `¬C`.
#[derive(Clone, Debug)]
pub struct PositiveElimination {
    pub query: QueryInstance,
    pub positive: String,
    pub complement: String,
}

/// `s` restricted to variables of `q`, deduplicated, in canonical order.
fn ordered(q: &QueryInstance, s: &[impl AsRef<str>]) -> Vec<String> {
    let want: HashSet<&str> = s.iter().map(AsRef::as_ref).collect();
    q.variables()
        .into_iter()
        .filter(|v| want.contains(v.as_str()))
        .collect()
}

fn check_shape(q: &QueryInstance) -> Result<()> {
    if let Some(l) = q.literals().iter().find(|l| l.has_repeated_vars()) {
        return Err(Error::invalid(format!(
            "literal {} repeats a variable",
            l.symbol
        )));
    }
    Ok(())
}

fn residual(l: &Literal, s: &[String]) -> BTreeSet<String> {
    l.vars.iter().filter(|v| !s.contains(v)).cloned().collect()
}

/// Replaces the positive literals incident to the nest-set `s` (and the
/// negative literals incident to `s` that they cover) by a positive literal
/// `P` over the remaining variables and a negative literal `¬C` over
/// `vars(P)` followed by `s`.
///
/// Residual scopes of the replaced literals other than `vars(P)` are kept
/// alive: positive ones by the projection of the joined relation, negative
/// ones by an empty negative literal.
pub fn elim_positive<S: AsRef<str>>(q: &QueryInstance, s: &[S]) -> Result<PositiveElimination> {
    let h = query_hypergraph(q);
    let sv = h.vertex_set(s.iter().map(AsRef::as_ref))?;
    if !h.is_nest_set(&sv)? {
        return Err(Error::invalid(format!(
            "{} is not a nest-set of the query",
            h.fmt_set(&sv)
        )));
    }
    if !q.is_safe() {
        return Err(Error::invalid("query is not safe"));
    }
    check_shape(q)?;
    let s = ordered(q, s);
    let order = q.variables();
    let lits = q.literals();
    let incident = |l: &Literal| l.vars.iter().any(|v| s.contains(v));
    let pos: Vec<usize> = (0..lits.len())
        .filter(|&i| lits[i].is_positive() && incident(&lits[i]))
        .collect();
    let covered: HashSet<&String> = pos.iter().flat_map(|&i| &lits[i].vars).collect();
    let neg: Vec<usize> = (0..lits.len())
        .filter(|&i| {
            !lits[i].is_positive()
                && incident(&lits[i])
                && lits[i].vars.iter().all(|v| covered.contains(v))
        })
        .collect();

    let start = *pos
        .iter()
        .rev()
        .max_by_key(|&&i| residual(&lits[i], &s).len())
        .expect("safety gives a positive literal on s");
    let mut table = Table::of(&lits[start]);
    let mut joined: HashSet<usize> = HashSet::from([start]);
    for v in &s {
        if table.column(v).is_none() {
            let &i = pos.iter().find(|&&i| lits[i].mentions(v)).unwrap();
            table = table.join(&lits[i]);
            joined.insert(i);
        }
    }
    for &i in &pos {
        if !joined.contains(&i) {
            if lits[i].vars.iter().all(|v| table.column(v).is_some()) {
                table.filter(&lits[i], true);
            } else {
                table = table.join(&lits[i]);
            }
        }
    }
    for &i in &neg {
        table.filter(&lits[i], false);
    }

    let p_vars: Vec<String> = order
        .iter()
        .filter(|v| table.column(v).is_some() && !s.contains(v))
        .cloned()
        .collect();
    let c_vars: Vec<String> = p_vars.iter().chain(&s).cloned().collect();
    let j = table.project(&c_vars);
    let mut p_rel = Relation::new(p_vars.len());
    for t in &j {
        p_rel.insert(t[..p_vars.len()].to_vec());
    }
    let mut c_rel = Relation::new(c_vars.len());
    for p in p_rel.tuples() {
        for tail in all_tuples(s.len(), q.domain()) {
            let mut row = p.clone();
            row.extend(tail);
            if !j.contains(&row) {
                c_rel.insert(row);
            }
        }
    }

    let mut out = q.clone();
    let positive = out.fresh_symbol("P");
    let complement = out.fresh_symbol("C");
    let mut added = vec![
        Literal {
            symbol: positive.clone(),
            polarity: Polarity::Positive,
            vars: p_vars.clone(),
            relation: p_rel,
        },
        Literal {
            symbol: complement.clone(),
            polarity: Polarity::Negative,
            vars: c_vars,
            relation: c_rel,
        },
    ];
    let p_set: BTreeSet<String> = p_vars.iter().cloned().collect();
    let mut kept_scopes = vec![p_set];
    for &i in pos.iter().chain(&neg) {
        let r = residual(&lits[i], &s);
        if r.is_empty() || kept_scopes.contains(&r) {
            continue;
        }
        let vars: Vec<String> = order.iter().filter(|v| r.contains(*v)).cloned().collect();
        let from_positive = pos.iter().any(|&p| residual(&lits[p], &s) == r);
        let literal = if from_positive {
            let relation = Relation::from_tuples(vars.len(), table.project(&vars))?;
            Literal {
                symbol: out.fresh_symbol("P"),
                polarity: Polarity::Positive,
                vars,
                relation,
            }
        } else {
            Literal {
                symbol: out.fresh_symbol("C"),
                polarity: Polarity::Negative,
                relation: Relation::new(vars.len()),
                vars,
            }
        };
        added.push(literal);
        kept_scopes.push(r);
    }

    let replaced: HashSet<usize> = pos.iter().chain(&neg).copied().collect();
    let first = *replaced.iter().min().unwrap();
    let mut literals = Vec::new();
    for (i, l) in lits.iter().enumerate() {
        if i == first {
            literals.append(&mut added);
        }
        if !replaced.contains(&i) {
            literals.push(l.clone());
        }
    }
    Ok(PositiveElimination {
        query: out.with_literals(literals),
        positive,
        complement,
    })
}

/// Removes `s` from the negative literals incident to it.
///
/// The incident literals are s-extended, binary encoded and every bit of
/// every variable of `s` is resolved away; the results replace them under
/// fresh `N*#i` symbols. With `fold = Some((P, C))` the result of `¬C` is
/// not kept but subtracted from the relation of `P`.
pub fn elim_negative<S: AsRef<str>>(
    q: &QueryInstance,
    s: &[S],
    fold: Option<(&str, &str)>,
) -> Result<QueryInstance> {
    check_shape(q)?;
    let s = ordered(q, s);
    let lits = q.literals();
    let incident: Vec<usize> = (0..lits.len())
        .filter(|&i| lits[i].vars.iter().any(|v| s.contains(v)))
        .collect();
    if let Some(&i) = incident.iter().find(|&&i| lits[i].is_positive()) {
        return Err(Error::invalid(format!(
            "positive literal {} mentions an eliminated variable",
            lits[i].symbol
        )));
    }
    if incident.is_empty() {
        return Ok(q.clone());
    }
    let extended: Vec<Literal> = incident
        .iter()
        .map(|&i| s_extension(&lits[i], &s, q.domain()))
        .collect();
    let sub = QueryInstance::new(extended, q.domain())?;
    let h = query_hypergraph(&sub);
    let scopes: Vec<_> = h.edges().iter().map(|e| e.vertices().clone()).collect();
    if !is_chain(&scopes) {
        return Err(Error::invalid(
            "the s-extended negative literals do not form a chain",
        ));
    }

    let enc = binary_encode(&sub)?;
    let (packing, mut packed) = Packing::new(&enc.query)?;
    for v in &s {
        for b in 1..=enc.bits {
            packed = eliminate_packed(&packed, packing.id(&bit_var(v, b))?)?;
        }
    }
    let decoded = binary_decode(&packing.unpack(&enc.query, &packed), enc.bits)?;

    let mut out = q.clone();
    let mut results: Vec<Option<Literal>> = vec![None; lits.len()];
    let mut c_star = None;
    for (&i, mut l) in incident.iter().zip(decoded.literals().iter().cloned()) {
        if l.relation.len() > lits[i].relation.len() {
            return Err(Error::invariant(format!(
                "eliminating s grew {} from {} to {} tuples",
                lits[i].symbol,
                lits[i].relation.len(),
                l.relation.len()
            )));
        }
        if fold.is_some_and(|(_, c)| c == l.symbol) {
            c_star = Some(l);
        } else {
            l.symbol = out.fresh_symbol("N*");
            results[i] = Some(l);
        }
    }
    let mut literals = Vec::new();
    for (i, l) in lits.iter().enumerate() {
        if incident.contains(&i) {
            literals.extend(results[i].take());
        } else {
            literals.push(l.clone());
        }
    }
    if let Some((p_sym, c_sym)) = fold {
        let c_star =
            c_star.ok_or_else(|| Error::invalid(format!("literal {c_sym} does not mention s")))?;
        let p = literals
            .iter_mut()
            .find(|l| l.symbol == p_sym)
            .ok_or_else(|| Error::invalid(format!("no literal {p_sym}")))?;
        let cols = c_star
            .vars
            .iter()
            .map(|v| p.vars.iter().position(|w| w == v))
            .collect::<Option<Vec<usize>>>()
            .filter(|cols| cols.len() == p.vars.len())
            .ok_or_else(|| {
                Error::invalid(format!(
                    "{c_sym} without s does not have the variables of {p_sym}"
                ))
            })?;
        p.relation.retain(|t| {
            let aligned: Vec<u32> = cols.iter().map(|&c| t[c]).collect();
            !c_star.relation.contains(&aligned)
        });
    }
    Ok(out.with_literals(literals))
}

/// One s-elimination: the new query and the symbol of its literal `P`.
#[derive(Clone, Debug)]
pub struct EliminationStep {
    pub query: QueryInstance,
    pub positive: String,
}

pub fn s_eliminate_step<S: AsRef<str>>(q: &QueryInstance, s: &[S]) -> Result<EliminationStep> {
    super::encode::domain_bits(q.domain())?;
    let pe = elim_positive(q, s)?;
    let query = elim_negative(&pe.query, s, Some((&pe.positive, &pe.complement)))?;
    Ok(EliminationStep {
        query,
        positive: pe.positive,
    })
}

/// Eliminates the nest-set `s` from a safe query over a power-of-two domain.
pub fn s_eliminate<S: AsRef<str>>(q: &QueryInstance, s: &[S]) -> Result<QueryInstance> {
    Ok(s_eliminate_step(q, s)?.query)
}

/// Sizes around one elimination step of [`evaluate_traced`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepTrace {
    pub eliminated: Vec<String>,
    pub before: Sizes,
    pub after: Sizes,
    pub positive: String,
    pub positive_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub satisfiable: bool,
    pub width: usize,
    pub neo: Vec<Vec<String>>,
    pub steps: Vec<StepTrace>,
}

/// Whether some assignment satisfies every literal of `q`.
pub fn evaluate(q: &QueryInstance) -> Result<bool> {
    Ok(evaluate_traced(q)?.satisfiable)
}

/// [`evaluate`] along a minimum-width NEO, recording every step.
pub fn evaluate_traced(q: &QueryInstance) -> Result<Evaluation> {
    let mut q = normalize(q);
    let h = query_hypergraph(&q);
    let (width, neo) = nsw(&h);
    let neo: Vec<Vec<String>> = neo
        .sets()
        .iter()
        .map(|s| h.names(s).map(str::to_string).collect())
        .collect();
    let mut steps = Vec::new();
    for s in &neo {
        let before = q.sizes();
        let step = s_eliminate_step(&q, s)?;
        let after = step.query.sizes();
        if after.literals > before.literals
            || after.max_arity > before.max_arity
            || after.max_relation > before.max_relation
        {
            return Err(Error::invariant(format!(
                "eliminating {s:?} grew the instance: {before:?} -> {after:?}"
            )));
        }
        let positive_size = step
            .query
            .literal(&step.positive)
            .map_or(0, |l| l.relation.len());
        steps.push(StepTrace {
            eliminated: s.clone(),
            before,
            after,
            positive: step.positive,
            positive_size,
        });
        q = step.query;
        if positive_size == 0 {
            return Ok(Evaluation {
                satisfiable: false,
                width,
                neo,
                steps,
            });
        }
    }
    if let Some(l) = q.literals().iter().find(|l| !l.vars.is_empty()) {
        return Err(Error::invariant(format!(
            "literal {} survived every elimination",
            l.symbol
        )));
    }
    let satisfiable = q.literals().iter().all(|l| l.holds(|_| 0));
    Ok(Evaluation {
        satisfiable,
        width,
        neo,
        steps,
    })
}
