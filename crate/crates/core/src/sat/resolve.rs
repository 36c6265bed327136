use std::collections::BTreeSet;

use super::formula::{formula_hypergraph, var_name, var_of_name, Clause, CnfFormula, Lit};
use crate::error::{Error, Result};
use crate::nestset::nsw;

/// Davis–Putnam elimination of `x`: adds every `x`-resolvent of a pair of
/// clauses clashing on `x` alone, then drops all clauses mentioning `x`.
pub fn dp_resolve(f: &CnfFormula, x: u32) -> CnfFormula {
    let pos: Vec<&Clause> = f
        .clauses()
        .iter()
        .filter(|c| c.contains(Lit::new(x, true)))
        .collect();
    let neg: Vec<&Clause> = f
        .clauses()
        .iter()
        .filter(|c| c.contains(Lit::new(x, false)))
        .collect();
    let mut out: BTreeSet<Clause> = f
        .clauses()
        .iter()
        .filter(|c| !c.mentions(x))
        .cloned()
        .collect();
    for c in &pos {
        for d in &neg {
            let merged = c
                .lits()
                .iter()
                .chain(d.lits())
                .copied()
                .filter(|l| l.var() != x);
            // a second clashing variable makes the resolvent a tautology
            if let Some(r) = Clause::new(merged) {
                out.insert(r);
            }
        }
    }
    let mut g = f.clone();
    g.set_clauses(out);
    g
}

/// Clause counts while resolving away one nest-set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestProfile {
    /// Eliminated variables present in the formula, in elimination order.
    pub vars: Vec<u32>,
    pub before: usize,
    /// `counts[i]` is the clause count after eliminating `vars[..=i]`.
    pub counts: Vec<usize>,
}

impl NestProfile {
    pub fn max(&self) -> usize {
        self.counts
            .iter()
            .copied()
            .max()
            .unwrap_or(self.before)
            .max(self.before)
    }
}

/// Resolves the variables of the nest-set `s` in ascending order.
///
/// Variables of `s` that occur in no clause are ignored. Every intermediate
/// count is checked against `3^(k−|s′|)·|F|` (with `k = |s|` and `s′` the
/// eliminated prefix) and the final count against `|F|`.
pub fn eliminate_nest_set(f: &CnfFormula, s: &[u32]) -> Result<(CnfFormula, NestProfile)> {
    let used = f.used_vars();
    let vars: Vec<u32> = s
        .iter()
        .copied()
        .collect::<BTreeSet<u32>>()
        .into_iter()
        .filter(|v| used.contains(v))
        .collect();
    let mut profile = NestProfile {
        vars: vars.clone(),
        before: f.len(),
        counts: Vec::new(),
    };
    if vars.is_empty() {
        return Ok((f.clone(), profile));
    }
    let h = formula_hypergraph(f);
    let set = h.vertex_set(vars.iter().map(|&v| var_name(v)))?;
    if !h.is_nest_set(&set)? {
        return Err(Error::invalid(format!(
            "{} is not a nest-set of the formula",
            h.fmt_set(&set)
        )));
    }
    let k = vars.len() as u32;
    let mut g = f.clone();
    for (i, &x) in vars.iter().enumerate() {
        g = dp_resolve(&g, x);
        let bound = 3usize
            .saturating_pow(k - i as u32 - 1)
            .saturating_mul(f.len());
        if g.len() > bound {
            return Err(Error::invariant(format!(
                "{} clauses after resolving {} of {k} variables exceeds {bound}",
                g.len(),
                i + 1
            )));
        }
        profile.counts.push(g.len());
    }
    Ok((g, profile))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Sat,
    Unsat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveReport {
    pub verdict: Verdict,
    pub width: usize,
    /// The NEO of the formula hypergraph, as variable numbers.
    pub neo: Vec<Vec<u32>>,
    pub steps: Vec<NestProfile>,
    pub max_clauses: usize,
}

/// Decides `f` by eliminating the nest-sets of a minimum-width NEO.
pub fn solve(f: &CnfFormula) -> Result<SolveReport> {
    let h = formula_hypergraph(f).without_isolated();
    let (width, neo) = nsw(&h);
    let neo: Vec<Vec<u32>> = neo
        .sets()
        .iter()
        .map(|s| {
            h.names(s)
                .map(|n| var_of_name(n).expect("vertex names are x<i>"))
                .collect()
        })
        .collect();
    let mut g = f.clone();
    let mut steps = Vec::new();
    let mut max_clauses = f.len();
    for s in &neo {
        if g.has_empty_clause() {
            break;
        }
        let (next, profile) = eliminate_nest_set(&g, s)?;
        if profile.vars.is_empty() {
            continue;
        }
        max_clauses = max_clauses.max(profile.max());
        steps.push(profile);
        g = next;
    }
    let verdict = if g.has_empty_clause() {
        Verdict::Unsat
    } else if g.is_empty() {
        Verdict::Sat
    } else {
        return Err(Error::invariant("clauses survived every elimination"));
    };
    Ok(SolveReport {
        verdict,
        width,
        neo,
        steps,
        max_clauses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cnf(clauses: &[&[i32]]) -> CnfFormula {
        CnfFormula::from_clauses(0, clauses.iter().map(|c| c.to_vec()))
    }

    #[test]
    fn resolution_examples() {
        assert_eq!(
            dp_resolve(&cnf(&[&[1, 2], &[-1, 3]]), 1).clauses(),
            cnf(&[&[2, 3]]).clauses()
        );
        let r = dp_resolve(&cnf(&[&[1], &[-1]]), 1);
        assert!(r.has_empty_clause() && r.len() == 1);
        assert!(dp_resolve(&cnf(&[&[1, 2], &[-1, -2]]), 1).is_empty());
    }

    #[test]
    fn nest_set_elimination() {
        // x=1, y=2, z=3
        let err = eliminate_nest_set(&cnf(&[&[1, 2], &[-1, 3], &[-3]]), &[1]).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
        let (g, p) = eliminate_nest_set(&cnf(&[&[1, 2], &[-1, 2], &[2, 3]]), &[1]).unwrap();
        assert_eq!(g.clauses(), cnf(&[&[2], &[2, 3]]).clauses());
        assert_eq!(p.counts, [2]);
        let f = cnf(&[&[1, 2]]);
        assert_eq!(eliminate_nest_set(&f, &[5]).unwrap().0, f);
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve(&cnf(&[&[1], &[-1]])).unwrap().verdict, Verdict::Unsat);
        assert_eq!(
            solve(&cnf(&[&[1, 2], &[-1, -2]])).unwrap().verdict,
            Verdict::Sat
        );
        assert_eq!(solve(&CnfFormula::new(3)).unwrap().verdict, Verdict::Sat);
        let mut f = CnfFormula::new(1);
        f.insert(Clause::empty());
        assert_eq!(solve(&f).unwrap().verdict, Verdict::Unsat);
    }
}
