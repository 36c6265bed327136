use super::query::{Literal, Polarity, QueryInstance, Relation};

/// Makes `q` safe and pads its domain to a power of two (at least 2).
///
/// Literals with a repeated variable are first rewritten over their distinct
/// variables, keeping only the tuples that agree on the repeated positions.
pub fn normalize(q: &QueryInstance) -> QueryInstance {
    let literals = q.literals().iter().map(distinct_vars).collect();
    let mut out = q.with_literals(literals);
    for v in out.unsafe_variables() {
        let symbol = out.fresh_symbol("V");
        let relation = Relation::full(1, out.domain());
        out.literals_mut().push(Literal {
            symbol,
            polarity: Polarity::Positive,
            vars: vec![v],
            relation,
        });
    }
    let domain = out.domain().max(2).next_power_of_two();
    out.with_domain(domain)
}

fn distinct_vars(l: &Literal) -> Literal {
    if !l.has_repeated_vars() {
        return l.clone();
    }
    // first[i] = position of the first occurrence of vars[i]
    let first: Vec<usize> = l
        .vars
        .iter()
        .map(|v| l.vars.iter().position(|w| w == v).unwrap())
        .collect();
    let keep: Vec<usize> = (0..l.vars.len()).filter(|&i| first[i] == i).collect();
    let mut relation = Relation::new(keep.len());
    for t in l.relation.tuples() {
        if (0..t.len()).all(|i| t[i] == t[first[i]]) {
            relation.insert(keep.iter().map(|&i| t[i]).collect());
        }
    }
    Literal {
        symbol: l.symbol.clone(),
        polarity: l.polarity,
        vars: keep.iter().map(|&i| l.vars[i].clone()).collect(),
        relation,
    }
}

/// Pads `l` with the variables of `s` it lacks (in the given order); the
/// relation is multiplied by the full domain once per added variable.
pub fn s_extension<S: AsRef<str>>(l: &Literal, s: &[S], domain: u32) -> Literal {
    let mut vars = l.vars.clone();
    for v in s {
        let v = v.as_ref();
        if !vars.iter().any(|w| w == v) {
            vars.push(v.to_string());
        }
    }
    let extra = vars.len() - l.vars.len();
    Literal {
        symbol: l.symbol.clone(),
        polarity: l.polarity,
        vars,
        relation: l.relation.product(extra, domain),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(arity: usize, rows: &[&[u32]]) -> Relation {
        Relation::from_tuples(arity, rows.iter().map(|r| r.to_vec())).unwrap()
    }

    #[test]
    fn adds_safety_literals() {
        let q = QueryInstance::new(
            vec![Literal::negative("R", &["x", "y"], rel(2, &[&[0, 0]]))],
            2,
        )
        .unwrap();
        let n = normalize(&q);
        assert!(n.is_safe());
        let v1 = n.literal("V#1").unwrap();
        let v2 = n.literal("V#2").unwrap();
        assert_eq!(v1.vars, ["x"]);
        assert_eq!(v2.vars, ["y"]);
        assert_eq!(v1.relation, rel(1, &[&[0], &[1]]));
        assert_eq!(n.domain(), 2);
    }

    #[test]
    fn pads_domain_and_keeps_safe_queries() {
        let q =
            QueryInstance::new(vec![Literal::positive("R", &["x"], rel(1, &[&[2]]))], 3).unwrap();
        assert_eq!(normalize(&q).domain(), 4);
        let q8 =
            QueryInstance::new(vec![Literal::positive("R", &["x"], rel(1, &[&[7]]))], 8).unwrap();
        assert_eq!(normalize(&q8), q8);
    }

    #[test]
    fn repeated_variables_are_merged() {
        let q = QueryInstance::new(
            vec![Literal::positive(
                "R",
                &["x", "y", "x"],
                rel(3, &[&[0, 1, 0], &[0, 1, 1], &[1, 1, 1]]),
            )],
            2,
        )
        .unwrap();
        let n = normalize(&q);
        let l = &n.literals()[0];
        assert_eq!(l.vars, ["x", "y"]);
        assert_eq!(l.relation, rel(2, &[&[0, 1], &[1, 1]]));
    }

    #[test]
    fn extension_examples() {
        let s = Literal::negative("S", &["b", "c"], rel(2, &[&[0, 1]]));
        let ext = s_extension(&s, &["a", "b"], 2);
        assert_eq!(ext.vars, ["b", "c", "a"]);
        assert_eq!(ext.relation, rel(3, &[&[0, 1, 0], &[0, 1, 1]]));
        let r = Literal::positive("R", &["x", "y"], rel(2, &[&[0, 1]]));
        let ext = s_extension(&r, &["z"], 2);
        assert_eq!(ext.relation, rel(3, &[&[0, 1, 0], &[0, 1, 1]]));
        assert_eq!(s_extension(&r, &["y"], 2), r);
    }
}
