use super::formula::{var_name, CnfFormula};
use crate::cqneg::{Literal, Polarity, QueryInstance, Relation};

/// The CQ¬ instance over `{0,1}` with one negative literal `R<i>` per clause,
/// holding the single falsifying tuple, and one full unary literal `V<j>`
/// per declared variable.
pub fn sat_to_cqneg(f: &CnfFormula) -> QueryInstance {
    let mut literals = Vec::new();
    for (i, c) in f.clauses().iter().enumerate() {
        let falsifying: Vec<u32> = c
            .lits()
            .iter()
            .map(|l| u32::from(!l.is_positive()))
            .collect();
        literals.push(Literal {
            symbol: format!("R{}", i + 1),
            polarity: Polarity::Negative,
            vars: c.vars().map(var_name).collect(),
            relation: Relation::from_tuples(c.len(), [falsifying]).expect("arity matches"),
        });
    }
    for j in 1..=f.num_vars() {
        literals.push(Literal {
            symbol: format!("V{j}"),
            polarity: Polarity::Positive,
            vars: vec![var_name(j)],
            relation: Relation::full(1, 2),
        });
    }
    QueryInstance::new(literals, 2).expect("symbols are distinct")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cqneg::evaluate;

    #[test]
    fn clause_becomes_its_falsifying_tuple() {
        let f = CnfFormula::from_clauses(2, [vec![1, -2]]);
        let q = sat_to_cqneg(&f);
        let r = q.literal("R1").unwrap();
        assert_eq!(r.vars, ["x1", "x2"]);
        assert_eq!(
            r.relation.tuples().iter().collect::<Vec<_>>(),
            [&vec![0, 1]]
        );
        assert_eq!(q.literals().len(), 3);
    }

    #[test]
    fn empty_formula_is_satisfiable() {
        let q = sat_to_cqneg(&CnfFormula::new(2));
        assert!(q.literals().iter().all(Literal::is_positive));
        assert!(evaluate(&q).unwrap());
    }
}
