use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cqneg::{all_tuples, Literal, Polarity, QueryInstance, Relation};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, HypergraphBuilder};
use crate::sat::{CnfFormula, Lit};

/// The cycle `v1 − v2 − … − vn − v1` with edges `e1..en`.
pub fn gen_cycle(n: usize) -> Result<Hypergraph> {
    if n < 3 {
        return Err(Error::invalid(format!(
            "a cycle needs at least 3 vertices, got {n}"
        )));
    }
    Ok(Hypergraph::from_edges((1..=n).map(|i| {
        (
            format!("e{i}"),
            [format!("v{i}"), format!("v{}", i % n + 1)],
        )
    })))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergraphParams {
    pub vertices: usize,
    pub edges: usize,
    pub max_arity: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QueryParams {
    pub variables: usize,
    pub literals: usize,
    pub max_arity: usize,
    pub domain: u32,
    /// Probability that a tuple of `Dom^arity` is in a relation.
    pub density: f64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfParams {
    pub variables: u32,
    pub clauses: usize,
    pub clause_len: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RandomParams {
    Hypergraph(HypergraphParams),
    Query(QueryParams),
    Cnf(CnfParams),
}

#[derive(Clone, Debug)]
pub enum RandomInstance {
    Hypergraph(Hypergraph),
    Query(QueryInstance),
    Cnf(CnfFormula),
}

pub fn gen_random(seed: u64, params: &RandomParams) -> RandomInstance {
    match params {
        RandomParams::Hypergraph(p) => RandomInstance::Hypergraph(random_hypergraph(seed, p)),
        RandomParams::Query(p) => RandomInstance::Query(random_query(seed, p)),
        RandomParams::Cnf(p) => RandomInstance::Cnf(random_cnf(seed, p)),
    }
}

fn subset(rng: &mut ChaCha8Rng, n: usize, max: usize) -> Vec<usize> {
    let size = rng.gen_range(1..=max.min(n).max(1));
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    all.truncate(size);
    all.sort();
    all
}

/// Edges `e1..` over vertices `v1..vn`, each with 1 to `max_arity` distinct
/// vertices; vertices in no edge are left out.
pub fn random_hypergraph(seed: u64, p: &HypergraphParams) -> Hypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = HypergraphBuilder::new();
    if p.vertices == 0 {
        return b.build();
    }
    for i in 1..=p.edges {
        let vs = subset(&mut rng, p.vertices, p.max_arity);
        b.edge(&format!("e{i}"), vs.iter().map(|v| format!("v{}", v + 1)));
    }
    b.build()
}

/// Literals `R1..` of random polarity over distinct variables from
/// `x1..xn`; each relation keeps every tuple with probability `density`.
pub fn random_query(seed: u64, p: &QueryParams) -> QueryInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut literals = Vec::new();
    for i in 1..=p.literals {
        let vars: Vec<String> = if p.variables == 0 {
            Vec::new()
        } else {
            subset(&mut rng, p.variables, p.max_arity)
                .iter()
                .map(|v| format!("x{}", v + 1))
                .collect()
        };
        let polarity = if rng.gen_bool(0.5) {
            Polarity::Positive
        } else {
            Polarity::Negative
        };
        let tuples: Vec<Vec<u32>> = all_tuples(vars.len(), p.domain)
            .filter(|_| rng.gen_bool(p.density))
            .collect();
        literals.push(Literal {
            symbol: format!("R{i}"),
            polarity,
            relation: Relation::from_tuples(vars.len(), tuples).expect("arity matches"),
            vars,
        });
    }
    QueryInstance::new(literals, p.domain).expect("symbols are distinct")
}

/// Clauses of `clause_len` distinct variables with uniform signs.
pub fn random_cnf(seed: u64, p: &CnfParams) -> CnfFormula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = CnfFormula::new(p.variables);
    if p.variables == 0 {
        return f;
    }
    for _ in 0..p.clauses {
        let mut vars: Vec<u32> = (1..=p.variables).collect();
        vars.shuffle(&mut rng);
        vars.truncate(p.clause_len.max(1));
        let lits: Vec<Lit> = vars
            .into_iter()
            .map(|v| Lit::new(v, rng.gen_bool(0.5)))
            .collect();
        f.add_clause(lits);
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::brute_nsw;

    #[test]
    fn cycles() {
        let c4 = gen_cycle(4).unwrap();
        assert_eq!(c4.num_edges(), 4);
        assert_eq!(brute_nsw(&c4).unwrap(), 3);
        assert_eq!(brute_nsw(&gen_cycle(6).unwrap()).unwrap(), 5);
        assert!(gen_cycle(2).is_err());
    }

    #[test]
    fn generators_are_reproducible() {
        let p = HypergraphParams {
            vertices: 6,
            edges: 5,
            max_arity: 3,
        };
        let a = random_hypergraph(1, &p);
        assert_eq!(a, random_hypergraph(1, &p));
        assert_ne!(a, random_hypergraph(2, &p));
        let q = QueryParams {
            variables: 4,
            literals: 3,
            max_arity: 2,
            domain: 4,
            density: 0.5,
        };
        assert_eq!(random_query(7, &q), random_query(7, &q));
        let c = CnfParams {
            variables: 8,
            clauses: 10,
            clause_len: 3,
        };
        assert_eq!(random_cnf(3, &c), random_cnf(3, &c));
        assert_ne!(random_cnf(3, &c), random_cnf(4, &c));
    }
}
