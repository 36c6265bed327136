use super::query::{Literal, QueryInstance, Relation};
use crate::error::{Error, Result};

/// A query over `{0,1}` in which every original variable `x` became the bit
/// variables `x#1..x#d`, most significant bit first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodedQuery {
    pub query: QueryInstance,
    pub bits: u32,
}

/// Name of the `i`-th (1-based) bit of variable `v`.
pub fn bit_var(v: &str, i: u32) -> String {
    format!("{v}#{i}")
}

/// `log2 |Dom|`, for power-of-two domains of size at least 2.
pub fn domain_bits(domain: u32) -> Result<u32> {
    if domain < 2 || !domain.is_power_of_two() {
        return Err(Error::invalid(format!(
            "domain size {domain} is not a power of two of at least 2"
        )));
    }
    Ok(domain.trailing_zeros())
}

/// Big-endian `d`-bit expansion of `c`.
pub fn encode_value(c: u32, d: u32) -> Vec<u32> {
    (0..d).rev().map(|i| (c >> i) & 1).collect()
}

pub fn binary_encode(q: &QueryInstance) -> Result<EncodedQuery> {
    let d = domain_bits(q.domain())?;
    let literals = q
        .literals()
        .iter()
        .map(|l| {
            let vars = l
                .vars
                .iter()
                .flat_map(|v| (1..=d).map(move |i| bit_var(v, i)))
                .collect();
            let mut relation = Relation::new(l.vars.len() * d as usize);
            for t in l.relation.tuples() {
                relation.insert(t.iter().flat_map(|&c| encode_value(c, d)).collect());
            }
            Literal {
                symbol: l.symbol.clone(),
                polarity: l.polarity,
                vars,
                relation,
            }
        })
        .collect();
    Ok(EncodedQuery {
        query: q.with_literals(literals).with_domain(2),
        bits: d,
    })
}

/// Inverts [`binary_encode`]: consecutive runs `x#1..x#d` become `x` over the
/// domain `2^d`.
pub fn binary_decode(q: &QueryInstance, bits: u32) -> Result<QueryInstance> {
    if q.domain() != 2 {
        return Err(Error::invalid("encoded query must have domain 2"));
    }
    if bits == 0 || bits > 31 {
        return Err(Error::invalid(format!("unsupported bit width {bits}")));
    }
    let d = bits as usize;
    let literals = q
        .literals()
        .iter()
        .map(|l| {
            if l.vars.len() % d != 0 {
                return Err(Error::invalid(format!(
                    "literal {} has {} bit variables, not a multiple of {d}",
                    l.symbol,
                    l.vars.len()
                )));
            }
            let mut vars = Vec::new();
            for group in l.vars.chunks(d) {
                let base = group[0].rsplit_once('#').map(|(b, _)| b).unwrap_or("");
                let ok = group
                    .iter()
                    .enumerate()
                    .all(|(i, name)| *name == bit_var(base, i as u32 + 1));
                if base.is_empty() || !ok {
                    return Err(Error::invalid(format!(
                        "literal {} has a malformed bit group {group:?}",
                        l.symbol
                    )));
                }
                vars.push(base.to_string());
            }
            let mut relation = Relation::new(vars.len());
            for t in l.relation.tuples() {
                relation.insert(
                    t.chunks(d)
                        .map(|g| g.iter().fold(0, |acc, &b| (acc << 1) | b))
                        .collect(),
                );
            }
            Ok(Literal {
                symbol: l.symbol.clone(),
                polarity: l.polarity,
                vars,
                relation,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(q.with_literals(literals).with_domain(1 << bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cqneg::query_hypergraph;
    use crate::nestset::nsw;

    #[test]
    fn big_endian_values() {
        assert_eq!(encode_value(5, 3), [1, 0, 1]);
        assert_eq!(encode_value(1, 2), [0, 1]);
    }

    fn triangle(domain: u32) -> QueryInstance {
        let r = Relation::from_tuples(2, [vec![0, 1], vec![domain - 1, 3]]).unwrap();
        QueryInstance::new(
            vec![
                Literal::negative("R", &["a", "b"], r.clone()),
                Literal::negative("S", &["b", "c"], r.clone()),
                Literal::negative("T", &["a", "c"], r),
            ],
            domain,
        )
        .unwrap()
    }

    #[test]
    fn triangle_encoding_width() {
        let q = triangle(8);
        assert_eq!(nsw(&query_hypergraph(&q)).0, 2);
        let enc = binary_encode(&q).unwrap();
        assert_eq!(enc.bits, 3);
        assert_eq!(
            enc.query.literals()[0].vars,
            ["a#1", "a#2", "a#3", "b#1", "b#2", "b#3"]
        );
        assert!(enc.query.literals()[0]
            .relation
            .contains(&[1, 1, 1, 0, 1, 1]));
        assert_eq!(nsw(&query_hypergraph(&enc.query)).0, 6);
        assert_eq!(binary_decode(&enc.query, enc.bits).unwrap(), q);
    }

    #[test]
    fn rejects_other_domains() {
        let r = Relation::new(1);
        let q = QueryInstance::new(vec![Literal::positive("R", &["x"], r)], 3).unwrap();
        assert!(matches!(binary_encode(&q), Err(Error::InvalidInput(_))));
    }
}
