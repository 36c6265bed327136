use crate::cqneg::{all_tuples, QueryInstance};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexId, VertexSet};
use crate::nestset::ConflictGraph;
use crate::sat::{CnfFormula, Verdict};

pub const MAX_NEST_SET_VERTICES: usize = 16;
pub const MAX_NSW_VERTICES: usize = 12;
pub const MAX_ASSIGNMENTS: u64 = 1 << 20;
pub const MAX_SAT_VARS: usize = 20;
pub const MAX_COVER_VERTICES: usize = 20;

/// Vertices of `h` and its edges as bit masks over them.
fn masks(h: &Hypergraph) -> (Vec<VertexId>, Vec<u32>) {
    let vertices: Vec<VertexId> = h.vertices().iter().collect();
    let edges = h
        .edges()
        .iter()
        .map(|e| {
            e.vertices()
                .iter()
                .map(|v| 1u32 << vertices.iter().position(|&w| w == v).unwrap())
                .fold(0, |a, b| a | b)
        })
        .collect();
    (vertices, edges)
}

fn mask_is_nest_set(edges: &[u32], s: u32) -> bool {
    let residuals: Vec<u32> = edges
        .iter()
        .filter(|&&e| e & s != 0)
        .map(|&e| e & !s)
        .collect();
    residuals
        .iter()
        .all(|&a| residuals.iter().all(|&b| a & b == a || a & b == b))
}

/// Every nonempty vertex set of size at most `k` whose incident edges, minus
/// the set, are pairwise comparable. Sorted by size, then by vertex ids.
pub fn brute_nest_sets(h: &Hypergraph, k: usize) -> Result<Vec<VertexSet>> {
    let n = h.num_vertices();
    if n > MAX_NEST_SET_VERTICES {
        return Err(Error::SizeGuard(format!(
            "{n} vertices exceed the nest-set oracle limit of {MAX_NEST_SET_VERTICES}"
        )));
    }
    let (vertices, edges) = masks(h);
    let mut found: Vec<u32> = (1u32..1 << n)
        .filter(|s| s.count_ones() as usize <= k && mask_is_nest_set(&edges, *s))
        .collect();
    found.sort_by_key(|s| (s.count_ones(), s.reverse_bits()));
    Ok(found
        .into_iter()
        .map(|s| {
            (0..n)
                .filter(|i| s >> i & 1 == 1)
                .map(|i| vertices[i])
                .collect()
        })
        .collect())
}

/// The least `k` for which greedily deleting brute-force `k`-nest-sets
/// empties `h` (isolated vertices dropped first; 0 if nothing remains).
pub fn brute_nsw(h: &Hypergraph) -> Result<usize> {
    let h = h.without_isolated();
    let n = h.num_vertices();
    if n > MAX_NSW_VERTICES {
        return Err(Error::SizeGuard(format!(
            "{n} vertices exceed the width oracle limit of {MAX_NSW_VERTICES}"
        )));
    }
    if n == 0 {
        return Ok(0);
    }
    let (_, edges) = masks(&h);
    let full = (1u32 << n) - 1;
    'k: for k in 1..=n {
        let mut left = full;
        while left != 0 {
            let cur: Vec<u32> = edges.iter().map(|e| e & left).filter(|&e| e != 0).collect();
            let next = (1u32..=full)
                .filter(|s| s & !left == 0 && s.count_ones() as usize <= k)
                .find(|&s| mask_is_nest_set(&cur, s));
            match next {
                Some(s) => left &= !s,
                None => continue 'k,
            }
        }
        return Ok(k);
    }
    unreachable!("the full vertex set is a nest-set")
}

/// Whether some assignment of the variables satisfies every literal.
pub fn brute_force_eval(q: &QueryInstance) -> Result<bool> {
    let vars = q.variables();
    let count = (q.domain() as u64).checked_pow(vars.len() as u32);
    if count.is_none_or(|c| c > MAX_ASSIGNMENTS) {
        return Err(Error::SizeGuard(format!(
            "{}^{} assignments exceed {MAX_ASSIGNMENTS}",
            q.domain(),
            vars.len()
        )));
    }
    let index = |v: &str| vars.iter().position(|w| w == v).unwrap();
    let slots: Vec<Vec<usize>> = q
        .literals()
        .iter()
        .map(|l| l.vars.iter().map(|v| index(v)).collect())
        .collect();
    Ok(all_tuples(vars.len(), q.domain()).any(|a| {
        q.literals().iter().zip(&slots).all(|(l, slot)| {
            let t: Vec<u32> = slot.iter().map(|&i| a[i]).collect();
            l.relation.contains(&t) == l.is_positive()
        })
    }))
}

/// Truth-table satisfiability over the variables that occur in clauses.
pub fn brute_force_sat(f: &CnfFormula) -> Result<Verdict> {
    let used: Vec<u32> = f.used_vars().into_iter().collect();
    if used.len() > MAX_SAT_VARS {
        return Err(Error::SizeGuard(format!(
            "{} variables exceed the SAT oracle limit of {MAX_SAT_VARS}",
            used.len()
        )));
    }
    let mut value = vec![false; f.num_vars() as usize + 1];
    for bits in 0u32..1 << used.len() {
        for (i, &v) in used.iter().enumerate() {
            value[v as usize] = bits >> i & 1 == 1;
        }
        if f.satisfied_by(&value) {
            return Ok(Verdict::Sat);
        }
    }
    Ok(Verdict::Unsat)
}

/// All inclusion-minimal vertex covers of size at most `k`, sorted.
pub fn brute_minimal_vertex_covers(g: &ConflictGraph, k: usize) -> Result<Vec<VertexSet>> {
    let vertices: Vec<VertexId> = g.vertices().iter().collect();
    let n = vertices.len();
    if n > MAX_COVER_VERTICES {
        return Err(Error::SizeGuard(format!(
            "{n} vertices exceed the cover oracle limit of {MAX_COVER_VERTICES}"
        )));
    }
    let bit = |v: VertexId| 1u32 << vertices.iter().position(|&w| w == v).unwrap();
    let edges: Vec<(u32, u32)> = g.edges().iter().map(|&(u, v)| (bit(u), bit(v))).collect();
    let covers = |s: u32| edges.iter().all(|&(a, b)| s & (a | b) != 0);
    let mut out: Vec<VertexSet> = (0u32..1 << n)
        .filter(|&s| s.count_ones() as usize <= k && covers(s))
        .filter(|&s| (0..n).all(|i| s >> i & 1 == 0 || !covers(s & !(1 << i))))
        .map(|s| {
            (0..n)
                .filter(|i| s >> i & 1 == 1)
                .map(|i| vertices[i])
                .collect()
        })
        .collect();
    out.sort();
    Ok(out)
}
