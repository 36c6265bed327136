use super::graph::SimpleGraph;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, HypergraphBuilder, VertexSet};

/// Name of the level-`i` copy of a graph vertex.
pub fn gadget_vertex(name: &str, i: usize) -> String {
    format!("{name}_{i}")
}

fn check(g: &SimpleGraph, k: usize) -> Result<usize> {
    let m = g.num_edges();
    if m < 2 {
        return Err(Error::invalid(format!(
            "the graph needs at least 2 edges, it has {m}"
        )));
    }
    if k < 1 || k >= m {
        return Err(Error::invalid(format!(
            "k = {k} must satisfy 1 <= k < m = {m}"
        )));
    }
    Ok(m)
}

/// The vertex-cover reduction hypergraph: levels `1..=m+1` of copies of the
/// graph vertices, two choice edges per level (level `m+1` repeats the choice
/// for the first edge) and a linking clique over the copies of each vertex.
pub fn gen_vc_reduction(g: &SimpleGraph, k: usize) -> Result<Hypergraph> {
    let m = check(g, k)?;
    let names = g.vertices();
    let mut b = HypergraphBuilder::new();
    for i in 1..=m + 1 {
        for v in names {
            b.vertex(&gadget_vertex(v, i));
        }
    }
    for i in 1..=m + 1 {
        let (a, c) = g.edges()[if i == m + 1 { 0 } else { i - 1 }];
        let below: Vec<String> = (1..=i)
            .flat_map(|l| names.iter().map(move |v| gadget_vertex(v, l)))
            .collect();
        for (side, skip) in [(1, a), (2, c)] {
            let dropped = gadget_vertex(&names[skip], i);
            b.edge(
                &format!("f{i}_{side}"),
                below.iter().filter(|v| **v != dropped),
            );
        }
    }
    for v in names {
        for i in 1..=m + 1 {
            for j in i + 1..=m + 1 {
                b.edge(
                    &format!("K_{v}_{i}_{j}"),
                    [gadget_vertex(v, i), gadget_vertex(v, j)],
                );
            }
        }
    }
    Ok(b.build())
}

/// Decides whether the reduction hypergraph of `(g, k)` has a nest-set of
/// size at most `km + k`, returning one if so.
///
/// Every nest-set meets each linking clique (on `m + 1 ≥ 3` vertices) in
/// nothing, everything, or everything but one vertex: a clique edge from a
/// chosen to an unchosen copy leaves that unchosen copy as its residual, and
/// two different singletons are incomparable. Each nonempty intersection
/// therefore holds at least `m` vertices, and `k(m+1) < (k+1)m` allows at
/// most `k` of them. The search enumerates exactly these candidates.
pub fn vc_gadget_nest_set(g: &SimpleGraph, k: usize) -> Result<Option<VertexSet>> {
    let m = check(g, k)?;
    let h = gen_vc_reduction(g, k)?;
    let n = g.num_vertices();
    let budget = k * m + k;
    // option 0: the whole clique; option l ≥ 1: the clique without level l
    let clique = |v: usize, option: usize| -> Vec<String> {
        (1..=m + 1)
            .filter(|&l| l != option)
            .map(|l| gadget_vertex(&g.vertices()[v], l))
            .collect()
    };
    for size in 1..=k.min(n) {
        for chosen in combinations(n, size) {
            let mut options = vec![0usize; size];
            loop {
                let names: Vec<String> = chosen
                    .iter()
                    .zip(&options)
                    .flat_map(|(&v, &o)| clique(v, o))
                    .collect();
                if names.len() <= budget {
                    let s = h.vertex_set(&names)?;
                    if h.is_nest_set(&s)? {
                        return Ok(Some(s));
                    }
                }
                // odometer over options, each in 0..=m+1
                let mut i = 0;
                while i < size && options[i] == m + 1 {
                    options[i] = 0;
                    i += 1;
                }
                if i == size {
                    break;
                }
                options[i] += 1;
            }
        }
    }
    Ok(None)
}

/// All `size`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::brute_nest_sets;

    #[test]
    fn path_gadget() {
        let g: SimpleGraph = "a b\nb c\n".parse().unwrap();
        let h = gen_vc_reduction(&g, 1).unwrap();
        assert_eq!(h.num_vertices(), 9);
        let s = vc_gadget_nest_set(&g, 1).unwrap().unwrap();
        assert_eq!(h.fmt_set(&s), "{b_1,b_2,b_3}");
        assert!(brute_nest_sets(&h, 3).unwrap().contains(&s));
    }

    #[test]
    fn triangle_gadget() {
        let g: SimpleGraph = "a b\nb c\na c\n".parse().unwrap();
        let h = gen_vc_reduction(&g, 1).unwrap();
        assert_eq!(h.num_vertices(), 12);
        assert!(brute_nest_sets(&h, 4).unwrap().is_empty());
        assert_eq!(vc_gadget_nest_set(&g, 1).unwrap(), None);
        let h2 = gen_vc_reduction(&g, 2).unwrap();
        let s_alpha = h2
            .vertex_set(["a_1", "a_2", "a_3", "a_4", "b_1", "b_2", "b_3", "b_4"])
            .unwrap();
        assert!(h2.is_nest_set(&s_alpha).unwrap());
        assert!(vc_gadget_nest_set(&g, 2).unwrap().is_some());
    }

    #[test]
    fn assumptions_are_enforced() {
        let one: SimpleGraph = "a b\n".parse().unwrap();
        assert!(matches!(
            gen_vc_reduction(&one, 1),
            Err(Error::InvalidInput(_))
        ));
        let path: SimpleGraph = "a b\nb c\n".parse().unwrap();
        assert!(matches!(
            gen_vc_reduction(&path, 2),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            gen_vc_reduction(&path, 0),
            Err(Error::InvalidInput(_))
        ));
    }
}
