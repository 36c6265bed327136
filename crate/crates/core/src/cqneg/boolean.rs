use std::collections::{HashMap, HashSet};

use smallvec::SmallVec;

use super::query::{Literal, Polarity, QueryInstance, Relation};
use crate::error::{Error, Result};

/// A 0/1 tuple packed into words; bit `i` is the value of the `i`-th scope
/// variable.
pub type Bits = SmallVec<[u64; 2]>;

/// A negative literal over boolean variables identified by number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackedLiteral {
    pub scope: Vec<u32>,
    pub tuples: Vec<Bits>,
}

fn get(b: &Bits, i: usize) -> bool {
    b.get(i / 64).is_some_and(|w| (w >> (i % 64)) & 1 == 1)
}

fn gather(b: &Bits, positions: &[usize]) -> Bits {
    let mut out: Bits = SmallVec::from_elem(0, positions.len().div_ceil(64));
    for (j, &p) in positions.iter().enumerate() {
        if get(b, p) {
            out[j / 64] |= 1 << (j % 64);
        }
    }
    out
}

impl PackedLiteral {
    pub fn from_rows(scope: Vec<u32>, rows: &[Vec<u32>]) -> Self {
        let tuples = rows
            .iter()
            .map(|r| {
                let mut b: Bits = SmallVec::from_elem(0, r.len().div_ceil(64));
                for (i, &v) in r.iter().enumerate() {
                    if v != 0 {
                        b[i / 64] |= 1 << (i % 64);
                    }
                }
                b
            })
            .collect();
        PackedLiteral { scope, tuples }
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.tuples
            .iter()
            .map(|t| (0..self.scope.len()).map(|i| get(t, i) as u32).collect())
            .collect()
    }
}

/// Largest scope handled by the dense representation.
pub const DENSE_MAX_SCOPE: usize = 6;

/// A negative literal over at most [`DENSE_MAX_SCOPE`] boolean variables.
/// Bit `i` of `mask` is set iff the tuple whose value on `scope[b]` is bit
/// `b` of `i` belongs to the relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseLiteral {
    pub scope: SmallVec<[u32; DENSE_MAX_SCOPE]>,
    pub mask: u64,
}

fn check_scopes(scopes: &[&[u32]], y: u32) -> Result<()> {
    for s in scopes {
        if (0..s.len()).any(|i| s[i + 1..].contains(&s[i])) {
            return Err(Error::invalid("a scope repeats a variable"));
        }
        if !s.contains(&y) {
            return Err(Error::invalid(format!(
                "variable {y} is missing from a scope"
            )));
        }
    }
    for a in scopes {
        for b in scopes {
            if !subset(a, b) && !subset(b, a) {
                return Err(Error::invalid("literal scopes do not form a chain"));
            }
        }
    }
    Ok(())
}

fn subset(a: &[u32], b: &[u32]) -> bool {
    a.iter().all(|v| b.contains(v))
}

/// Whether literal `i` may resolve into (or subsume tuples of) literal `j`.
fn below(scopes: &[&[u32]], i: usize, j: usize) -> bool {
    subset(scopes[i], scopes[j]) && (scopes[i].len() < scopes[j].len() || i <= j)
}

/// Resolution on the nest-point `y` of an all-negative boolean query whose
/// scopes all contain `y` and form a ⊆-chain.
///
/// For literals `i`, `j` with `S_i ⊆ S_j` (and `i ≤ j` on equal scopes) every
/// `u ∈ R_j` that meets some `t ∈ R_i` with the opposite value of `y` and the
/// same values on `S_i ∖ {y}` yields the resolvent `u` without `y`, stored in
/// literal `j`. Afterwards every tuple implied by a tuple over a smaller (or
/// equal, earlier) scope is removed. The `i`-th output has scope `S_i ∖ {y}`.
pub fn eliminate_packed(lits: &[PackedLiteral], y: u32) -> Result<Vec<PackedLiteral>> {
    if lits.iter().any(|l| l.scope.len() > DENSE_MAX_SCOPE) {
        let scopes: Vec<&[u32]> = lits.iter().map(|l| l.scope.as_slice()).collect();
        check_scopes(&scopes, y)?;
        return eliminate_sparse(lits, y);
    }
    let dense: Vec<DenseLiteral> = lits
        .iter()
        .map(|l| DenseLiteral {
            scope: l.scope.iter().copied().collect(),
            mask: l
                .tuples
                .iter()
                .fold(0, |m, t| m | 1 << t.first().copied().unwrap_or(0)),
        })
        .collect();
    Ok(eliminate_dense(&dense, y)?
        .into_iter()
        .map(|d| PackedLiteral {
            tuples: (0..64u64)
                .filter(|&i| d.mask >> i & 1 == 1)
                .map(|i| {
                    if d.scope.is_empty() {
                        SmallVec::new()
                    } else {
                        SmallVec::from_elem(i, 1)
                    }
                })
                .collect(),
            scope: d.scope.to_vec(),
        })
        .collect())
}

/// [`eliminate_packed`] on dense literals.
pub fn eliminate_dense(lits: &[DenseLiteral], y: u32) -> Result<SmallVec<[DenseLiteral; 4]>> {
    if let Some(l) = lits.iter().find(|l| l.scope.len() > DENSE_MAX_SCOPE) {
        return Err(Error::invalid(format!(
            "scope of {} variables is too wide",
            l.scope.len()
        )));
    }
    let sets = chain_masks(lits, y)?;
    dense_core(lits, &sets, y)
}

/// Scopes as bit masks over the positions of the widest one, after the
/// same checks as [`check_scopes`].
fn chain_masks(lits: &[DenseLiteral], y: u32) -> Result<SmallVec<[u8; 4]>> {
    let Some(widest) = lits
        .iter()
        .map(|l| l.scope.as_slice())
        .max_by_key(|s| s.len())
    else {
        return Ok(SmallVec::new());
    };
    let chain_error = || Error::invalid("literal scopes do not form a chain");
    let mut sets: SmallVec<[u8; 4]> = SmallVec::new();
    for l in lits {
        let mut m = 0u8;
        for v in &l.scope {
            m |= 1 << widest.iter().position(|w| w == v).ok_or_else(chain_error)?;
        }
        if m.count_ones() as usize != l.scope.len() {
            return Err(Error::invalid("a scope repeats a variable"));
        }
        sets.push(m);
    }
    let missing = || Error::invalid(format!("variable {y} is missing from a scope"));
    let yb = 1u8 << widest.iter().position(|&w| w == y).ok_or_else(missing)?;
    if sets.iter().any(|m| m & yb == 0) {
        return Err(missing());
    }
    for &a in &sets {
        for &b in &sets {
            if a & b != a && a & b != b {
                return Err(chain_error());
            }
        }
    }
    Ok(sets)
}

/// `{u over to : the projection of u onto from is in mask}`.
fn lift(mask: u64, from: &[u32], to: &[u32]) -> u64 {
    if to.starts_with(from) {
        // the pattern repeats once per value of the extra variables
        let period = 1u32 << from.len();
        let copies = (0..1u64 << (to.len() - from.len()))
            .fold(0u64, |acc, k| acc | 1 << (k as u32 * period));
        return mask.wrapping_mul(copies);
    }
    let pos: SmallVec<[usize; DENSE_MAX_SCOPE]> = from
        .iter()
        .map(|v| to.iter().position(|w| w == v).unwrap())
        .collect();
    let mut out = 0;
    for idx in 0..1u64 << to.len() {
        let sub = pos
            .iter()
            .enumerate()
            .fold(0, |acc, (k, &p)| acc | ((idx >> p) & 1) << k);
        out |= (mask >> sub & 1) << idx;
    }
    out
}

const LOW: [u64; 7] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
    u64::MAX,
];

/// Exchanges the tuples that differ only in position `p`.
fn flip(mask: u64, p: usize) -> u64 {
    let shift = 1 << p;
    ((mask & LOW[p]) << shift) | ((mask >> shift) & LOW[p])
}

/// Projects away position `p` of an `arity`-ary relation.
fn drop_position(mask: u64, p: usize, arity: usize) -> u64 {
    let mut x = (mask | mask >> (1 << p)) & LOW[p];
    for s in p..6 {
        x = (x | x >> (1 << s)) & LOW[s + 1];
    }
    if arity > 6 {
        x
    } else {
        x & (u64::MAX >> (64 - (1 << (arity - 1))))
    }
}

fn dense_core(lits: &[DenseLiteral], sets: &[u8], y: u32) -> Result<SmallVec<[DenseLiteral; 4]>> {
    let n = lits.len();
    let eligible = |i: usize, j: usize| sets[i] & !sets[j] == 0 && (sets[i] != sets[j] || i <= j);
    let mut out: SmallVec<[DenseLiteral; 4]> = SmallVec::with_capacity(n);
    let mut reduced: SmallVec<[u64; 4]> = SmallVec::with_capacity(n);
    for (j, l) in lits.iter().enumerate() {
        let s = l.scope.as_slice();
        let yp = s.iter().position(|&v| v == y).unwrap();
        let mut emit = 0;
        for (i, r) in lits.iter().enumerate() {
            if eligible(i, j) {
                emit |= l.mask & flip(lift(r.mask, &r.scope, s), yp);
            }
        }
        let mut scope = SmallVec::from_slice(&s[..yp]);
        scope.extend_from_slice(&s[yp + 1..]);
        let mask = drop_position(emit, yp, s.len());
        reduced.push(mask);
        out.push(DenseLiteral { scope, mask });
    }
    // removing y keeps the eligible pairs unchanged
    for j in 0..n {
        let mut m = reduced[j];
        for i in (0..n).filter(|&i| i != j && eligible(i, j)) {
            m &= !lift(reduced[i], &out[i].scope, &out[j].scope);
        }
        if m.count_ones() > lits[j].mask.count_ones() {
            return Err(Error::invariant(format!(
                "resolution on {y} grew literal {j} from {} to {} tuples",
                lits[j].mask.count_ones(),
                m.count_ones()
            )));
        }
        out[j].mask = m;
    }
    Ok(out)
}

fn eliminate_sparse(lits: &[PackedLiteral], y: u32) -> Result<Vec<PackedLiteral>> {
    let scopes: Vec<&[u32]> = lits.iter().map(|l| l.scope.as_slice()).collect();
    let n = lits.len();
    let pos = |j: usize, v: u32| lits[j].scope.iter().position(|&w| w == v).unwrap();
    // keys[i]: tuples of R_i as (bits on S_i ∖ y, value of y)
    let keys: Vec<HashSet<(Bits, bool)>> = (0..n)
        .map(|i| {
            let yp = pos(i, y);
            let rest: Vec<usize> = (0..lits[i].scope.len()).filter(|&p| p != yp).collect();
            lits[i]
                .tuples
                .iter()
                .map(|t| (gather(t, &rest), get(t, yp)))
                .collect()
        })
        .collect();

    let mut out: Vec<HashSet<Bits>> = vec![HashSet::new(); n];
    for j in 0..n {
        let yp = pos(j, y);
        let drop_y: Vec<usize> = (0..lits[j].scope.len()).filter(|&p| p != yp).collect();
        for i in (0..n).filter(|&i| below(&scopes, i, j)) {
            let map: Vec<usize> = lits[i]
                .scope
                .iter()
                .filter(|&&v| v != y)
                .map(|&v| pos(j, v))
                .collect();
            for u in &lits[j].tuples {
                if keys[i].contains(&(gather(u, &map), !get(u, yp))) {
                    out[j].insert(gather(u, &drop_y));
                }
            }
        }
    }

    let reduced: Vec<Vec<u32>> = lits
        .iter()
        .map(|l| l.scope.iter().copied().filter(|&v| v != y).collect())
        .collect();
    let reduced_refs: Vec<&[u32]> = reduced.iter().map(Vec::as_slice).collect();
    let mut result = Vec::with_capacity(n);
    for j in 0..n {
        let mut kept: Vec<Bits> = out[j]
            .iter()
            .filter(|u| {
                !(0..n).any(|i| {
                    if i == j || !below(&reduced_refs, i, j) {
                        return false;
                    }
                    let map: Vec<usize> = reduced[i]
                        .iter()
                        .map(|v| reduced[j].iter().position(|w| w == v).unwrap())
                        .collect();
                    out[i].contains(&gather(u, &map))
                })
            })
            .cloned()
            .collect();
        kept.sort();
        let before: HashSet<&Bits> = lits[j].tuples.iter().collect();
        if kept.len() > before.len() {
            return Err(Error::invariant(format!(
                "resolution on {y} grew literal {j} from {} to {} tuples",
                before.len(),
                kept.len()
            )));
        }
        result.push(PackedLiteral {
            scope: reduced[j].clone(),
            tuples: kept,
        });
    }
    Ok(result)
}

/// Variable numbering used to move an all-negative query over `{0,1}` into
/// packed form and back.
pub(crate) struct Packing {
    names: Vec<String>,
    ids: HashMap<String, u32>,
}

impl Packing {
    pub(crate) fn new(q: &QueryInstance) -> Result<(Packing, Vec<PackedLiteral>)> {
        if q.domain() != 2 {
            return Err(Error::invalid("boolean elimination needs domain {0,1}"));
        }
        if let Some(l) = q.literals().iter().find(|l| l.is_positive()) {
            return Err(Error::invalid(format!("literal {} is positive", l.symbol)));
        }
        let names = q.variables();
        let ids: HashMap<String, u32> = names
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i as u32))
            .collect();
        let packed = q
            .literals()
            .iter()
            .map(|l| {
                let scope = l.vars.iter().map(|v| ids[v]).collect();
                let rows: Vec<Vec<u32>> = l.relation.tuples().iter().cloned().collect();
                PackedLiteral::from_rows(scope, &rows)
            })
            .collect();
        Ok((Packing { names, ids }, packed))
    }

    pub(crate) fn id(&self, v: &str) -> Result<u32> {
        self.ids
            .get(v)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    /// Rebuilds the literals of `q` from their packed counterparts.
    pub(crate) fn unpack(&self, q: &QueryInstance, packed: &[PackedLiteral]) -> QueryInstance {
        let literals = q
            .literals()
            .iter()
            .zip(packed)
            .map(|(l, p)| Literal {
                symbol: l.symbol.clone(),
                polarity: Polarity::Negative,
                vars: p
                    .scope
                    .iter()
                    .map(|&v| self.names[v as usize].clone())
                    .collect(),
                relation: Relation::from_tuples(p.scope.len(), p.rows()).expect("rows match scope"),
            })
            .collect();
        q.with_literals(literals)
    }
}

/// Eliminates the boolean nest-point `y` from an all-negative query whose
/// literal scopes all contain `y` and form a ⊆-chain. Literals keep their
/// symbols and lose the column of `y`.
pub fn eliminate_boolean_nest_point(q: &QueryInstance, y: &str) -> Result<QueryInstance> {
    let (packing, packed) = Packing::new(q)?;
    let y = packing.id(y)?;
    let out = eliminate_packed(&packed, y)?;
    Ok(packing.unpack(q, &out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn neg(symbol: &str, vars: &[&str], rows: &[&[u32]]) -> Literal {
        let r = Relation::from_tuples(vars.len(), rows.iter().map(|r| r.to_vec())).unwrap();
        Literal::negative(symbol, vars, r)
    }

    fn run(lits: Vec<Literal>, y: &str) -> QueryInstance {
        eliminate_boolean_nest_point(&QueryInstance::new(lits, 2).unwrap(), y).unwrap()
    }

    #[test]
    fn resolving_inside_one_literal() {
        let out = run(vec![neg("R", &["x", "y"], &[&[0, 0], &[0, 1]])], "y");
        assert_eq!(out.literals()[0].vars, ["x"]);
        assert_eq!(
            out.literals()[0]
                .relation
                .tuples()
                .iter()
                .collect::<Vec<_>>(),
            [&vec![0]]
        );

        let out = run(vec![neg("R", &["x", "y"], &[&[0, 0]])], "y");
        assert!(out.literals()[0].relation.is_empty());
    }

    #[test]
    fn resolving_across_literals() {
        let out = run(
            vec![
                neg("R", &["x", "y"], &[&[0, 0]]),
                neg("S", &["x", "y"], &[&[0, 1]]),
            ],
            "y",
        );
        let forbidden: usize = out.literals().iter().map(|l| l.relation.len()).sum();
        assert_eq!(forbidden, 1);
        assert!(out.literal("S").unwrap().relation.contains(&[0]));
    }

    #[test]
    fn subsumed_tuples_are_dropped() {
        // y-free clauses: (x=0) from R and (x=0, z=1) from S; the second is implied.
        let out = run(
            vec![
                neg("R", &["x", "y"], &[&[0, 0], &[0, 1]]),
                neg("S", &["x", "y", "z"], &[&[0, 0, 1], &[0, 1, 1]]),
            ],
            "y",
        );
        assert_eq!(out.literal("R").unwrap().relation.len(), 1);
        assert!(out.literal("S").unwrap().relation.is_empty());
    }

    #[test]
    fn preconditions_are_checked() {
        let q = QueryInstance::new(
            vec![neg("R", &["x", "y"], &[]), neg("S", &["y", "z"], &[])],
            2,
        )
        .unwrap();
        assert!(matches!(
            eliminate_boolean_nest_point(&q, "y"),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            eliminate_boolean_nest_point(&q, "x"),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn wide_scopes_pack_correctly() {
        let scope: Vec<u32> = (0..70).collect();
        let mut row = vec![0u32; 70];
        row[69] = 1;
        row[3] = 1;
        let p = PackedLiteral::from_rows(scope, &[row.clone()]);
        assert_eq!(p.rows(), vec![row]);
    }

    #[test]
    fn dense_and_sparse_paths_agree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let width = rng.gen_range(1..=5usize);
            let small = rng.gen_range(1..=width);
            let scopes: Vec<Vec<u32>> =
                vec![(0..small as u32).collect(), (0..width as u32).collect()];
            let lits: Vec<PackedLiteral> = scopes
                .iter()
                .map(|sc| {
                    let rows: Vec<Vec<u32>> = crate::cqneg::all_tuples(sc.len(), 2)
                        .filter(|_| rng.gen_bool(0.4))
                        .collect();
                    PackedLiteral::from_rows(sc.clone(), &rows)
                })
                .collect();
            let y = rng.gen_range(0..small as u32);
            let dense = eliminate_packed(&lits, y).unwrap();
            let sparse = eliminate_sparse(&lits, y).unwrap();
            assert_eq!(dense, sparse);
        }
    }
}
