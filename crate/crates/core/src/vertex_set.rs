//! Compact value-semantics bit set over dense vertex ids.
//!
//! Unlike a fixed-capacity bit vector, two `VertexSet`s with the same members
//! always compare equal and hash identically, no matter how they were built.
//! Trailing zero words are never stored.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Dense identifier of a vertex inside a hypergraph's universe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

const WORD: usize = 64;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: SmallVec<[u64; 2]>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(v: VertexId) -> Self {
        let mut s = Self::new();
        s.insert(v);
        s
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, v: VertexId) -> bool {
        let (w, b) = (v.index() / WORD, v.index() % WORD);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, v: VertexId) -> bool {
        let (w, b) = (v.index() / WORD, v.index() % WORD);
        if w >= self.words.len() {
            return false;
        }
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        self.trim();
        present
    }

    pub fn contains(&self, v: VertexId) -> bool {
        let (w, b) = (v.index() / WORD, v.index() % WORD);
        self.words.get(w).is_some_and(|x| x & (1 << b) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.len() <= other.words.len()
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    pub fn is_superset(&self, other: &VertexSet) -> bool {
        other.is_subset(self)
    }

    /// True iff one of the two sets contains the other.
    pub fn comparable(&self, other: &VertexSet) -> bool {
        self.is_subset(other) || other.is_subset(self)
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w |= s;
        }
        VertexSet { words }
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = VertexSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        };
        out.trim();
        out
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        for (w, o) in out.words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
        out.trim();
        out
    }

    /// Members in ascending id order, which is the canonical vertex order.
    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(VertexId((i * WORD + b) as u32))
            })
        })
    }

    pub fn first(&self) -> Option<VertexId> {
        self.iter().next()
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = VertexId;
    type IntoIter = Box<dyn Iterator<Item = VertexId> + 'a>;

    fn into_iter(self) -> Self::IntoIter {
        Box::new(self.iter())
    }
}

/// Lexicographic order on the ascending member sequences.
impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|v| v.0)).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ids: &[u32]) -> VertexSet {
        ids.iter().map(|&i| VertexId(i)).collect()
    }

    #[test]
    fn equality_ignores_construction_history() {
        let mut a = set(&[3, 100]);
        a.remove(VertexId(100));
        assert_eq!(a, set(&[3]));
        assert_eq!(set(&[70]).difference(&set(&[70])), VertexSet::new());
    }

    #[test]
    fn set_algebra() {
        let a = set(&[0, 1, 65]);
        let b = set(&[1, 2]);
        assert_eq!(a.union(&b), set(&[0, 1, 2, 65]));
        assert_eq!(a.intersection(&b), set(&[1]));
        assert_eq!(a.difference(&b), set(&[0, 65]));
        assert!(set(&[1]).is_subset(&a));
        assert!(!a.is_subset(&b));
        assert!(a.intersects(&b));
        assert!(!set(&[65]).intersects(&b));
        assert_eq!(a.iter().map(|v| v.0).collect::<Vec<_>>(), vec![0, 1, 65]);
        assert_eq!(a.len(), 3);
    }

    #[test]
    fn order_is_lexicographic_on_members() {
        assert!(set(&[0, 5]) < set(&[1]));
        assert!(set(&[0]) < set(&[0, 1]));
        assert!(VertexSet::new() < set(&[0]));
    }
}
