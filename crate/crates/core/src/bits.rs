//! Small dense bitsets used for letter sets and acceptance marks.

use std::fmt;

use smallvec::SmallVec;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BitSet {
    words: SmallVec<[u64; 1]>,
}

impl BitSet {
    pub fn new() -> BitSet {
        BitSet::default()
    }

    /// The set `{0, …, n-1}`.
    pub fn full(n: usize) -> BitSet {
        let mut s = BitSet::new();
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    pub fn singleton(i: usize) -> BitSet {
        let mut s = BitSet::new();
        s.insert(i);
        s
    }

    pub fn insert(&mut self, i: usize) {
        let w = i / 64;
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        if let Some(word) = self.words.get_mut(i / 64) {
            *word &= !(1 << (i % 64));
            self.trim();
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| w & (1 << (i % 64)) != 0)
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &BitSet) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        self.words.truncate(other.words.len());
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        self.trim();
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        self.trim();
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn union(&self, other: &BitSet) -> BitSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words.len() <= other.words.len()
            && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + bit)
            })
        })
    }

    /// Concatenation: the bits of `other` shifted up by `offset`.
    pub fn concat(&self, offset: usize, other: &BitSet) -> BitSet {
        let mut s = self.clone();
        for i in other.iter() {
            s.insert(offset + i);
        }
        s
    }

    // Keeps the representation canonical so derived equality and hashing work.
    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

impl FromIterator<usize> for BitSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> BitSet {
        let mut s = BitSet::new();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_after_removal() {
        let mut a = BitSet::singleton(70);
        a.remove(70);
        assert_eq!(a, BitSet::new());
        let b: BitSet = [1, 3, 64].into_iter().collect();
        let c: BitSet = [3, 64].into_iter().collect();
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![1, 3, 64]);
        let mut d = b.clone();
        d.intersect_with(&BitSet::singleton(1));
        assert_eq!(d, BitSet::singleton(1));
        assert!(c.is_subset(&b) && !b.is_subset(&c));
        assert_eq!(b.len(), 3);
    }

    #[test]
    fn concat_shifts() {
        let a = BitSet::singleton(0);
        assert_eq!(a.concat(2, &BitSet::singleton(1)), [0, 3].into_iter().collect());
    }
}
