use std::fmt;

use smallvec::SmallVec;

pub type StateId = u32;

/// A sorted, duplicate-free set of automaton states.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct StateSet(SmallVec<[StateId; 4]>);

impl StateSet {
    pub fn new() -> StateSet {
        StateSet::default()
    }

    pub fn singleton(q: StateId) -> StateSet {
        let mut s = StateSet::new();
        s.0.push(q);
        s
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, q: StateId) -> bool {
        self.0.binary_search(&q).is_ok()
    }

    pub fn insert(&mut self, q: StateId) {
        if let Err(pos) = self.0.binary_search(&q) {
            self.0.insert(pos, q);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = StateId> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[StateId] {
        &self.0
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        StateSet(out)
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        self.iter().filter(|&q| other.contains(q)).collect()
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.len() <= other.len() && self.iter().all(|q| other.contains(q))
    }

    pub fn map(&self, f: impl Fn(StateId) -> StateId) -> StateSet {
        self.iter().map(f).collect()
    }
}

impl FromIterator<StateId> for StateSet {
    fn from_iter<I: IntoIterator<Item = StateId>>(iter: I) -> StateSet {
        let mut v: SmallVec<[StateId; 4]> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        StateSet(v)
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Drops every set that strictly contains another one.
pub fn minimize(sets: &mut Vec<StateSet>) {
    sets.sort_by_key(|s| (s.len(), s.clone()));
    sets.dedup();
    let mut kept: Vec<StateSet> = Vec::with_capacity(sets.len());
    for s in sets.drain(..) {
        if !kept.iter().any(|k| k.is_subset(&s)) {
            kept.push(s);
        }
    }
    kept.sort();
    *sets = kept;
}

/// Minimal hitting sets of a family: the minimal models of the dual of a
/// disjunction of conjunctions.
pub fn minimal_hitting_sets(family: &[&StateSet]) -> Vec<StateSet> {
    let mut hits = vec![StateSet::new()];
    for set in family {
        let mut next = Vec::new();
        for h in &hits {
            if set.iter().any(|q| h.contains(q)) {
                next.push(h.clone());
            } else {
                for q in set.iter() {
                    let mut g = h.clone();
                    g.insert(q);
                    next.push(g);
                }
            }
        }
        minimize(&mut next);
        hits = next;
    }
    hits
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[StateId]) -> StateSet {
        v.iter().copied().collect()
    }

    #[test]
    fn union_and_subset() {
        assert_eq!(set(&[1, 3]).union(&set(&[2, 3])), set(&[1, 2, 3]));
        assert!(set(&[2]).is_subset(&set(&[1, 2])));
        assert!(!set(&[4]).is_subset(&set(&[1, 2])));
    }

    #[test]
    fn hitting_sets() {
        let (a, b) = (set(&[1, 2]), set(&[2, 3]));
        assert_eq!(minimal_hitting_sets(&[&a, &b]), vec![set(&[1, 3]), set(&[2])]);
        assert_eq!(minimal_hitting_sets(&[]), vec![set(&[])]);
        assert!(minimal_hitting_sets(&[&StateSet::new()]).is_empty());
    }

    #[test]
    fn minimize_keeps_antichain() {
        let mut v = vec![set(&[1, 2]), set(&[1]), set(&[3]), set(&[1])];
        minimize(&mut v);
        assert_eq!(v, vec![set(&[1]), set(&[3])]);
    }
}
