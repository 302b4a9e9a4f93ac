//! State-based Büchi automata and the counter construction turning a
//! t-GBA with `n` acceptance sets into one with copies `0..=n`.

use std::collections::HashMap;

use crate::alphabet::{Alphabet, Letter};
use crate::bits::BitSet;
use crate::gba::Tgba;

#[derive(Clone, Debug)]
pub struct Nba {
    pub alphabet: Alphabet,
    /// Number of states; states are `0..len`.
    pub len: usize,
    pub initial: Vec<usize>,
    /// Outgoing `(letter, target)` pairs per state, sorted.
    pub edges: Vec<Vec<(Letter, usize)>>,
    pub accepting: Vec<bool>,
    /// Display name per state.
    pub names: Vec<String>,
}

impl Nba {
    pub fn num_edges(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }
}

/// The copy reached from copy `i` over a transition in the acceptance sets
/// `acc`, for `n` sets. Below `n` the count advances over consecutive
/// satisfied sets; from `n` it restarts at set 0.
pub fn next_copy(i: usize, n: usize, acc: &BitSet) -> usize {
    let mut j = if i == n { 0 } else { i };
    while j < n && acc.contains(j) {
        j += 1;
    }
    j
}

/// Degeneralizes `g`, keeping only states reachable from the initial
/// states in copy 0. Copy `n` is accepting.
pub fn degeneralize<S: Clone>(g: &Tgba<S>, name: impl Fn(&S) -> String) -> Nba {
    let n = g.num_sets;
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut lookup = |p: (usize, usize), pairs: &mut Vec<(usize, usize)>| {
        *index.entry(p).or_insert_with(|| {
            pairs.push(p);
            pairs.len() - 1
        })
    };
    let initial: Vec<usize> = g.initial.iter().map(|&q| lookup((q, 0), &mut pairs)).collect();
    let mut edges = Vec::new();
    let mut next = 0;
    while next < pairs.len() {
        let (q, i) = pairs[next];
        let mut out: Vec<(Letter, usize)> = g.edges[q]
            .iter()
            .map(|e| (e.letter, lookup((e.target, next_copy(i, n, &e.acc)), &mut pairs)))
            .collect();
        out.sort();
        out.dedup();
        edges.push(out);
        next += 1;
    }
    Nba {
        alphabet: g.alphabet.clone(),
        len: pairs.len(),
        initial,
        edges,
        accepting: pairs.iter().map(|&(_, i)| i == n).collect(),
        names: pairs
            .iter()
            .map(|(q, i)| format!("{} #{i}", name(&g.states[*q])))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gba::Edge;
    use crate::ltl::Atom;

    fn edge(letter: Letter, target: usize, acc: &[usize]) -> Edge {
        Edge {
            letter,
            target,
            acc: acc.iter().copied().collect(),
        }
    }

    fn toy(edges: Vec<Vec<Edge>>, num_sets: usize) -> Tgba<usize> {
        Tgba {
            alphabet: Alphabet::new(vec![Atom::new("a")], 16).unwrap(),
            states: (0..edges.len()).collect(),
            initial: vec![0],
            edges,
            num_sets,
            set_names: vec![String::new(); num_sets],
        }
    }

    #[test]
    fn no_acceptance_sets_means_all_accepting() {
        let g = toy(vec![vec![edge(0, 1, &[])], vec![edge(1, 1, &[])]], 0);
        let nba = degeneralize(&g, |q| q.to_string());
        assert_eq!(nba.len, 2);
        assert!(nba.accepting.iter().all(|&f| f));
        assert_eq!(nba.edges, vec![vec![(0, 1)], vec![(1, 1)]]);
    }

    #[test]
    fn next_copy_counts_consecutive_sets() {
        let all: BitSet = [0, 1].into_iter().collect();
        let first = BitSet::singleton(0);
        let second = BitSet::singleton(1);
        assert_eq!(next_copy(0, 2, &all), 2);
        assert_eq!(next_copy(0, 2, &second), 0);
        assert_eq!(next_copy(1, 2, &second), 2);
        assert_eq!(next_copy(2, 2, &first), 1);
        assert_eq!(next_copy(2, 2, &BitSet::new()), 0);
        assert_eq!(next_copy(0, 1, &first), 1);
        assert_eq!(next_copy(1, 1, &first), 1);
    }

    #[test]
    fn one_set_moves_to_the_final_copy() {
        let g = toy(vec![vec![edge(0, 0, &[]), edge(1, 0, &[0])]], 1);
        let nba = degeneralize(&g, |q| q.to_string());
        assert_eq!(nba.len, 2);
        assert_eq!(nba.accepting, vec![false, true]);
        assert_eq!(nba.edges[0], vec![(0, 0), (1, 1)]);
        assert_eq!(nba.edges[1], vec![(0, 0), (1, 1)]);
    }
}
