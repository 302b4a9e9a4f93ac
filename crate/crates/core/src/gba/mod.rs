//! Transition-based generalized Büchi automata: the configuration
//! automaton of a VWAA, trimming, the self-product and the search for
//! ambiguity witnesses.

mod build;
mod witness;

use std::collections::HashMap;
use std::hash::Hash;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use thiserror::Error;

use crate::alphabet::{Alphabet, Letter};
use crate::bits::BitSet;

pub use build::{vwaa_to_tgba, DEFAULT_STATE_CAP};
pub use witness::{find_ambiguity_witness, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GbaError {
    #[error("automaton exceeds the state limit of {cap}")]
    TooManyStates { cap: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub letter: Letter,
    pub target: usize,
    /// Indices of the acceptance sets containing this transition.
    pub acc: BitSet,
}

/// A t-GBA with explicit per-letter edges. `S` is the state payload:
/// a configuration for automata built from a VWAA, a pair of indices for
/// products.
#[derive(Clone, Debug)]
pub struct Tgba<S> {
    pub alphabet: Alphabet,
    pub states: Vec<S>,
    pub initial: Vec<usize>,
    /// Outgoing edges per state, sorted by letter and then target.
    pub edges: Vec<Vec<Edge>>,
    pub num_sets: usize,
    /// Human-readable name of each acceptance set.
    pub set_names: Vec<String>,
}

impl<S: Clone> Tgba<S> {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn edges_on(&self, q: usize, a: Letter) -> impl Iterator<Item = &Edge> {
        let edges = &self.edges[q];
        let start = edges.partition_point(|e| e.letter < a);
        edges[start..].iter().take_while(move |e| e.letter == a)
    }

    /// Marks states whose language is nonempty: those that can reach a
    /// nontrivial SCC whose internal transitions meet every acceptance set.
    pub fn nonempty_states(&self) -> Vec<bool> {
        let mut g = DiGraph::<(), ()>::with_capacity(self.len(), self.num_edges());
        let nodes: Vec<_> = (0..self.len()).map(|_| g.add_node(())).collect();
        for (q, edges) in self.edges.iter().enumerate() {
            for e in edges {
                g.add_edge(nodes[q], nodes[e.target], ());
            }
        }
        let mut scc_of = vec![0usize; self.len()];
        let sccs = tarjan_scc(&g);
        for (i, scc) in sccs.iter().enumerate() {
            for n in scc {
                scc_of[n.index()] = i;
            }
        }
        let full = BitSet::full(self.num_sets);
        let mut marks = vec![BitSet::new(); sccs.len()];
        let mut cyclic = vec![false; sccs.len()];
        for (q, edges) in self.edges.iter().enumerate() {
            for e in edges {
                if scc_of[q] == scc_of[e.target] {
                    cyclic[scc_of[q]] = true;
                    marks[scc_of[q]].union_with(&e.acc);
                }
            }
        }
        let mut good = vec![false; self.len()];
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for (q, edges) in self.edges.iter().enumerate() {
            for e in edges {
                preds[e.target].push(q);
            }
        }
        let mut stack: Vec<usize> = (0..self.len())
            .filter(|&q| cyclic[scc_of[q]] && full.is_subset(&marks[scc_of[q]]))
            .collect();
        for &q in &stack {
            good[q] = true;
        }
        while let Some(q) = stack.pop() {
            for &p in &preds[q] {
                if !good[p] {
                    good[p] = true;
                    stack.push(p);
                }
            }
        }
        good
    }

    /// Removes all states with empty language, keeping the relative order
    /// of the survivors.
    pub fn trim(&self) -> Tgba<S> {
        let keep = self.nonempty_states();
        let mut renumber = vec![usize::MAX; self.len()];
        let mut states = Vec::new();
        for (q, st) in self.states.iter().enumerate() {
            if keep[q] {
                renumber[q] = states.len();
                states.push(st.clone());
            }
        }
        let edges = (0..self.len())
            .filter(|&q| keep[q])
            .map(|q| {
                self.edges[q]
                    .iter()
                    .filter(|e| keep[e.target])
                    .map(|e| Edge {
                        letter: e.letter,
                        target: renumber[e.target],
                        acc: e.acc.clone(),
                    })
                    .collect()
            })
            .collect();
        Tgba {
            alphabet: self.alphabet.clone(),
            states,
            initial: self.initial.iter().filter(|&&q| keep[q]).map(|&q| renumber[q]).collect(),
            edges,
            num_sets: self.num_sets,
            set_names: self.set_names.clone(),
        }
    }

    /// The synchronous product of the automaton with itself, restricted to
    /// states reachable from pairs of initial states. Acceptance sets of the
    /// left copy come first, then those of the right copy.
    pub fn self_product(&self, cap: usize) -> Result<Tgba<(usize, usize)>, GbaError> {
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut states: Vec<(usize, usize)> = Vec::new();
        let mut seeds: Vec<(usize, usize)> = self.initial.iter().map(|&i| (i, i)).collect();
        for &i in &self.initial {
            for &j in &self.initial {
                if i != j {
                    seeds.push((i, j));
                }
            }
        }
        let mut initial = Vec::new();
        for p in seeds {
            initial.push(intern(&mut index, &mut states, p));
        }
        let mut edges: Vec<Vec<Edge>> = Vec::new();
        let mut next = 0;
        while next < states.len() {
            let (i, j) = states[next];
            let mut out = Vec::new();
            for a in self.alphabet.letters() {
                for e1 in self.edges_on(i, a) {
                    for e2 in self.edges_on(j, a) {
                        let target = intern(&mut index, &mut states, (e1.target, e2.target));
                        out.push(Edge {
                            letter: a,
                            target,
                            acc: e1.acc.concat(self.num_sets, &e2.acc),
                        });
                    }
                }
            }
            if states.len() > cap {
                return Err(GbaError::TooManyStates { cap });
            }
            out.sort();
            edges.push(out);
            next += 1;
        }
        let set_names = ["left", "right"]
            .iter()
            .flat_map(|side| self.set_names.iter().map(move |n| format!("{side}:{n}")))
            .collect();
        Ok(Tgba {
            alphabet: self.alphabet.clone(),
            states,
            initial,
            edges,
            num_sets: 2 * self.num_sets,
            set_names,
        })
    }
}

fn intern<S: Clone + Eq + Hash>(index: &mut HashMap<S, usize>, states: &mut Vec<S>, s: S) -> usize {
    if let Some(&i) = index.get(&s) {
        return i;
    }
    let i = states.len();
    index.insert(s.clone(), i);
    states.push(s);
    i
}

impl Tgba<(usize, usize)> {
    /// Some product state `(C₁, C₂)` with `C₁ ≠ C₂` exists.
    pub fn has_off_diagonal(&self) -> bool {
        self.states.iter().any(|&(i, j)| i != j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
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
            set_names: (0..num_sets).map(|i| i.to_string()).collect(),
        }
    }

    #[test]
    fn trim_without_acceptance_keeps_cycles() {
        let g = toy(vec![vec![edge(0, 1, &[]), edge(1, 2, &[])], vec![edge(0, 1, &[])], vec![]], 0);
        let t = g.trim();
        assert_eq!(t.states, vec![0, 1]);
        assert_eq!(t.edges[0], vec![edge(0, 1, &[])]);
    }

    #[test]
    fn trim_requires_every_set() {
        let g = toy(vec![vec![edge(1, 0, &[0])]], 2);
        assert!(g.trim().is_empty());
        let h = toy(vec![vec![edge(0, 0, &[0]), edge(1, 0, &[1])]], 2);
        assert_eq!(h.trim().len(), 1);
    }

    #[test]
    fn product_of_deterministic_loop_is_diagonal() {
        let g = toy(vec![vec![edge(0, 0, &[0]), edge(1, 0, &[])]], 1);
        let p = g.self_product(100).unwrap();
        assert_eq!(p.states, vec![(0, 0)]);
        assert_eq!(p.num_sets, 2);
        assert_eq!(p.edges[0][0].acc, [0, 1].into_iter().collect());
        assert!(!p.has_off_diagonal());
    }
}
