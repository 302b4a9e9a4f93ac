//! Very weak alternating co-Büchi automata whose states are LTL formulas.
//!
//! Transitions are stored in minimal-model form: each state carries a list
//! of `(letter set, successor set)` pairs, and for every letter the
//! successor sets available on it form an antichain.

mod complement;
mod stateset;
mod translate;

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use thiserror::Error;

use crate::alphabet::{Alphabet, AlphabetError, Letter, LetterSet};
use crate::ltl::{Atom, Formula};

pub use complement::add_complement_states;
pub use stateset::{minimal_hitting_sets, minimize, StateId, StateSet};
pub use translate::{ltl_to_vwaa, ltl_to_vwaa_over, suspend, TranslationOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VwaaError {
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error("atomic proposition `{0}` is not in the alphabet")]
    UnknownAtom(Atom),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub letters: LetterSet,
    pub successors: StateSet,
}

#[derive(Clone, Debug)]
pub struct State {
    /// The formula whose language this state accepts, or the complement of
    /// it when `complemented` is set.
    pub label: Formula,
    pub complemented: bool,
    pub is_final: bool,
    /// Transitions were replaced by the purely-universal heuristic.
    pub rewritten: bool,
    pub complement: Option<StateId>,
    pub transitions: Vec<Transition>,
}

impl State {
    pub fn name(&self) -> StateName<'_> {
        StateName(self)
    }
}

/// Renders a state as its formula, or `~(φ)` for a complement state.
pub struct StateName<'a>(&'a State);

impl fmt::Display for StateName<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.complemented {
            write!(f, "~({})", self.0.label)
        } else {
            write!(f, "{}", self.0.label)
        }
    }
}

#[derive(Clone, Debug)]
pub struct Vwaa {
    alphabet: Alphabet,
    states: Vec<State>,
    initial: StateId,
    index: HashMap<Formula, StateId>,
    suspension: bool,
}

impl Vwaa {
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn state(&self, q: StateId) -> &State {
        &self.states[q as usize]
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    /// The same automaton with `q` as its initial state.
    pub fn rooted_at(&self, q: StateId) -> Vwaa {
        Vwaa {
            initial: q,
            ..self.clone()
        }
    }

    pub fn suspension(&self) -> bool {
        self.suspension
    }

    /// The non-complement state labelled `f`, if any.
    pub fn state_of(&self, f: Formula) -> Option<StateId> {
        self.index.get(&f).copied()
    }

    pub fn final_states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.states.len() as StateId).filter(|&q| self.state(q).is_final)
    }

    /// `δ(q, a)`: the antichain of successor sets available on `a`.
    pub fn successor_sets(&self, q: StateId, a: Letter) -> Vec<&StateSet> {
        self.state(q)
            .transitions
            .iter()
            .filter(|t| t.letters.contains(a as usize))
            .map(|t| &t.successors)
            .collect()
    }

    /// States occurring in some successor set of `q`.
    pub fn successors(&self, q: StateId) -> StateSet {
        self.state(q)
            .transitions
            .iter()
            .flat_map(|t| t.successors.iter())
            .collect()
    }

    pub(crate) fn set_transitions(&mut self, q: StateId, transitions: Vec<Transition>) {
        self.states[q as usize].transitions = normalize(transitions);
    }

    pub(crate) fn state_mut(&mut self, q: StateId) -> &mut State {
        &mut self.states[q as usize]
    }

    fn push_state(&mut self, state: State) -> StateId {
        let q = self.states.len() as StateId;
        if !state.complemented {
            self.index.insert(state.label, q);
        }
        self.states.push(state);
        q
    }

    /// Every SCC of the underlying graph is a single state.
    pub fn check_very_weak(&self) -> bool {
        let mut g = DiGraph::<(), ()>::new();
        let nodes: Vec<_> = self.states.iter().map(|_| g.add_node(())).collect();
        for q in 0..self.states.len() as StateId {
            for s in self.successors(q).iter() {
                if s != q {
                    g.add_edge(nodes[q as usize], nodes[s as usize], ());
                }
            }
        }
        tarjan_scc(&g).iter().all(|scc| scc.len() == 1)
    }

    /// States reachable from `q` in the underlying graph, `q` included.
    pub fn reachable_from(&self, q: StateId) -> Vec<bool> {
        let mut seen = vec![false; self.states.len()];
        let mut stack = vec![q];
        seen[q as usize] = true;
        while let Some(p) = stack.pop() {
            for s in self.successors(p).iter() {
                if !seen[s as usize] {
                    seen[s as usize] = true;
                    stack.push(s);
                }
            }
        }
        seen
    }

    /// No state is reachable from its own complement.
    pub fn check_complement_separation(&self) -> bool {
        (0..self.states.len() as StateId).all(|q| match self.state(q).complement {
            Some(c) => !self.reachable_from(c)[q as usize],
            None => true,
        })
    }

    /// Every letter's successor sets form an antichain.
    pub fn check_antichains(&self) -> bool {
        (0..self.states.len() as StateId).all(|q| {
            self.alphabet.letters().all(|a| {
                let sets = self.successor_sets(q, a);
                sets.iter().enumerate().all(|(i, s)| {
                    sets.iter()
                        .enumerate()
                        .all(|(j, t)| i == j || !s.is_subset(t))
                })
            })
        })
    }

    /// Drops states unreachable from the initial state and renumbers the
    /// rest in breadth-first order.
    pub fn prune_unreachable(&mut self) {
        let mut order = vec![self.initial];
        let mut renumber: HashMap<StateId, StateId> = HashMap::from([(self.initial, 0)]);
        let mut i = 0;
        while i < order.len() {
            for s in self.successors(order[i]).iter() {
                if let Entry::Vacant(e) = renumber.entry(s) {
                    e.insert(order.len() as StateId);
                    order.push(s);
                }
            }
            i += 1;
        }
        let mut states = Vec::with_capacity(order.len());
        for &q in &order {
            let mut st = self.state(q).clone();
            st.complement = st.complement.and_then(|c| renumber.get(&c).copied());
            for t in &mut st.transitions {
                t.successors = t.successors.map(|s| renumber[&s]);
            }
            st.transitions.sort();
            states.push(st);
        }
        self.states = states;
        self.initial = 0;
        self.index = self
            .states
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.complemented)
            .map(|(q, s)| (s.label, q as StateId))
            .collect();
    }
}

/// Restores the antichain invariant: merges transitions with equal
/// successor sets, removes letters from a successor set whenever a strict
/// subset is available on the same letter, and drops empty letter sets.
pub fn normalize(transitions: Vec<Transition>) -> Vec<Transition> {
    let pairs = transitions.into_iter().map(|t| (t.letters, t.successors)).collect();
    normalize_pairs(pairs, StateSet::is_subset)
        .into_iter()
        .map(|(letters, successors)| Transition {
            letters,
            successors,
        })
        .collect()
}

pub(crate) fn normalize_pairs<S: Ord + Clone>(
    pairs: Vec<(LetterSet, S)>,
    is_subset: impl Fn(&S, &S) -> bool,
) -> Vec<(LetterSet, S)> {
    let mut merged: Vec<(LetterSet, S)> = Vec::new();
    let mut sorted = pairs;
    sorted.sort_by(|x, y| x.1.cmp(&y.1));
    for (letters, succ) in sorted {
        match merged.last_mut() {
            Some((l, s)) if *s == succ => l.union_with(&letters),
            _ => merged.push((letters, succ)),
        }
    }
    let mut out = Vec::with_capacity(merged.len());
    for (j, (letters, succ)) in merged.iter().enumerate() {
        let mut letters = letters.clone();
        for (i, (other_letters, other)) in merged.iter().enumerate() {
            if i != j && is_subset(other, succ) {
                letters.difference_with(other_letters);
            }
        }
        if !letters.is_empty() {
            out.push((letters, succ.clone()));
        }
    }
    out
}

/// Text adjacency listing: one block per state with its successor
/// antichain for every letter that has one.
impl fmt::Display for Vwaa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let atoms: Vec<&str> = self.alphabet.atoms().iter().map(|a| a.name()).collect();
        writeln!(
            f,
            "VWAA states={} initial={} AP=[{}]",
            self.states.len(),
            self.initial,
            atoms.join(", ")
        )?;
        for (q, st) in self.states.iter().enumerate() {
            write!(f, "state {q} \"{}\"", st.name())?;
            if st.is_final {
                write!(f, " final")?;
            }
            if let Some(c) = st.complement {
                write!(f, " complement={c}")?;
            }
            writeln!(f)?;
            for a in self.alphabet.letters() {
                let sets = self.successor_sets(q as StateId, a);
                if sets.is_empty() {
                    continue;
                }
                let rendered: Vec<String> = sets
                    .iter()
                    .map(|s| {
                        let ids: Vec<String> = s.iter().map(|x| x.to_string()).collect();
                        format!("{{{}}}", ids.join(","))
                    })
                    .collect();
                writeln!(f, "  {} -> {}", self.alphabet.display_letter(a), rendered.join(" "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(letters: &[usize], succ: &[StateId]) -> Transition {
        Transition {
            letters: letters.iter().copied().collect(),
            successors: succ.iter().copied().collect(),
        }
    }

    #[test]
    fn normalize_merges_and_removes_supersets() {
        let out = normalize(vec![t(&[0, 1], &[1]), t(&[1, 2], &[1, 2]), t(&[3], &[1])]);
        assert_eq!(out, vec![t(&[0, 1, 3], &[1]), t(&[2], &[1, 2])]);
    }

    #[test]
    fn normalize_drops_empty_letter_sets() {
        let out = normalize(vec![t(&[0], &[]), t(&[0], &[4])]);
        assert_eq!(out, vec![t(&[0], &[])]);
    }
}
