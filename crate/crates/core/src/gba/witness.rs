use std::collections::HashMap;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;

use super::build::{acceptance, holds_complementary_pair, successor_configurations};
use super::{GbaError, Tgba};
use crate::alphabet::Letter;
use crate::bits::BitSet;
use crate::vwaa::{StateId, StateSet, Vwaa};

/// A source configuration `C`, a letter `a` and a source state `s ∈ C`
/// with two distinct transitions `S₁, S₂ ∈ δ(s, a)` leading into two
/// different successor configurations with overlapping languages.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub config: Vec<StateId>,
    pub letter: Letter,
    pub source: StateId,
    pub s1: Vec<StateId>,
    pub s2: Vec<StateId>,
}

impl Witness {
    pub fn s1_set(&self) -> StateSet {
        self.s1.iter().copied().collect()
    }

    pub fn s2_set(&self) -> StateSet {
        self.s2.iter().copied().collect()
    }
}

/// Searches `trim(G ⊗ G)` for an edge from a diagonal state `(C, C)` to an
/// off-diagonal one and returns the least witness `(C, a, s, S₁, S₂)`.
/// `g` must be the trimmed configuration automaton of `a`.
///
/// The product is never built. For each configuration, letter and member
/// state, candidate pairs of successor sets are tried in order, and only
/// the successor configurations they lead to are checked for a common
/// word. Two distinct successor configurations always differ in the choice
/// of some member state, so no off-diagonal edge is missed.
pub fn find_ambiguity_witness(a: &Vwaa, g: &Tgba<StateSet>, cap: usize) -> Result<Option<Witness>, GbaError> {
    let mut configs = LazyConfigurations::new(a, g, cap);
    for (i, config) in g.states.iter().enumerate() {
        for letter in g.alphabet.letters() {
            let targets: Vec<&StateSet> = g.edges_on(i, letter).map(|e| &g.states[e.target]).collect();
            if targets.len() < 2 {
                continue;
            }
            for s in config.iter() {
                let sets = a.successor_sets(s, letter);
                let mut candidates = Vec::new();
                for (xi, x) in sets.iter().enumerate() {
                    for (yi, y) in sets.iter().enumerate() {
                        if xi != yi {
                            let (s1, s2) = orient(s, (*x).clone(), (*y).clone());
                            candidates.push((s1, s2, xi, yi));
                        }
                    }
                }
                candidates.sort();
                for (s1, s2, xi, yi) in candidates {
                    let (x, y) = (sets[xi], sets[yi]);
                    let both = x.union(y);
                    for c1 in targets.iter().filter(|c| x.is_subset(c)) {
                        for c2 in targets.iter().filter(|c| y.is_subset(c)) {
                            if c1 == c2 || (both.is_subset(c1) && both.is_subset(c2)) {
                                continue;
                            }
                            if configs.nonempty(c1.union(c2))? {
                                return Ok(Some(Witness {
                                    config: config.iter().collect(),
                                    letter,
                                    source: s,
                                    s1: s1.iter().collect(),
                                    s2: s2.iter().collect(),
                                }));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// On-demand language nonemptiness of configurations.
///
/// A state `(C₁, C₂)` of `G ⊗ G` is nonempty iff `L(C₁) ∩ L(C₂)` is, and
/// the language of a configuration is the intersection of the languages
/// of its members, so the product check reduces to one for `C₁ ∪ C₂`.
struct LazyConfigurations<'a> {
    a: &'a Vwaa,
    cap: usize,
    finals: Vec<StateId>,
    known: HashMap<StateSet, bool>,
}

impl<'a> LazyConfigurations<'a> {
    fn new(a: &'a Vwaa, g: &Tgba<StateSet>, cap: usize) -> Self {
        // Every configuration of a trimmed automaton is nonempty.
        let known = g.states.iter().map(|c| (c.clone(), true)).collect();
        LazyConfigurations {
            a,
            cap,
            finals: a.final_states().collect(),
            known,
        }
    }

    fn nonempty(&mut self, start: StateSet) -> Result<bool, GbaError> {
        if let Some(&v) = self.known.get(&start) {
            return Ok(v);
        }
        let a = self.a;
        let mut index: HashMap<StateSet, usize> = HashMap::new();
        let mut nodes = vec![start.clone()];
        index.insert(start, 0);
        let mut graph = DiGraph::<(), ()>::new();
        graph.add_node(());
        let mut out: Vec<Vec<(Letter, usize)>> = Vec::new();
        let mut good = vec![false];
        let mut next = 0;
        while next < nodes.len() {
            let config = nodes[next].clone();
            let mut edges = Vec::new();
            if !holds_complementary_pair(a, &config) {
                for letter in a.alphabet().letters() {
                    for t in successor_configurations(a, &config, letter) {
                        if let Some(&v) = self.known.get(&t) {
                            good[next] |= v;
                            continue;
                        }
                        let n = match index.get(&t) {
                            Some(&n) => n,
                            None => {
                                index.insert(t.clone(), nodes.len());
                                nodes.push(t);
                                graph.add_node(());
                                good.push(false);
                                nodes.len() - 1
                            }
                        };
                        edges.push((letter, n));
                    }
                }
            }
            if nodes.len() + self.known.len() > self.cap {
                return Err(GbaError::TooManyStates { cap: self.cap });
            }
            for &(_, n) in &edges {
                graph.add_edge(NodeIndex::new(next), NodeIndex::new(n), ());
            }
            out.push(edges);
            next += 1;
        }
        let full = BitSet::full(self.finals.len());
        let mut comp = vec![usize::MAX; nodes.len()];
        // Successor components come first in this order.
        for (c, scc) in tarjan_scc(&graph).into_iter().enumerate() {
            let members: Vec<usize> = scc.iter().map(|n| n.index()).collect();
            for &m in &members {
                comp[m] = c;
            }
            let mut scc_good = members.iter().any(|&m| good[m]);
            let mut marks = BitSet::new();
            let mut cyclic = false;
            for &m in &members {
                for &(letter, n) in &out[m] {
                    if comp[n] == c {
                        cyclic = true;
                        if !scc_good {
                            marks.union_with(&acceptance(a, &self.finals, letter, &nodes[n]));
                        }
                    } else if good[n] {
                        scc_good = true;
                    }
                }
            }
            scc_good |= cyclic && full.is_subset(&marks);
            for &m in &members {
                good[m] = scc_good;
            }
        }
        let result = good[0];
        for (node, g) in nodes.into_iter().zip(good) {
            self.known.insert(node, g);
        }
        Ok(result)
    }
}

/// Puts the set that omits `s` first when exactly one does, and the
/// smaller set first otherwise.
fn orient(s: StateId, x: StateSet, y: StateSet) -> (StateSet, StateSet) {
    match (x.contains(s), y.contains(s)) {
        (true, false) => (y, x),
        (false, true) => (x, y),
        _ if y < x => (y, x),
        _ => (x, y),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gba::{vwaa_to_tgba, DEFAULT_STATE_CAP};
    use crate::ltl::parse_formula;
    use crate::vwaa::{ltl_to_vwaa, TranslationOptions};

    fn witness(s: &str) -> (Vwaa, Option<Witness>) {
        let a = ltl_to_vwaa(parse_formula(s).unwrap(), TranslationOptions::default()).unwrap();
        let g = vwaa_to_tgba(&a, DEFAULT_STATE_CAP).unwrap().trim();
        let w = find_ambiguity_witness(&a, &g, DEFAULT_STATE_CAP).unwrap();
        (a, w)
    }

    #[test]
    fn finally_globally_is_ambiguous() {
        let (a, w) = witness("F G a");
        let ga = a.state_of(parse_formula("G a").unwrap()).unwrap();
        assert_eq!(
            w,
            Some(Witness {
                config: vec![0],
                letter: 1,
                source: 0,
                s1: vec![ga],
                s2: vec![0],
            })
        );
    }

    #[test]
    fn deterministic_formulas_have_no_witness() {
        for s in ["G a", "a U b", "X (a & b)", "a R b"] {
            assert_eq!(witness(s).1, None, "{s}");
        }
    }
}
