use std::collections::HashMap;

use super::{intern, Edge, GbaError, Tgba};
use crate::alphabet::Letter;
use crate::bits::BitSet;
use crate::vwaa::{StateId, StateSet, Vwaa};

pub const DEFAULT_STATE_CAP: usize = 2_000_000;

/// The configuration automaton `G_A`: states are sets of VWAA states
/// reachable from `{ι}`, `δ'(C, a)` is the product of the members'
/// successor antichains, and each final state `f` contributes the
/// acceptance set of transitions `(C, a, C')` with `f ∉ C'` or some
/// `Y ∈ δ(f, a)` with `f ∉ Y ⊆ C'`.
///
/// Configurations holding both a state and its complement have empty
/// language; they are kept as states but never expanded.
pub fn vwaa_to_tgba(a: &Vwaa, cap: usize) -> Result<Tgba<StateSet>, GbaError> {
    let mut index: HashMap<StateSet, usize> = HashMap::new();
    let mut states: Vec<StateSet> = Vec::new();
    let initial = intern(&mut index, &mut states, StateSet::singleton(a.initial()));
    let mut raw: Vec<Vec<(Letter, usize)>> = Vec::new();
    let mut next = 0;
    while next < states.len() {
        let config = states[next].clone();
        let mut out = Vec::new();
        if !holds_complementary_pair(a, &config) {
            for letter in a.alphabet().letters() {
                let mut targets: Vec<StateSet> = successor_configurations(a, &config, letter);
                targets.sort();
                targets.dedup();
                for t in targets {
                    out.push((letter, intern(&mut index, &mut states, t)));
                }
                if states.len() > cap {
                    return Err(GbaError::TooManyStates { cap });
                }
            }
        }
        out.sort();
        raw.push(out);
        next += 1;
    }

    let mut used: Vec<StateId> = a.final_states().filter(|&f| states.iter().any(|c| c.contains(f))).collect();
    used.sort_by_key(|&f| (a.state(f).label, a.state(f).complemented, f));

    let edges = raw
        .into_iter()
        .map(|out| {
            out.into_iter()
                .map(|(letter, target)| Edge {
                    letter,
                    target,
                    acc: acceptance(a, &used, letter, &states[target]),
                })
                .collect()
        })
        .collect();
    Ok(Tgba {
        alphabet: a.alphabet().clone(),
        states,
        initial: vec![initial],
        edges,
        num_sets: used.len(),
        set_names: used.iter().map(|&f| a.state(f).name().to_string()).collect(),
    })
}

pub(super) fn holds_complementary_pair(a: &Vwaa, config: &StateSet) -> bool {
    config
        .iter()
        .any(|q| a.state(q).complement.is_some_and(|c| config.contains(c)))
}

pub(super) fn successor_configurations(a: &Vwaa, config: &StateSet, letter: Letter) -> Vec<StateSet> {
    let mut acc = vec![StateSet::new()];
    for q in config.iter() {
        let sets = a.successor_sets(q, letter);
        if sets.is_empty() {
            return Vec::new();
        }
        let mut next = Vec::with_capacity(acc.len() * sets.len());
        for c in &acc {
            for s in &sets {
                next.push(c.union(s));
            }
        }
        next.sort();
        next.dedup();
        acc = next;
    }
    acc
}

pub(super) fn acceptance(a: &Vwaa, used: &[StateId], letter: Letter, target: &StateSet) -> BitSet {
    used.iter()
        .enumerate()
        .filter(|&(_, &f)| {
            !target.contains(f)
                || a.successor_sets(f, letter)
                    .iter()
                    .any(|y| !y.contains(f) && y.is_subset(target))
        })
        .map(|(i, _)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::parse_formula;
    use crate::vwaa::{ltl_to_vwaa, TranslationOptions};

    fn vwaa(s: &str) -> Vwaa {
        ltl_to_vwaa(parse_formula(s).unwrap(), TranslationOptions::default()).unwrap()
    }

    #[test]
    fn finally_globally_branches() {
        let a = vwaa("F G a");
        let g = vwaa_to_tgba(&a, DEFAULT_STATE_CAP).unwrap();
        let ga = a.state_of(parse_formula("G a").unwrap()).unwrap();
        let targets: Vec<&StateSet> = g.edges_on(0, 1).map(|e| &g.states[e.target]).collect();
        assert_eq!(targets, vec![&StateSet::singleton(0), &StateSet::singleton(ga)]);
        assert_eq!(g.num_sets, 1);
    }

    #[test]
    fn empty_configuration_is_a_universal_sink() {
        let g = vwaa_to_tgba(&vwaa("a"), DEFAULT_STATE_CAP).unwrap();
        assert_eq!(g.states, vec![StateSet::singleton(0), StateSet::new()]);
        assert_eq!(g.edges[1].len(), 2);
        assert!(g.edges[1].iter().all(|e| e.target == 1));
    }

    #[test]
    fn until_has_two_configurations() {
        let g = vwaa_to_tgba(&vwaa("a U b"), DEFAULT_STATE_CAP).unwrap();
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn complementary_configuration_is_trimmed() {
        let mut a = vwaa("G a");
        let c = a.ensure_complement(0);
        a.state_mut(0).transitions[0].successors.insert(c);
        let g = vwaa_to_tgba(&a, DEFAULT_STATE_CAP).unwrap();
        let both: StateSet = [0, c].into_iter().collect();
        let q = g.states.iter().position(|s| *s == both).unwrap();
        assert!(g.edges[q].is_empty());
        assert!(!g.trim().states.contains(&both));
    }
}
