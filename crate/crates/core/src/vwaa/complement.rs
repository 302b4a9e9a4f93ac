use std::collections::BTreeMap;

use super::{minimal_hitting_sets, State, StateId, StateSet, Transition, Vwaa};
use crate::alphabet::LetterSet;

/// Adds a complement state for every state that lacks one.
pub fn add_complement_states(a: &Vwaa) -> Vwaa {
    let mut out = a.clone();
    out.complete_complements();
    out
}

impl Vwaa {
    pub fn complete_complements(&mut self) {
        for q in 0..self.len() as StateId {
            self.ensure_complement(q);
        }
    }

    /// Returns `s̃`, creating it (and the complements it refers to) by
    /// dualizing the transitions of `s` and flipping its final flag.
    pub fn ensure_complement(&mut self, s: StateId) -> StateId {
        if let Some(c) = self.state(s).complement {
            return c;
        }
        for q in self.successors(s).iter() {
            if q != s {
                self.ensure_complement(q);
            }
        }
        let original = self.state(s);
        let c = self.push_state(State {
            label: original.label,
            complemented: !original.complemented,
            is_final: !original.is_final,
            rewritten: original.rewritten,
            complement: Some(s),
            transitions: Vec::new(),
        });
        self.state_mut(s).complement = Some(c);
        let tilde = |q: StateId| if q == s { c } else { self.state(q).complement.unwrap() };
        let mut by_family: BTreeMap<Vec<StateSet>, LetterSet> = BTreeMap::new();
        for a in self.alphabet.letters() {
            let hits = minimal_hitting_sets(&self.successor_sets(s, a));
            let family: Vec<StateSet> = hits.iter().map(|h| h.map(tilde)).collect();
            by_family.entry(family).or_default().insert(a as usize);
        }
        let transitions = by_family
            .into_iter()
            .flat_map(|(family, letters)| {
                family.into_iter().map(move |successors| Transition {
                    letters: letters.clone(),
                    successors,
                })
            })
            .collect();
        self.set_transitions(c, transitions);
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::parse_formula;
    use crate::vwaa::{ltl_to_vwaa, TranslationOptions};

    #[test]
    fn complement_of_globally() {
        let mut a = ltl_to_vwaa(parse_formula("G a").unwrap(), TranslationOptions::default()).unwrap();
        let c = a.ensure_complement(0);
        let st = a.state(c);
        assert!(st.is_final && st.complemented);
        assert_eq!(a.successor_sets(c, 1), vec![&StateSet::singleton(c)]);
        assert_eq!(a.successor_sets(c, 0), vec![&StateSet::new()]);
        assert_eq!(a.state(c).complement, Some(0));
        assert!(a.check_very_weak() && a.check_complement_separation());
    }

    #[test]
    fn complement_of_true_is_empty() {
        let mut a = ltl_to_vwaa(parse_formula("true").unwrap(), TranslationOptions::default()).unwrap();
        let c = a.ensure_complement(0);
        assert!(a.state(c).transitions.is_empty());
    }

    #[test]
    fn complements_are_involutive() {
        let a = add_complement_states(
            &ltl_to_vwaa(parse_formula("a U (b R X a)").unwrap(), TranslationOptions::default()).unwrap(),
        );
        for q in 0..a.len() as StateId {
            let c = a.state(q).complement.unwrap();
            assert_eq!(a.state(c).complement, Some(q));
            assert_ne!(a.state(c).complemented, a.state(q).complemented);
        }
        assert!(a.check_very_weak() && a.check_complement_separation());
    }
}
