//! LTL to VWAA translation by the expansion laws
//!
//! ```text
//! δ(φ U ψ) = δ(ψ) ∪ (δ(φ) ⊗ {(Σ, {φ U ψ})})
//! δ(φ R ψ) = δ(ψ) ⊗ (δ(φ) ∪ {(Σ, {φ R ψ})})
//! ```
//!
//! computed on formulas first and then mapped to states, one state per
//! distinct non-Boolean formula.

use std::collections::HashMap;
use std::rc::Rc;

use super::{normalize_pairs, State, StateId, StateSet, Transition, Vwaa, VwaaError};
use crate::alphabet::{Alphabet, LetterSet, DEFAULT_AP_CAP};
use crate::ltl::{is_purely_eventual, to_pnf, Formula, Kind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TranslationOptions {
    /// Translate `G μ` as `G X μ` when `μ` is purely-eventual.
    pub suspension: bool,
    pub ap_cap: usize,
}

impl Default for TranslationOptions {
    fn default() -> Self {
        TranslationOptions {
            suspension: true,
            ap_cap: DEFAULT_AP_CAP,
        }
    }
}

pub fn ltl_to_vwaa(f: Formula, options: TranslationOptions) -> Result<Vwaa, VwaaError> {
    let alphabet = Alphabet::of_formula(f, options.ap_cap)?;
    ltl_to_vwaa_over(f, alphabet, options.suspension)
}

/// Translates over a given alphabet, which may mention atoms that do not
/// occur in `f`.
pub fn ltl_to_vwaa_over(f: Formula, alphabet: Alphabet, suspension: bool) -> Result<Vwaa, VwaaError> {
    if let Some(&atom) = f.atoms().iter().find(|&&x| alphabet.index_of(x).is_none()) {
        return Err(VwaaError::UnknownAtom(atom));
    }
    let mut f = to_pnf(f);
    if suspension {
        f = suspend(f);
    }
    let mut vwaa = Vwaa {
        alphabet,
        states: Vec::new(),
        initial: 0,
        index: HashMap::new(),
        suspension,
    };
    vwaa.initial = vwaa.add_formula(f);
    Ok(vwaa)
}

/// Rewrites every `G μ` with purely-eventual `μ` into `G X μ`.
pub fn suspend(f: Formula) -> Formula {
    let rebuilt = match f.kind() {
        Kind::Not(x) => Formula::not(suspend(x)),
        Kind::And(l, r) => Formula::and(suspend(l), suspend(r)),
        Kind::Or(l, r) => Formula::or(suspend(l), suspend(r)),
        Kind::Next(x) => Formula::next(suspend(x)),
        Kind::Until(l, r) => Formula::until(suspend(l), suspend(r)),
        Kind::Release(l, r) => Formula::release(suspend(l), suspend(r)),
        _ => f,
    };
    match rebuilt.as_globally() {
        Some(mu) if !matches!(mu.kind(), Kind::Next(_)) && is_purely_eventual(mu) => {
            Formula::globally(Formula::next(mu))
        }
        _ => rebuilt,
    }
}

type FormulaSet = Vec<Formula>;
type FormulaDelta = Vec<(LetterSet, FormulaSet)>;

fn is_subset(a: &FormulaSet, b: &FormulaSet) -> bool {
    a.len() <= b.len() && a.iter().all(|x| b.binary_search(x).is_ok())
}

fn union(a: &FormulaSet, b: &FormulaSet) -> FormulaSet {
    let mut out: FormulaSet = a.iter().chain(b).copied().collect();
    out.sort();
    out.dedup();
    out
}

struct Translator<'a> {
    alphabet: &'a Alphabet,
    memo: HashMap<Formula, Rc<FormulaDelta>>,
}

impl Translator<'_> {
    fn delta(&mut self, f: Formula) -> Rc<FormulaDelta> {
        if let Some(d) = self.memo.get(&f) {
            return Rc::clone(d);
        }
        let sigma = self.alphabet.sigma();
        let pairs: FormulaDelta = match f.kind() {
            Kind::True => vec![(sigma, vec![])],
            Kind::False => vec![],
            Kind::Atom(a) => vec![(self.alphabet.literal(a, true), vec![])],
            Kind::NegAtom(a) => vec![(self.alphabet.literal(a, false), vec![])],
            Kind::Not(_) => panic!("translation expects positive normal form, got {f}"),
            Kind::And(l, r) => {
                let (dl, dr) = (self.delta(l), self.delta(r));
                product(&dl, &dr)
            }
            Kind::Or(l, r) => {
                let mut out = self.delta(l).to_vec();
                out.extend(self.delta(r).iter().cloned());
                out
            }
            Kind::Next(x) => models(x).into_iter().map(|s| (sigma.clone(), s)).collect(),
            Kind::Until(l, r) => {
                let mut out = self.delta(r).to_vec();
                out.extend(product(&self.delta(l), &[(sigma, vec![f])]));
                out
            }
            Kind::Release(l, r) => {
                let mut stay = self.delta(l).to_vec();
                stay.push((sigma, vec![f]));
                product(&self.delta(r), &stay)
            }
        };
        let d = Rc::new(normalize_pairs(pairs, is_subset));
        self.memo.insert(f, Rc::clone(&d));
        d
    }
}

fn product(x: &[(LetterSet, FormulaSet)], y: &[(LetterSet, FormulaSet)]) -> FormulaDelta {
    let mut out = Vec::new();
    for (l1, s1) in x {
        for (l2, s2) in y {
            let letters = l1.intersection(l2);
            if !letters.is_empty() {
                out.push((letters, union(s1, s2)));
            }
        }
    }
    out
}

/// Minimal models of `f` read as a positive Boolean combination of its
/// non-Boolean subformulas.
fn models(f: Formula) -> Vec<FormulaSet> {
    let mut out = match f.kind() {
        Kind::True => vec![vec![]],
        Kind::False => vec![],
        Kind::And(l, r) => {
            let ml = models(l);
            let mr = models(r);
            ml.iter().flat_map(|a| mr.iter().map(move |b| union(a, b))).collect()
        }
        Kind::Or(l, r) => {
            let mut v = models(l);
            v.extend(models(r));
            v
        }
        _ => vec![vec![f]],
    };
    out.sort();
    out.dedup();
    let snapshot = out.clone();
    out.retain(|s| !snapshot.iter().any(|t| t != s && is_subset(t, s)));
    out
}

impl Vwaa {
    /// Returns the state for `f`, creating it and every state reachable
    /// from it that does not exist yet.
    pub(crate) fn add_formula(&mut self, f: Formula) -> StateId {
        if let Some(q) = self.state_of(f) {
            return q;
        }
        let q = self.new_formula_state(f);
        let mut translator = Translator {
            alphabet: &self.alphabet.clone(),
            memo: HashMap::new(),
        };
        let mut work = vec![q];
        while let Some(p) = work.pop() {
            let label = self.state(p).label;
            let delta = translator.delta(label);
            let transitions = self.map_delta(&delta, &mut work);
            self.set_transitions(p, transitions);
        }
        q
    }

    /// Replaces the transitions of `q` by those of the formula `f`, creating
    /// states for the successors as needed.
    pub(crate) fn replace_with_formula(&mut self, q: StateId, f: Formula) {
        let f = if self.suspension { suspend(f) } else { f };
        let mut translator = Translator {
            alphabet: &self.alphabet.clone(),
            memo: HashMap::new(),
        };
        let delta = translator.delta(f);
        let mut work = Vec::new();
        let transitions = self.map_delta(&delta, &mut work);
        self.set_transitions(q, transitions);
        while let Some(p) = work.pop() {
            let label = self.state(p).label;
            let delta = translator.delta(label);
            let transitions = self.map_delta(&delta, &mut work);
            self.set_transitions(p, transitions);
        }
    }

    fn new_formula_state(&mut self, f: Formula) -> StateId {
        self.push_state(State {
            label: f,
            complemented: false,
            is_final: matches!(f.kind(), Kind::Until(..)),
            rewritten: false,
            complement: None,
            transitions: Vec::new(),
        })
    }

    fn map_delta(&mut self, delta: &FormulaDelta, work: &mut Vec<StateId>) -> Vec<Transition> {
        delta
            .iter()
            .map(|(letters, succ)| {
                let successors: StateSet = succ
                    .iter()
                    .map(|&g| match self.state_of(g) {
                        Some(s) => s,
                        None => {
                            let s = self.new_formula_state(g);
                            work.push(s);
                            s
                        }
                    })
                    .collect();
                Transition {
                    letters: letters.clone(),
                    successors,
                }
            })
            .collect()
    }
}
