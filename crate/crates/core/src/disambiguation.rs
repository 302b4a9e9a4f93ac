//! The disambiguation loop: find an ambiguity witness, remove it either by
//! the purely-universal heuristic or by splitting a successor set, repeat
//! until the configuration automaton is unambiguous.

use serde::Serialize;
use thiserror::Error;

use crate::gba::{find_ambiguity_witness, vwaa_to_tgba, GbaError, Tgba, Witness, DEFAULT_STATE_CAP};
use crate::ltl::{
    decompose_disjunction_free, goal, is_purely_universal, negate_pnf, Formula, Kind,
};
use crate::vwaa::{StateSet, Transition, Vwaa};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DisambiguationError {
    #[error(transparent)]
    Gba(#[from] GbaError),
    #[error("no unambiguous automaton after {cap} iterations")]
    IterationCap { cap: usize },
    #[error("witness does not match the transitions of state {state}")]
    StaleWitness { state: u32 },
    #[error("state {state} has no complement state")]
    MissingComplement { state: u32 },
}

#[derive(Debug, Clone, Copy)]
pub struct DisambiguationOptions {
    pub heuristic: bool,
    /// Add complement states for every state up front instead of on demand.
    pub eager_complements: bool,
    /// Defaults to `10·n²` for a formula with `n` subformulas.
    pub max_iterations: Option<usize>,
    pub state_cap: usize,
}

impl Default for DisambiguationOptions {
    fn default() -> Self {
        DisambiguationOptions {
            heuristic: true,
            eager_complements: false,
            max_iterations: None,
            state_cap: DEFAULT_STATE_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Heuristic,
    Standard,
}

#[derive(Debug, Clone, Serialize)]
pub struct IterationRecord {
    pub iteration: usize,
    pub vwaa_states: usize,
    pub tgba_states: usize,
    pub witness: Option<Witness>,
    pub source_name: Option<String>,
    pub method: Option<Method>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct DisambiguationStats {
    pub iterations: usize,
    pub records: Vec<IterationRecord>,
}

/// Splits `S₂` on the letters it shares with `S₁` into the sets
/// `S₂ ∪ {s̃₁}` for `s₁ ∈ S₁ \ S₂`, and drops `S₂` there.
///
/// Members of `S₁` that also belong to `S₂` would produce a set holding
/// both a state and its complement, so they are skipped; this covers the
/// case where both sets loop on the source state.
pub fn disambiguate_step(a: &Vwaa, w: &Witness) -> Result<Vwaa, DisambiguationError> {
    let (s1, s2) = (w.s1_set(), w.s2_set());
    let source = w.source;
    let transitions = &a.state(source).transitions;
    let find = |set: &StateSet| transitions.iter().find(|t| t.successors == *set);
    let (Some(t1), Some(t2)) = (find(&s1), find(&s2)) else {
        return Err(DisambiguationError::StaleWitness { state: source });
    };
    let shared = t1.letters.intersection(&t2.letters);
    if !shared.contains(w.letter as usize) {
        return Err(DisambiguationError::StaleWitness { state: source });
    }
    let mut splits = Vec::new();
    for q in s1.iter().filter(|&q| !s2.contains(q)) {
        let c = a
            .state(q)
            .complement
            .ok_or(DisambiguationError::MissingComplement { state: q })?;
        let mut succ = s2.clone();
        succ.insert(c);
        splits.push(Transition {
            letters: shared.clone(),
            successors: succ,
        });
    }
    let mut next: Vec<Transition> = Vec::new();
    for t in transitions {
        if t.successors == s2 {
            let mut letters = t.letters.clone();
            letters.difference_with(&shared);
            if !letters.is_empty() {
                next.push(Transition {
                    letters,
                    successors: s2.clone(),
                });
            }
        } else {
            next.push(t.clone());
        }
    }
    next.extend(splits);
    let mut b = a.clone();
    b.set_transitions(source, next);
    Ok(b)
}

/// `γ = φ U ((φ & !g(ν) & X ν) | (ψ & !ν))`, built with constant folding.
pub fn lemma_gamma(phi: Formula, nu: Formula, psi: Formula) -> Option<Formula> {
    let not_goal = negate_pnf(goal(nu).ok()?);
    let step = Formula::and_folded(Formula::and_folded(phi, not_goal), Formula::next_folded(nu));
    let escape = Formula::and_folded(psi, negate_pnf(nu));
    Some(Formula::until_folded(phi, Formula::or_folded(step, escape)))
}

/// Splits `φ U rhs` into `(φ, ν, ψ)` where `ν` is the first
/// disjunction-free part of the first purely-universal disjunct of `rhs`
/// and `ψ` collects everything else.
pub fn heuristic_split(f: Formula) -> Option<(Formula, Formula, Formula)> {
    let Kind::Until(phi, rhs) = f.kind() else {
        return None;
    };
    let disjuncts = rhs.disjuncts();
    let k = disjuncts.iter().position(|&d| is_purely_universal(d))?;
    let parts = decompose_disjunction_free(disjuncts[k]).ok()?;
    let nu = parts[0];
    let rest = parts[1..]
        .iter()
        .copied()
        .chain(disjuncts.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &d)| d));
    Some((phi, nu, Formula::or_all(rest)))
}

/// The formula `ν | γ` that replaces `φ U (ν | ψ)`.
pub fn heuristic_formula(f: Formula) -> Option<Formula> {
    let (phi, nu, psi) = heuristic_split(f)?;
    Some(Formula::or(nu, lemma_gamma(phi, nu, psi)?))
}

/// Replaces the source state of `w` by the structure of `ν | γ` when its
/// formula has the shape `φ U (ν | ψ)` with purely-universal `ν`.
pub fn try_heuristic(a: &Vwaa, w: &Witness) -> Option<Vwaa> {
    let st = a.state(w.source);
    if st.complemented || st.rewritten {
        return None;
    }
    let replacement = heuristic_formula(st.label)?;
    let mut b = a.clone();
    b.replace_with_formula(w.source, replacement);
    let st = b.state_mut(w.source);
    st.rewritten = true;
    st.is_final = false;
    Some(b)
}

pub struct Disambiguated {
    pub vwaa: Vwaa,
    /// Trimmed configuration automaton of `vwaa`.
    pub tgba: Tgba<StateSet>,
    pub stats: DisambiguationStats,
}

pub fn default_iteration_cap(a: &Vwaa) -> usize {
    let n = a.state(a.initial()).label.subformulas().len();
    10 * n * n
}

pub fn disambiguation_loop(a0: &Vwaa, options: DisambiguationOptions) -> Result<Disambiguated, DisambiguationError> {
    let cap = options.max_iterations.unwrap_or_else(|| default_iteration_cap(a0));
    let mut a = a0.clone();
    if options.eager_complements {
        a.complete_complements();
    }
    let mut stats = DisambiguationStats::default();
    loop {
        let g = vwaa_to_tgba(&a, options.state_cap)?.trim();
        let witness = find_ambiguity_witness(&a, &g, options.state_cap)?;
        let mut record = IterationRecord {
            iteration: stats.iterations,
            vwaa_states: a.len(),
            tgba_states: g.len(),
            source_name: witness.as_ref().map(|w| a.state(w.source).name().to_string()),
            witness: witness.clone(),
            method: None,
        };
        let Some(w) = witness else {
            stats.records.push(record);
            if stats.iterations == 0 {
                let g = vwaa_to_tgba(a0, options.state_cap)?.trim();
                return Ok(Disambiguated {
                    vwaa: a0.clone(),
                    tgba: g,
                    stats,
                });
            }
            a.prune_unreachable();
            let g = vwaa_to_tgba(&a, options.state_cap)?.trim();
            return Ok(Disambiguated { vwaa: a, tgba: g, stats });
        };
        if stats.iterations >= cap {
            return Err(DisambiguationError::IterationCap { cap });
        }
        let rewritten = if options.heuristic { try_heuristic(&a, &w) } else { None };
        a = match rewritten {
            Some(b) => {
                record.method = Some(Method::Heuristic);
                b
            }
            None => {
                record.method = Some(Method::Standard);
                for q in w.s1.iter() {
                    a.ensure_complement(*q);
                }
                disambiguate_step(&a, &w)?
            }
        };
        if options.eager_complements {
            a.complete_complements();
        }
        stats.records.push(record);
        stats.iterations += 1;
    }
}
