//! Every construction step checked against the lasso-word oracles on
//! random formulas over `{a, b}`.

use std::sync::OnceLock;

use proptest::prelude::*;
use ubaforge::alphabet::Alphabet;
use ubaforge::degeneralize::degeneralize;
use ubaforge::gba::{vwaa_to_tgba, DEFAULT_STATE_CAP};
use ubaforge::ltl::{
    decompose_disjunction_free, goal, is_disjunction_free, is_purely_universal, negate_pnf, simplify, to_pnf, Atom,
    Formula,
};
use ubaforge::oracle::{
    at_most_one_accepting_run, distinct_lassos, nba_accepts, nba_accepts_naive, nba_unambiguous, tgba_accepts,
    vwaa_accepts, LassoWord, LtlEvaluator,
};
use ubaforge::pipeline::{translate_over, PipelineConfig};
use ubaforge::vwaa::{add_complement_states, ltl_to_vwaa_over, Vwaa};

fn ab() -> Alphabet {
    Alphabet::new(vec![Atom::new("a"), Atom::new("b")], 8).unwrap()
}

fn words() -> &'static [LassoWord] {
    static WORDS: OnceLock<Vec<LassoWord>> = OnceLock::new();
    WORDS.get_or_init(|| distinct_lassos(4, 3, 3))
}

fn verdicts(f: Formula) -> Vec<bool> {
    let eval = LtlEvaluator::new(f, &ab());
    words().iter().map(|w| eval.holds(w)).collect()
}

fn vwaa_verdicts(a: &Vwaa) -> Vec<bool> {
    words().iter().map(|w| vwaa_accepts(a, w)).collect()
}

/// Arbitrary formulas, negations and implications included.
fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::tt()),
        Just(Formula::ff()),
        Just(Formula::atom("a")),
        Just(Formula::atom("b")),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            inner.clone().prop_map(Formula::next),
            inner.clone().prop_map(Formula::finally),
            inner.clone().prop_map(Formula::globally),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::implies(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::until(l, r)),
            (inner.clone(), inner).prop_map(|(l, r)| Formula::release(l, r)),
        ]
    })
}

/// Purely-universal formulas in positive normal form.
fn purely_universal() -> impl Strategy<Value = Formula> {
    let leaf = formula().prop_map(|f| Formula::globally(to_pnf(f)));
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::next),
            inner.clone().prop_map(Formula::finally),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::until(l, r)),
            (formula(), inner).prop_map(|(l, r)| Formula::release(to_pnf(l), r)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn positive_normal_form_keeps_the_language(f in formula()) {
        let g = to_pnf(f);
        prop_assert!(g.is_pnf());
        prop_assert_eq!(verdicts(g), verdicts(f));
        let flipped: Vec<bool> = verdicts(f).into_iter().map(|x| !x).collect();
        prop_assert_eq!(verdicts(negate_pnf(f)), flipped);
    }

    #[test]
    fn simplification_keeps_the_language(f in formula(), rules in any::<bool>()) {
        let g = simplify(to_pnf(f), rules);
        prop_assert!(g.is_pnf());
        prop_assert_eq!(verdicts(g), verdicts(f), "{} became {}", f, g);
    }

    #[test]
    fn alternating_automaton_matches_the_formula(f in formula(), suspension in any::<bool>()) {
        let a = ltl_to_vwaa_over(to_pnf(f), ab(), suspension).unwrap();
        prop_assert!(a.check_very_weak());
        prop_assert!(a.check_antichains());
        prop_assert_eq!(vwaa_verdicts(&a), verdicts(f), "{}", f);
    }

    #[test]
    fn complement_states_accept_the_complement(f in formula()) {
        let a = add_complement_states(&ltl_to_vwaa_over(to_pnf(f), ab(), true).unwrap());
        prop_assert!(a.check_very_weak());
        prop_assert!(a.check_complement_separation());
        for (q, st) in a.states().iter().enumerate() {
            let c = st.complement.expect("every state has a complement");
            let here = vwaa_verdicts(&a.rooted_at(q as u32));
            let there: Vec<bool> = vwaa_verdicts(&a.rooted_at(c)).into_iter().map(|x| !x).collect();
            prop_assert_eq!(here, there, "state {} of {}", st.name(), f);
        }
    }

    #[test]
    fn configuration_automaton_and_degeneralization(f in formula()) {
        let a = ltl_to_vwaa_over(to_pnf(f), ab(), true).unwrap();
        let g = vwaa_to_tgba(&a, DEFAULT_STATE_CAP).unwrap();
        let trimmed = g.trim();
        let nba = degeneralize(&trimmed, |c| format!("{c:?}"));
        for w in words() {
            let expected = vwaa_accepts(&a, w);
            prop_assert_eq!(tgba_accepts(&g, w), expected);
            prop_assert_eq!(tgba_accepts(&trimmed, w), expected);
            prop_assert_eq!(nba_accepts(&nba, w), expected);
            prop_assert_eq!(nba_accepts_naive(&nba, w), expected);
        }
    }

    #[test]
    fn pipeline_output_is_correct_and_unambiguous(
        f in formula(),
        heuristic in any::<bool>(),
        rewrites in any::<bool>(),
        eager_complements in any::<bool>(),
    ) {
        let config = PipelineConfig { heuristic, rewrites, eager_complements, ..PipelineConfig::default() };
        let t = translate_over(f, ab(), &config).unwrap();
        prop_assert!(nba_unambiguous(&t.nba), "{}", f);
        let expected = verdicts(f);
        for (w, &holds) in words().iter().zip(&expected) {
            prop_assert_eq!(nba_accepts(&t.nba, w), holds, "{} on {}", f, w.display(&ab()));
            prop_assert!(at_most_one_accepting_run(&t.nba, w));
        }
    }

    #[test]
    fn disjunction_free_decomposition(nu in purely_universal()) {
        prop_assert!(is_purely_universal(nu));
        let parts = decompose_disjunction_free(nu).unwrap();
        prop_assert!(!parts.is_empty());
        for &p in &parts {
            prop_assert!(is_disjunction_free(p), "{}", p);
            let unrolled = Formula::and(goal(p).unwrap(), Formula::next(p));
            prop_assert_eq!(verdicts(unrolled), verdicts(p), "goal of {}", p);
        }
        prop_assert_eq!(verdicts(Formula::or_all(parts.iter().copied())), verdicts(nu));
    }
}

#[test]
fn unambiguity_oracles_detect_the_ambiguous_input() {
    let f = to_pnf(ubaforge::ltl::parse_formula("F G a").unwrap());
    let a = ltl_to_vwaa_over(f, ab(), true).unwrap();
    let nba = degeneralize(&vwaa_to_tgba(&a, DEFAULT_STATE_CAP).unwrap().trim(), |c| format!("{c:?}"));
    assert!(!nba_unambiguous(&nba));
    assert!(words().iter().any(|w| !at_most_one_accepting_run(&nba, w)));
}
