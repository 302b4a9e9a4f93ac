use std::collections::HashSet;

use ubaforge::alphabet::Alphabet;
use ubaforge::ltl::Atom;
use ubaforge::oracle::{all_lassos, distinct_lassos, enumerate_formulas, nba_accepts, nba_unambiguous, LtlEvaluator};
use ubaforge::pipeline::{translate_over, PipelineConfig};

fn atoms() -> Vec<Atom> {
    vec![Atom::new("a"), Atom::new("b")]
}

#[test]
fn enumeration_sizes_are_stable() {
    let small = enumerate_formulas(3, &atoms());
    assert_eq!(small.len(), SMALL_CORPUS);
    assert_eq!(enumerate_formulas(3, &atoms()), small);
}

#[test]
fn lasso_universe_sizes() {
    assert_eq!(all_lassos(4, 3, 3).len(), 7140);
    let canonical = distinct_lassos(4, 3, 3);
    assert!(canonical.len() < 7140);
    let unique: HashSet<_> = canonical.iter().collect();
    assert_eq!(unique.len(), canonical.len());
}

#[test]
fn small_corpus_translates_soundly() {
    let ab = Alphabet::new(atoms(), 8).unwrap();
    let words = distinct_lassos(4, 3, 3);
    for f in enumerate_formulas(3, &atoms()) {
        let t = translate_over(f, ab.clone(), &PipelineConfig::default()).unwrap();
        assert!(nba_unambiguous(&t.nba), "{f}");
        let eval = LtlEvaluator::new(f, &ab);
        for w in &words {
            assert_eq!(nba_accepts(&t.nba, w), eval.holds(w), "{f} on {}", w.display(&ab));
        }
    }
}

// Regression anchor recorded from the first run.
const SMALL_CORPUS: usize = 210;
