use serde_json::Value;
use ubaforge::alphabet::Alphabet;
use ubaforge::ltl::Atom;
use ubaforge_web::{check_word_json, letters_label, parse_letters, translate_json, vwaa_json, DemoError};

fn ab() -> Alphabet {
    Alphabet::new(vec![Atom::new("a"), Atom::new("b")], 8).unwrap()
}

#[test]
fn translation_reports_graph_and_hoa() {
    let r = translate_json("F G a", true, true);
    assert_eq!(r["ok"], true);
    assert!(r["hoa"].as_str().unwrap().starts_with("HOA: v1"));
    let nodes = r["graph"]["nodes"].as_array().unwrap();
    assert_eq!(nodes.len() as u64, r["stats"]["uba_states"].as_u64().unwrap());
    assert_eq!(r["stats"]["iterations"], 1);
    assert_eq!(r["stats"]["methods"], serde_json::json!(["heuristic"]));
    for arc in r["graph"]["arcs"].as_array().unwrap() {
        assert_eq!(arc["to"].as_array().unwrap().len(), 1);
    }
}

#[test]
fn parse_errors_come_back_as_json() {
    let r = translate_json("a U", true, true);
    assert_eq!(r["ok"], false);
    assert!(!r["error"].as_str().unwrap().is_empty());
}

#[test]
fn standard_step_shows_a_complement_state() {
    let r = vwaa_json("F G a", false, true);
    assert_eq!(r["ok"], true);
    let names: Vec<&str> = r["graph"]["nodes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|n| n["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"~(G a)"), "{names:?}");
    let fork = r["graph"]["arcs"]
        .as_array()
        .unwrap()
        .iter()
        .any(|a| a["to"].as_array().unwrap().len() == 2);
    assert!(fork);
}

#[test]
fn word_syntax() {
    let a = ab();
    assert_eq!(parse_letters("a,b; ; b", &a).unwrap(), vec![3, 0, 2]);
    assert_eq!(parse_letters("a b", &a).unwrap(), vec![3]);
    assert!(parse_letters("  ", &a).unwrap().is_empty());
    assert!(matches!(parse_letters("c", &a), Err(DemoError::UnknownAtom(n)) if n == "c"));
}

#[test]
fn labels_use_atom_names() {
    let a = ab();
    assert_eq!(letters_label(&[1, 3].into_iter().collect(), &a), "a");
    assert_eq!(letters_label(&[0].into_iter().collect(), &a), "!a & !b");
    assert_eq!(letters_label(&(0..4).collect(), &a), "true");
    assert_eq!(letters_label(&Default::default(), &a), "false");
}

fn verdict(f: &str, u: &str, v: &str) -> (bool, bool) {
    let r: Value = check_word_json(f, u, v);
    assert_eq!(r["ok"], true, "{r}");
    assert_eq!(r["single_run"], true);
    (r["holds"].as_bool().unwrap(), r["accepted"].as_bool().unwrap())
}

#[test]
fn word_checks_agree_with_the_formula() {
    assert_eq!(verdict("F G a", "; ;", "a"), (true, true));
    assert_eq!(verdict("F G a", "a", "a; "), (false, false));
    assert_eq!(verdict("G (a -> F b)", "", "a; b"), (true, true));
    assert_eq!(verdict("G (a -> F b)", "b", "a"), (false, false));
}

#[test]
fn empty_loop_is_rejected() {
    let r = check_word_json("a", "a", " ");
    assert_eq!(r["ok"], false);
}
