//! Browser bindings for the ubaforge translator.
//!
//! Every export takes plain strings and booleans and returns a JSON string,
//! so the page needs no generated TypeScript types. The `*_json` functions
//! hold the logic and are ordinary Rust, which keeps them testable off the
//! browser.

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;
use wasm_bindgen::prelude::wasm_bindgen;

use ubaforge::alphabet::{Alphabet, Letter, LetterSet};
use ubaforge::hoa::{cover, nba_to_hoa, HoaOptions};
use ubaforge::ltl::Atom;
use ubaforge::oracle::{at_most_one_accepting_run, nba_accepts, LassoWord, LtlEvaluator};
use ubaforge::pipeline::{parse_input, translate, PipelineConfig, PipelineError, Translation};
use ubaforge::vwaa::Vwaa;

#[derive(Debug, Error)]
pub enum DemoError {
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
    #[error("the loop part of the word must contain at least one letter")]
    EmptyPeriod,
    #[error("atom `{0}` does not occur in the formula")]
    UnknownAtom(String),
}

#[derive(Serialize)]
struct Node {
    id: usize,
    name: String,
    initial: bool,
    accepting: bool,
}

#[derive(Serialize)]
struct Arc {
    from: usize,
    label: String,
    /// One target for automaton edges; any number for alternating moves.
    to: Vec<usize>,
}

#[derive(Serialize)]
struct Graph {
    nodes: Vec<Node>,
    arcs: Vec<Arc>,
}

fn config(heuristic: bool, rewrites: bool) -> PipelineConfig {
    PipelineConfig {
        heuristic,
        rewrites,
        ..PipelineConfig::default()
    }
}

fn run(formula: &str, heuristic: bool, rewrites: bool) -> Result<Translation, DemoError> {
    let f = parse_input(formula.trim(), false).map_err(PipelineError::from)?;
    Ok(translate(f, &config(heuristic, rewrites))?)
}

/// A readable Boolean formula over atom names for a set of letters.
pub fn letters_label(letters: &LetterSet, alphabet: &Alphabet) -> String {
    let atoms = alphabet.atoms();
    let cubes = cover(letters, atoms.len());
    if cubes.is_empty() {
        return "false".into();
    }
    let mut terms = Vec::new();
    for c in cubes {
        let lits: Vec<String> = atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| c.care >> i & 1 == 1)
            .map(|(i, a)| {
                if c.value >> i & 1 == 1 {
                    a.name().to_string()
                } else {
                    format!("!{}", a.name())
                }
            })
            .collect();
        if lits.is_empty() {
            return "true".into();
        }
        terms.push(lits.join(" & "));
    }
    terms.join(" | ")
}

fn uba_graph(t: &Translation) -> Graph {
    let nba = &t.nba;
    let nodes = (0..nba.len)
        .map(|q| Node {
            id: q,
            name: nba.names[q].clone(),
            initial: nba.initial.contains(&q),
            accepting: nba.accepting[q],
        })
        .collect();
    let mut arcs = Vec::new();
    for (q, edges) in nba.edges.iter().enumerate() {
        let mut targets: Vec<usize> = edges.iter().map(|&(_, r)| r).collect();
        targets.sort_unstable();
        targets.dedup();
        for r in targets {
            let letters: LetterSet = edges.iter().filter(|e| e.1 == r).map(|e| e.0 as usize).collect();
            arcs.push(Arc {
                from: q,
                label: letters_label(&letters, &nba.alphabet),
                to: vec![r],
            });
        }
    }
    Graph { nodes, arcs }
}

fn vwaa_graph(a: &Vwaa) -> Graph {
    let nodes = a
        .states()
        .iter()
        .enumerate()
        .map(|(q, s)| Node {
            id: q,
            name: s.name().to_string(),
            initial: q == a.initial() as usize,
            accepting: s.is_final,
        })
        .collect();
    let arcs = a
        .states()
        .iter()
        .enumerate()
        .flat_map(|(q, s)| {
            s.transitions.iter().map(move |t| Arc {
                from: q,
                label: letters_label(&t.letters, a.alphabet()),
                to: t.successors.iter().map(|r| r as usize).collect(),
            })
        })
        .collect();
    Graph { nodes, arcs }
}

fn error_json(e: DemoError) -> Value {
    json!({ "ok": false, "error": e.to_string() })
}

/// The UBA for `formula` as HOA text and as a graph, with size statistics.
pub fn translate_json(formula: &str, heuristic: bool, rewrites: bool) -> Value {
    match run(formula, heuristic, rewrites) {
        Ok(t) => {
            let hoa = nba_to_hoa(
                &t.nba,
                &HoaOptions {
                    name: Some(formula.trim().to_string()),
                    unambiguous: true,
                },
            );
            json!({
                "ok": true,
                "simplified": t.simplified.to_string(),
                "hoa": hoa,
                "graph": uba_graph(&t),
                "stats": {
                    "iterations": t.stats.iterations,
                    "methods": t.stats.records.iter().filter_map(|r| r.method).collect::<Vec<_>>(),
                    "initial_vwaa_states": t.initial_vwaa_states,
                    "vwaa_states": t.vwaa.len(),
                    "tgba_states": t.tgba.len(),
                    "uba_states": t.nba.len,
                    "uba_edges": t.nba.num_edges(),
                },
            })
        }
        Err(e) => error_json(e),
    }
}

/// The disambiguated alternating automaton, one arc per transition with
/// its whole successor set.
pub fn vwaa_json(formula: &str, heuristic: bool, rewrites: bool) -> Value {
    match run(formula, heuristic, rewrites) {
        Ok(t) => json!({
            "ok": true,
            "text": t.vwaa.to_string(),
            "graph": vwaa_graph(&t.vwaa),
        }),
        Err(e) => error_json(e),
    }
}

/// Parses a sequence of letters separated by `;`, each a list of the atoms
/// that hold, separated by commas or spaces. An empty entry is the letter
/// where every atom is false.
pub fn parse_letters(text: &str, alphabet: &Alphabet) -> Result<Vec<Letter>, DemoError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(';')
        .map(|letter| {
            let mut bits: Letter = 0;
            for name in letter.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
                let i = alphabet
                    .index_of(Atom::new(name))
                    .ok_or_else(|| DemoError::UnknownAtom(name.to_string()))?;
                bits |= 1 << i;
            }
            Ok(bits)
        })
        .collect()
}

fn check(formula: &str, prefix: &str, period: &str) -> Result<Value, DemoError> {
    let t = run(formula, true, true)?;
    let alphabet = t.nba.alphabet.clone();
    let u = parse_letters(prefix, &alphabet)?;
    let v = parse_letters(period, &alphabet)?;
    if v.is_empty() {
        return Err(DemoError::EmptyPeriod);
    }
    let w = LassoWord::new(u, v);
    let holds = LtlEvaluator::new(t.input, &alphabet).holds(&w);
    Ok(json!({
        "ok": true,
        "word": w.display(&alphabet).to_string(),
        "holds": holds,
        "accepted": nba_accepts(&t.nba, &w),
        "single_run": at_most_one_accepting_run(&t.nba, &w),
    }))
}

/// Evaluates `formula` on the word `prefix (period)^ω` directly and by
/// running the translated automaton.
pub fn check_word_json(formula: &str, prefix: &str, period: &str) -> Value {
    check(formula, prefix, period).unwrap_or_else(error_json)
}

#[wasm_bindgen(js_name = translate)]
pub fn translate_js(formula: &str, heuristic: bool, rewrites: bool) -> String {
    translate_json(formula, heuristic, rewrites).to_string()
}

#[wasm_bindgen(js_name = vwaa)]
pub fn vwaa_js(formula: &str, heuristic: bool, rewrites: bool) -> String {
    vwaa_json(formula, heuristic, rewrites).to_string()
}

#[wasm_bindgen(js_name = checkWord)]
pub fn check_word_js(formula: &str, prefix: &str, period: &str) -> String {
    check_word_json(formula, prefix, period).to_string()
}
