use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::alphabet::{Alphabet, LetterSet};
use crate::bits::BitSet;
use crate::degeneralize::Nba;
use crate::gba::Tgba;

use super::label::label;

/// Header fields that are not derived from the automaton itself.
#[derive(Clone, Debug, Default)]
pub struct HoaOptions {
    pub name: Option<String>,
    /// Emit `unambiguous` among the properties.
    pub unambiguous: bool,
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

fn marks(set: &BitSet) -> String {
    let items: Vec<String> = set.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", items.join(" "))
}

fn header(out: &mut String, alphabet: &Alphabet, states: usize, initial: &[usize], opts: &HoaOptions) {
    out.push_str("HOA: v1\n");
    if let Some(name) = &opts.name {
        let _ = writeln!(out, "name: {}", quote(name));
    }
    let _ = writeln!(out, "States: {states}");
    for i in initial {
        let _ = writeln!(out, "Start: {i}");
    }
    let _ = write!(out, "AP: {}", alphabet.atoms().len());
    for a in alphabet.atoms() {
        let _ = write!(out, " {}", quote(a.name()));
    }
    out.push('\n');
}

fn properties(out: &mut String, base: &str, opts: &HoaOptions) {
    let _ = write!(out, "properties: trans-labels explicit-labels {base}");
    if opts.unambiguous {
        out.push_str(" unambiguous");
    }
    out.push('\n');
}

/// HOA v1 text for a state-based Büchi automaton. An automaton without
/// states is written as a single state without transitions.
pub fn nba_to_hoa(nba: &Nba, opts: &HoaOptions) -> String {
    let mut out = String::new();
    let atoms = nba.alphabet.atoms().len();
    if nba.len == 0 {
        header(&mut out, &nba.alphabet, 1, &[0], opts);
        out.push_str("acc-name: Buchi\nAcceptance: 1 Inf(0)\n");
        properties(&mut out, "state-acc", opts);
        out.push_str("--BODY--\nState: 0\n--END--\n");
        return out;
    }
    header(&mut out, &nba.alphabet, nba.len, &nba.initial, opts);
    out.push_str("acc-name: Buchi\nAcceptance: 1 Inf(0)\n");
    properties(&mut out, "state-acc", opts);
    out.push_str("--BODY--\n");
    for q in 0..nba.len {
        let _ = write!(out, "State: {q}");
        if let Some(name) = nba.names.get(q) {
            let _ = write!(out, " {}", quote(name));
        }
        if nba.accepting[q] {
            out.push_str(" {0}");
        }
        out.push('\n');
        let mut by_target: BTreeMap<usize, LetterSet> = BTreeMap::new();
        for &(a, t) in &nba.edges[q] {
            by_target.entry(t).or_default().insert(a as usize);
        }
        for (t, letters) in by_target {
            let _ = writeln!(out, "[{}] {t}", label(&letters, atoms));
        }
    }
    out.push_str("--END--\n");
    out
}

/// HOA v1 text for a transition-based generalized Büchi automaton.
pub fn tgba_to_hoa<S>(g: &Tgba<S>, name: impl Fn(&S) -> String, opts: &HoaOptions) -> String {
    let mut out = String::new();
    let atoms = g.alphabet.atoms().len();
    let n = g.num_sets;
    let empty = g.states.is_empty();
    if empty {
        header(&mut out, &g.alphabet, 1, &[0], opts);
    } else {
        header(&mut out, &g.alphabet, g.states.len(), &g.initial, opts);
    }
    if n == 0 {
        out.push_str("acc-name: all\nAcceptance: 0 t\n");
    } else {
        let conj: Vec<String> = (0..n).map(|i| format!("Inf({i})")).collect();
        let _ = writeln!(out, "acc-name: generalized-Buchi {n}\nAcceptance: {n} {}", conj.join("&"));
    }
    properties(&mut out, "trans-acc", opts);
    out.push_str("--BODY--\n");
    if empty {
        out.push_str("State: 0\n--END--\n");
        return out;
    }
    for (q, s) in g.states.iter().enumerate() {
        let _ = writeln!(out, "State: {q} {}", quote(&name(s)));
        let mut groups: BTreeMap<(usize, Vec<usize>), LetterSet> = BTreeMap::new();
        for e in &g.edges[q] {
            groups
                .entry((e.target, e.acc.iter().collect()))
                .or_default()
                .insert(e.letter as usize);
        }
        for ((t, acc), letters) in groups {
            let _ = write!(out, "[{}] {t}", label(&letters, atoms));
            if !acc.is_empty() {
                let _ = write!(out, " {}", marks(&acc.into_iter().collect()));
            }
            out.push('\n');
        }
    }
    out.push_str("--END--\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::Atom;

    #[test]
    fn single_accepting_state() {
        let nba = Nba {
            alphabet: Alphabet::new(vec![Atom::new("a")], 16).unwrap(),
            len: 1,
            initial: vec![0],
            edges: vec![vec![(0, 0), (1, 0)]],
            accepting: vec![true],
            names: vec!["q".into()],
        };
        let text = nba_to_hoa(&nba, &HoaOptions::default());
        assert!(text.contains("Acceptance: 1 Inf(0)\n"));
        assert!(text.contains("State: 0 \"q\" {0}\n[t] 0\n--END--"));
    }

    #[test]
    fn generalized_header() {
        let g: Tgba<usize> = Tgba {
            alphabet: Alphabet::new(vec![Atom::new("a")], 16).unwrap(),
            states: vec![0],
            initial: vec![0],
            edges: vec![vec![crate::gba::Edge {
                letter: 1,
                target: 0,
                acc: [0, 1].into_iter().collect(),
            }]],
            num_sets: 2,
            set_names: vec![String::new(); 2],
        };
        let text = tgba_to_hoa(&g, |q| q.to_string(), &HoaOptions::default());
        assert!(text.contains("Acceptance: 2 Inf(0)&Inf(1)\n"));
        assert!(text.contains("[0] 0 {0 1}\n"));
    }
}
