//! A reader for the subset of HOA that this crate writes: explicit labels,
//! and acceptance conditions that are conjunctions of `Inf` sets.

use thiserror::Error;

use crate::alphabet::{Alphabet, AlphabetError, Letter, LetterSet};
use crate::bits::BitSet;
use crate::degeneralize::Nba;
use crate::gba::{Edge, Tgba};
use crate::ltl::Atom;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HoaError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unsupported HOA feature: {0}")]
    Unsupported(String),
    #[error("missing header field `{0}`")]
    MissingHeader(&'static str),
    #[error("state {0} is out of range")]
    StateOutOfRange(usize),
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Header(String),
    Ident(String),
    Str(String),
    Int(usize),
    Punct(char),
    Body,
    End,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, HoaError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut line = 1;
    let err = |line: usize, message: String| HoaError::Syntax { line, message };
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            line += 1;
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c == '/' && chars.get(i + 1) == Some(&'*') {
            i += 2;
            while i + 1 < chars.len() && !(chars[i] == '*' && chars[i + 1] == '/') {
                if chars[i] == '\n' {
                    line += 1;
                }
                i += 1;
            }
            i += 2;
        } else if c == '"' {
            let mut s = String::new();
            i += 1;
            loop {
                match chars.get(i) {
                    None => return Err(err(line, "unterminated string".into())),
                    Some('"') => break,
                    Some('\\') => {
                        s.extend(chars.get(i + 1));
                        i += 2;
                    }
                    Some(&ch) => {
                        if ch == '\n' {
                            line += 1;
                        }
                        s.push(ch);
                        i += 1;
                    }
                }
            }
            i += 1;
            out.push((line, Tok::Str(s)));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s.parse().map_err(|_| err(line, format!("bad integer `{s}`")))?;
            out.push((line, Tok::Int(n)));
        } else if c.is_alphabetic() || c == '_' || c == '-' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '-') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            if chars.get(i) == Some(&':') {
                i += 1;
                out.push((line, Tok::Header(word)));
            } else if word == "--BODY--" {
                out.push((line, Tok::Body));
            } else if word == "--END--" {
                out.push((line, Tok::End));
            } else {
                out.push((line, Tok::Ident(word)));
            }
        } else if "[]{}()!&|".contains(c) {
            out.push((line, Tok::Punct(c)));
            i += 1;
        } else {
            return Err(err(line, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

/// One transition, with letters over the file's AP order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoaEdge {
    pub letters: LetterSet,
    pub target: usize,
    pub marks: BitSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoaAutomaton {
    pub name: Option<String>,
    pub aps: Vec<String>,
    pub states: usize,
    pub start: Vec<usize>,
    pub num_sets: usize,
    pub properties: Vec<String>,
    pub state_names: Vec<Option<String>>,
    pub state_marks: Vec<BitSet>,
    pub edges: Vec<Vec<HoaEdge>>,
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn line(&self) -> usize {
        self.toks
            .get(self.pos)
            .or(self.toks.last())
            .map_or(1, |(l, _)| *l)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, HoaError> {
        Err(HoaError::Syntax {
            line: self.line(),
            message: message.into(),
        })
    }

    fn next(&mut self) -> Result<Tok, HoaError> {
        match self.toks.get(self.pos) {
            Some((_, t)) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => self.fail("unexpected end of input"),
        }
    }

    fn int(&mut self) -> Result<usize, HoaError> {
        match self.next()? {
            Tok::Int(n) => Ok(n),
            other => self.fail(format!("expected an integer, found {other:?}")),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), HoaError> {
        match self.next()? {
            Tok::Punct(p) if p == c => Ok(()),
            other => self.fail(format!("expected `{c}`, found {other:?}")),
        }
    }

    fn marks(&mut self) -> Result<BitSet, HoaError> {
        let mut set = BitSet::new();
        if self.peek() == Some(&Tok::Punct('{')) {
            self.pos += 1;
            while let Some(Tok::Int(n)) = self.peek() {
                set.insert(*n);
                self.pos += 1;
            }
            self.expect('}')?;
        }
        Ok(set)
    }

    /// Label expressions evaluate to the set of letters satisfying them.
    fn label_or(&mut self, k: usize) -> Result<LetterSet, HoaError> {
        let mut set = self.label_and(k)?;
        while self.peek() == Some(&Tok::Punct('|')) {
            self.pos += 1;
            set.union_with(&self.label_and(k)?);
        }
        Ok(set)
    }

    fn label_and(&mut self, k: usize) -> Result<LetterSet, HoaError> {
        let mut set = self.label_atom(k)?;
        while self.peek() == Some(&Tok::Punct('&')) {
            self.pos += 1;
            set.intersect_with(&self.label_atom(k)?);
        }
        Ok(set)
    }

    fn label_atom(&mut self, k: usize) -> Result<LetterSet, HoaError> {
        let all = LetterSet::full(1 << k);
        match self.next()? {
            Tok::Punct('!') => {
                let mut set = all;
                set.difference_with(&self.label_atom(k)?);
                Ok(set)
            }
            Tok::Punct('(') => {
                let set = self.label_or(k)?;
                self.expect(')')?;
                Ok(set)
            }
            Tok::Ident(w) if w == "t" => Ok(all),
            Tok::Ident(w) if w == "f" => Ok(LetterSet::new()),
            Tok::Int(i) if i < k => Ok((0..1usize << k).filter(|l| l >> i & 1 == 1).collect()),
            other => self.fail(format!("bad label token {other:?}")),
        }
    }

    fn acceptance(&mut self, n: usize) -> Result<(), HoaError> {
        let mut seen = BitSet::new();
        loop {
            match self.next()? {
                Tok::Ident(w) if w == "t" => {}
                Tok::Ident(w) if w == "Inf" => {
                    self.expect('(')?;
                    seen.insert(self.int()?);
                    self.expect(')')?;
                }
                other => return Err(HoaError::Unsupported(format!("acceptance token {other:?}"))),
            }
            if self.peek() != Some(&Tok::Punct('&')) {
                break;
            }
            self.pos += 1;
        }
        if seen != BitSet::full(n) {
            return Err(HoaError::Unsupported("acceptance other than a conjunction of Inf".into()));
        }
        Ok(())
    }
}

/// Parses one automaton.
pub fn parse_hoa(text: &str) -> Result<HoaAutomaton, HoaError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let mut aut = HoaAutomaton {
        name: None,
        aps: Vec::new(),
        states: 0,
        start: Vec::new(),
        num_sets: 0,
        properties: Vec::new(),
        state_names: Vec::new(),
        state_marks: Vec::new(),
        edges: Vec::new(),
    };
    let (mut have_version, mut have_states, mut have_acc) = (false, false, false);
    loop {
        match p.next()? {
            Tok::Body => break,
            Tok::Header(h) => match h.as_str() {
                "HOA" => {
                    match p.next()? {
                        Tok::Ident(v) if v == "v1" => {}
                        other => return Err(HoaError::Unsupported(format!("version {other:?}"))),
                    }
                    have_version = true;
                }
                "States" => {
                    aut.states = p.int()?;
                    have_states = true;
                }
                "Start" => {
                    aut.start.push(p.int()?);
                    if p.peek() == Some(&Tok::Punct('&')) {
                        return Err(HoaError::Unsupported("conjunctive initial states".into()));
                    }
                }
                "AP" => {
                    let n = p.int()?;
                    for _ in 0..n {
                        match p.next()? {
                            Tok::Str(s) => aut.aps.push(s),
                            other => return p.fail(format!("expected an AP name, found {other:?}")),
                        }
                    }
                }
                "Acceptance" => {
                    aut.num_sets = p.int()?;
                    p.acceptance(aut.num_sets)?;
                    have_acc = true;
                }
                "name" => {
                    if let Tok::Str(s) = p.next()? {
                        aut.name = Some(s);
                    }
                }
                "properties" => {
                    while let Some(Tok::Ident(w)) = p.peek() {
                        aut.properties.push(w.clone());
                        p.pos += 1;
                    }
                }
                _ => {
                    while !matches!(p.peek(), Some(Tok::Header(_)) | Some(Tok::Body) | None) {
                        p.pos += 1;
                    }
                }
            },
            other => return p.fail(format!("expected a header field, found {other:?}")),
        }
    }
    if !have_version {
        return Err(HoaError::MissingHeader("HOA"));
    }
    if !have_acc {
        return Err(HoaError::MissingHeader("Acceptance"));
    }
    if !have_states {
        return Err(HoaError::MissingHeader("States"));
    }
    let k = aut.aps.len();
    if k > 16 {
        return Err(HoaError::Unsupported(format!("{k} atomic propositions")));
    }
    aut.state_names = vec![None; aut.states];
    aut.state_marks = vec![BitSet::new(); aut.states];
    aut.edges = vec![Vec::new(); aut.states];
    let mut current: Option<usize> = None;
    loop {
        match p.next()? {
            Tok::End => break,
            Tok::Header(h) if h == "State" => {
                let q = p.int()?;
                if q >= aut.states {
                    return Err(HoaError::StateOutOfRange(q));
                }
                if let Some(Tok::Str(s)) = p.peek() {
                    aut.state_names[q] = Some(s.clone());
                    p.pos += 1;
                }
                aut.state_marks[q] = p.marks()?;
                current = Some(q);
            }
            Tok::Punct('[') => {
                let Some(q) = current else {
                    return p.fail("transition before any state");
                };
                let letters = p.label_or(k)?;
                p.expect(']')?;
                let target = p.int()?;
                if target >= aut.states {
                    return Err(HoaError::StateOutOfRange(target));
                }
                let marks = p.marks()?;
                aut.edges[q].push(HoaEdge { letters, target, marks });
            }
            Tok::Int(_) => return Err(HoaError::Unsupported("implicit labels".into())),
            other => return p.fail(format!("unexpected {other:?} in body")),
        }
    }
    for &s in &aut.start {
        if s >= aut.states {
            return Err(HoaError::StateOutOfRange(s));
        }
    }
    Ok(aut)
}

impl HoaAutomaton {
    /// The alphabet over the file's APs, and the map from file letters to
    /// alphabet letters (which index atoms in sorted order).
    fn alphabet(&self) -> Result<(Alphabet, Vec<Letter>), HoaError> {
        let atoms: Vec<Atom> = self.aps.iter().map(|s| Atom::new(s)).collect();
        let alphabet = Alphabet::new(atoms.clone(), self.aps.len())?;
        let perm: Vec<usize> = atoms.iter().map(|&a| alphabet.index_of(a).unwrap()).collect();
        let map = (0..1u32 << self.aps.len())
            .map(|l| {
                perm.iter()
                    .enumerate()
                    .filter(|(i, _)| l >> i & 1 == 1)
                    .fold(0, |acc, (_, &j)| acc | 1 << j)
            })
            .collect();
        Ok((alphabet, map))
    }

    /// Interprets a one-set automaton with state-based marks as an NBA.
    pub fn to_nba(&self) -> Result<Nba, HoaError> {
        if self.num_sets != 1 || self.edges.iter().flatten().any(|e| !e.marks.is_empty()) {
            return Err(HoaError::Unsupported("not a state-based Büchi automaton".into()));
        }
        let (alphabet, map) = self.alphabet()?;
        let edges = self
            .edges
            .iter()
            .map(|es| {
                let mut out: Vec<(Letter, usize)> = es
                    .iter()
                    .flat_map(|e| e.letters.iter().map(|l| (map[l], e.target)))
                    .collect();
                out.sort_unstable();
                out.dedup();
                out
            })
            .collect();
        Ok(Nba {
            alphabet,
            len: self.states,
            initial: self.start.clone(),
            edges,
            accepting: self.state_marks.iter().map(|m| m.contains(0)).collect(),
            names: (0..self.states)
                .map(|q| self.state_names[q].clone().unwrap_or_else(|| q.to_string()))
                .collect(),
        })
    }

    /// Interprets the automaton as a transition-based generalized Büchi
    /// automaton. State marks are moved onto outgoing transitions.
    pub fn to_tgba(&self) -> Result<Tgba<usize>, HoaError> {
        let (alphabet, map) = self.alphabet()?;
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(q, es)| {
                let mut out: Vec<Edge> = es
                    .iter()
                    .flat_map(|e| {
                        let acc = e.marks.union(&self.state_marks[q]);
                        let map = &map;
                        e.letters.iter().map(move |l| Edge {
                            letter: map[l],
                            target: e.target,
                            acc: acc.clone(),
                        })
                    })
                    .collect();
                out.sort();
                out.dedup();
                out
            })
            .collect();
        Ok(Tgba {
            alphabet,
            states: (0..self.states).collect(),
            initial: self.start.clone(),
            edges,
            num_sets: self.num_sets,
            set_names: (0..self.num_sets).map(|i| i.to_string()).collect(),
        })
    }
}
