//! LTL semantics on lasso words, evaluated directly on positions.
//!
//! Truth values of a subformula over the `|u| + |v|` positions are kept
//! as a bitmask; `U` and `R` are the least and greatest solutions of
//! `x = ψ | (φ & X x)` and `x = ψ & (φ | X x)`.

use std::collections::HashMap;

use super::lasso::LassoWord;
use crate::alphabet::Alphabet;
use crate::ltl::{Formula, Kind};

#[derive(Clone, Copy, Debug)]
enum Op {
    True,
    False,
    Lit { bit: Option<u32>, positive: bool },
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Next(usize),
    Until(usize, usize),
    Release(usize, usize),
}

/// A formula compiled for repeated evaluation over one alphabet.
#[derive(Clone, Debug)]
pub struct LtlEvaluator {
    ops: Vec<Op>,
}

impl LtlEvaluator {
    pub fn new(f: Formula, alphabet: &Alphabet) -> LtlEvaluator {
        let mut ev = LtlEvaluator { ops: Vec::new() };
        let mut slots = HashMap::new();
        ev.compile(f, alphabet, &mut slots);
        ev
    }

    fn compile(&mut self, f: Formula, alphabet: &Alphabet, slots: &mut HashMap<Formula, usize>) -> usize {
        if let Some(&i) = slots.get(&f) {
            return i;
        }
        let mut sub = |g: Formula, ev: &mut LtlEvaluator| ev.compile(g, alphabet, slots);
        let op = match f.kind() {
            Kind::True => Op::True,
            Kind::False => Op::False,
            Kind::Atom(a) | Kind::NegAtom(a) => Op::Lit {
                bit: alphabet.index_of(a).map(|i| i as u32),
                positive: matches!(f.kind(), Kind::Atom(_)),
            },
            Kind::Not(x) => Op::Not(sub(x, self)),
            Kind::And(l, r) => Op::And(sub(l, self), sub(r, self)),
            Kind::Or(l, r) => Op::Or(sub(l, self), sub(r, self)),
            Kind::Next(x) => Op::Next(sub(x, self)),
            Kind::Until(l, r) => Op::Until(sub(l, self), sub(r, self)),
            Kind::Release(l, r) => Op::Release(sub(l, self), sub(r, self)),
        };
        self.ops.push(op);
        let i = self.ops.len() - 1;
        slots.insert(f, i);
        i
    }

    /// Bitmask of the positions of `w` at which the formula holds.
    pub fn eval(&self, w: &LassoWord) -> u64 {
        let n = w.len();
        assert!(n <= 64, "lasso longer than 64 positions");
        let full: u64 = if n == 64 { !0 } else { (1 << n) - 1 };
        let last = n - 1;
        let start = w.loop_start();
        let next = |m: u64| -> u64 { ((m >> 1) & (full >> 1)) | (((m >> start) & 1) << last) };
        let mut vals: Vec<u64> = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            let v = match *op {
                Op::True => full,
                Op::False => 0,
                Op::Lit { bit, positive } => {
                    let mut m = 0;
                    for i in 0..n {
                        let holds = bit.is_some_and(|b| w.letter(i) >> b & 1 == 1);
                        if holds == positive {
                            m |= 1 << i;
                        }
                    }
                    m
                }
                Op::Not(x) => !vals[x] & full,
                Op::And(l, r) => vals[l] & vals[r],
                Op::Or(l, r) => vals[l] | vals[r],
                Op::Next(x) => next(vals[x]),
                Op::Until(l, r) => {
                    let (phi, psi) = (vals[l], vals[r]);
                    let mut x = 0;
                    loop {
                        let y = psi | (phi & next(x));
                        if y == x {
                            break x;
                        }
                        x = y;
                    }
                }
                Op::Release(l, r) => {
                    let (phi, psi) = (vals[l], vals[r]);
                    let mut x = full;
                    loop {
                        let y = psi & (phi | next(x));
                        if y == x {
                            break x;
                        }
                        x = y;
                    }
                }
            };
            vals.push(v);
        }
        *vals.last().unwrap()
    }

    pub fn holds(&self, w: &LassoWord) -> bool {
        self.eval(w) & 1 == 1
    }
}

/// Truth of `f` at position `at` of `w`; atoms missing from `alphabet`
/// are false everywhere.
pub fn ltl_holds(f: Formula, alphabet: &Alphabet, w: &LassoWord, at: usize) -> bool {
    assert!(at < w.len());
    LtlEvaluator::new(f, alphabet).eval(w) >> at & 1 == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::{parse_formula, Atom};

    fn sigma() -> Alphabet {
        Alphabet::new(vec![Atom::new("a"), Atom::new("b")], 16).unwrap()
    }

    fn holds(s: &str, u: &[u32], v: &[u32]) -> bool {
        ltl_holds(parse_formula(s).unwrap(), &sigma(), &LassoWord::new(u.to_vec(), v.to_vec()), 0)
    }

    #[test]
    fn basic_examples() {
        assert!(holds("G a", &[], &[1]));
        assert!(holds("F G a", &[0], &[1]));
        assert!(!holds("a U b", &[1], &[0]));
        assert!(holds("a U b", &[1, 1], &[2]));
        assert!(holds("G F b", &[], &[0, 2]));
        assert!(!holds("F G b", &[], &[0, 2]));
        assert!(holds("X X a", &[0, 0], &[1]));
        assert!(holds("!(a R b)", &[2], &[0]));
    }

    #[test]
    fn positions_inside_the_loop() {
        let w = LassoWord::new(vec![0], vec![1, 0]);
        let f = parse_formula("a").unwrap();
        assert_eq!(LtlEvaluator::new(f, &sigma()).eval(&w), 0b010);
        let g = parse_formula("X a").unwrap();
        assert_eq!(LtlEvaluator::new(g, &sigma()).eval(&w), 0b101);
    }
}
