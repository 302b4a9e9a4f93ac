//! Equivalence-preserving rewriting of PNF formulas.
//!
//! The baseline rules always run: constant folding, idempotence,
//! `FFφ = Fφ`, `GGφ = Gφ`, `FGFφ = GFφ`, `GFGφ = FGφ`, distribution of `X`
//! over `&`/`|`, absorption, and the merges `FGφ & FGψ = FG(φ & ψ)` and
//! `GFφ | GFψ = GF(φ | ψ)`. With `fairness_rules` set, a second pass adds
//!
//! ```text
//! I   (GF φ) & (FG ψ)  ->  GF (φ & G ψ)
//! II  (FG φ) | (GF ψ)  ->  FG (φ | F ψ)
//! ```
//!
//! Conjunctions and disjunctions are handled as flattened, sorted operand
//! lists, so the rules match regardless of operand order.

use std::collections::HashMap;

use super::formula::{Formula, Kind};

pub fn simplify(f: Formula, fairness_rules: bool) -> Formula {
    let base = Simplifier::new(false).run(f);
    if fairness_rules {
        Simplifier::new(true).run(base)
    } else {
        base
    }
}

struct Simplifier {
    fairness: bool,
    memo: HashMap<Formula, Formula>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Junction {
    And,
    Or,
}

impl Junction {
    fn dual(self) -> Junction {
        match self {
            Junction::And => Junction::Or,
            Junction::Or => Junction::And,
        }
    }

    fn operands(self, f: Formula) -> Vec<Formula> {
        match self {
            Junction::And => f.conjuncts(),
            Junction::Or => f.disjuncts(),
        }
    }

    fn absorbing(self) -> Formula {
        match self {
            Junction::And => Formula::ff(),
            Junction::Or => Formula::tt(),
        }
    }

    fn neutral(self) -> Formula {
        match self {
            Junction::And => Formula::tt(),
            Junction::Or => Formula::ff(),
        }
    }

    fn build(self, l: Formula, r: Formula) -> Formula {
        match self {
            Junction::And => Formula::and(l, r),
            Junction::Or => Formula::or(l, r),
        }
    }
}

fn complementary(x: Formula, y: Formula) -> bool {
    matches!((x.kind(), y.kind()),
        (Kind::Atom(a), Kind::NegAtom(b)) | (Kind::NegAtom(a), Kind::Atom(b)) if a == b)
}

/// `Some(φ)` for `F G φ`.
fn as_fg(f: Formula) -> Option<Formula> {
    f.as_finally().and_then(Formula::as_globally)
}

/// `Some(φ)` for `G F φ`.
fn as_gf(f: Formula) -> Option<Formula> {
    f.as_globally().and_then(Formula::as_finally)
}

impl Simplifier {
    fn new(fairness: bool) -> Self {
        Simplifier {
            fairness,
            memo: HashMap::new(),
        }
    }

    fn run(&mut self, f: Formula) -> Formula {
        if let Some(&g) = self.memo.get(&f) {
            return g;
        }
        let g = match f.kind() {
            Kind::True | Kind::False | Kind::Atom(_) | Kind::NegAtom(_) => f,
            Kind::Not(x) => {
                let x = self.run(x);
                match x.kind() {
                    Kind::True => Formula::ff(),
                    Kind::False => Formula::tt(),
                    Kind::Atom(a) => Formula::lit(a, false),
                    Kind::NegAtom(a) => Formula::lit(a, true),
                    _ => Formula::not(x),
                }
            }
            Kind::And(l, r) => {
                let (l, r) = (self.run(l), self.run(r));
                self.node(Formula::and(l, r))
            }
            Kind::Or(l, r) => {
                let (l, r) = (self.run(l), self.run(r));
                self.node(Formula::or(l, r))
            }
            Kind::Next(x) => {
                let x = self.run(x);
                self.node(Formula::next(x))
            }
            Kind::Until(l, r) => {
                let (l, r) = (self.run(l), self.run(r));
                self.node(Formula::until(l, r))
            }
            Kind::Release(l, r) => {
                let (l, r) = (self.run(l), self.run(r));
                self.node(Formula::release(l, r))
            }
        };
        self.memo.insert(f, g);
        g
    }

    /// Simplifies a node whose children are already simplified.
    fn node(&mut self, f: Formula) -> Formula {
        match f.kind() {
            Kind::Next(x) => match x.kind() {
                Kind::True | Kind::False => x,
                Kind::And(..) => {
                    let parts = x.conjuncts().into_iter().map(|c| self.node(Formula::next(c))).collect();
                    self.junction(Junction::And, parts)
                }
                Kind::Or(..) => {
                    let parts = x.disjuncts().into_iter().map(|c| self.node(Formula::next(c))).collect();
                    self.junction(Junction::Or, parts)
                }
                _ => f,
            },
            Kind::Until(l, r) => {
                if r.is_true() || r.is_false() || l.is_false() || l == r {
                    return r;
                }
                if l.is_true() {
                    // F F φ, F G F φ
                    if r.as_finally().is_some() || as_gf(r).is_some() {
                        return r;
                    }
                }
                f
            }
            Kind::Release(l, r) => {
                if r.is_true() || r.is_false() || l.is_true() || l == r {
                    return r;
                }
                if l.is_false() {
                    // G G φ, G F G φ
                    if r.as_globally().is_some() || as_fg(r).is_some() {
                        return r;
                    }
                }
                f
            }
            Kind::And(..) => self.junction(Junction::And, f.conjuncts()),
            Kind::Or(..) => self.junction(Junction::Or, f.disjuncts()),
            _ => f,
        }
    }

    /// Normalizes a flattened operand list of simplified formulas.
    fn junction(&mut self, j: Junction, operands: Vec<Formula>) -> Formula {
        let mut ops: Vec<Formula> = Vec::new();
        for op in operands {
            for x in j.operands(op) {
                if x == j.absorbing() {
                    return x;
                }
                if x != j.neutral() && !ops.contains(&x) {
                    ops.push(x);
                }
            }
        }
        ops.sort();
        loop {
            if ops.iter().any(|&x| ops.iter().any(|&y| complementary(x, y))) {
                return j.absorbing();
            }
            // φ & (φ | ψ) = φ, φ | (φ & ψ) = φ
            let absorbed: Vec<Formula> = ops
                .iter()
                .copied()
                .filter(|&d| {
                    let inner = j.dual().operands(d);
                    inner.len() > 1 && inner.iter().any(|x| ops.contains(x))
                })
                .collect();
            if !absorbed.is_empty() {
                ops.retain(|x| !absorbed.contains(x));
                continue;
            }
            if let Some(next) = self.merge_step(j, &ops) {
                ops = next;
                continue;
            }
            break;
        }
        match ops.len() {
            0 => j.neutral(),
            _ => {
                let mut it = ops.into_iter();
                let first = it.next().unwrap();
                it.fold(first, |acc, x| j.build(acc, x))
            }
        }
    }

    /// One application of a merging rule, returning the new operand list.
    fn merge_step(&mut self, j: Junction, ops: &[Formula]) -> Option<Vec<Formula>> {
        // FG merge for &, GF merge for |
        let mergeable: fn(Formula) -> Option<Formula> = match j {
            Junction::And => as_fg,
            Junction::Or => as_gf,
        };
        let hits: Vec<usize> = (0..ops.len()).filter(|&i| mergeable(ops[i]).is_some()).collect();
        if hits.len() >= 2 {
            let inner: Vec<Formula> = hits.iter().map(|&i| mergeable(ops[i]).unwrap()).collect();
            let inner = self.junction(j, inner);
            let merged = match j {
                Junction::And => self.fg(inner),
                Junction::Or => self.gf(inner),
            };
            return Some(self.replace(j, ops, &hits, merged));
        }
        if !self.fairness {
            return None;
        }
        let gf = ops.iter().position(|&x| as_gf(x).is_some())?;
        let fg = ops.iter().position(|&x| as_fg(x).is_some())?;
        let (phi_gf, phi_fg) = (as_gf(ops[gf]).unwrap(), as_fg(ops[fg]).unwrap());
        let merged = match j {
            // I: GF φ & FG ψ -> GF (φ & G ψ)
            Junction::And => {
                let g = self.node(Formula::globally(phi_fg));
                let inner = self.junction(Junction::And, vec![phi_gf, g]);
                self.gf(inner)
            }
            // II: FG φ | GF ψ -> FG (φ | F ψ)
            Junction::Or => {
                let f = self.node(Formula::finally(phi_gf));
                let inner = self.junction(Junction::Or, vec![phi_fg, f]);
                self.fg(inner)
            }
        };
        Some(self.replace(j, ops, &[gf, fg], merged))
    }

    fn replace(&mut self, j: Junction, ops: &[Formula], drop: &[usize], merged: Formula) -> Vec<Formula> {
        let mut out: Vec<Formula> = ops
            .iter()
            .enumerate()
            .filter(|(i, _)| !drop.contains(i))
            .map(|(_, &x)| x)
            .collect();
        for x in j.operands(merged) {
            if x == j.absorbing() {
                return vec![x];
            }
            if x != j.neutral() && !out.contains(&x) {
                out.push(x);
            }
        }
        out.sort();
        out
    }

    fn fg(&mut self, f: Formula) -> Formula {
        let g = self.node(Formula::globally(f));
        self.node(Formula::finally(g))
    }

    fn gf(&mut self, f: Formula) -> Formula {
        let g = self.node(Formula::finally(f));
        self.node(Formula::globally(g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::{parse_formula, to_pnf};

    fn p(s: &str) -> Formula {
        to_pnf(parse_formula(s).unwrap())
    }

    fn s(text: &str) -> Formula {
        simplify(p(text), true)
    }

    #[test]
    fn rule_one() {
        assert_eq!(s("G F a & F G b"), p("G F (a & G b)"));
    }

    #[test]
    fn rule_two() {
        assert_eq!(s("F G a | G F b"), p("F G (a | F b)"));
        assert_eq!(s("G F b | F G a"), p("F G (a | F b)"));
    }

    #[test]
    fn rules_off_keeps_fairness_shape() {
        let f = p("F G a | G F b");
        assert_eq!(simplify(f, false), f);
    }

    #[test]
    fn baseline_rules() {
        assert_eq!(s("a & true"), p("a"));
        assert_eq!(s("a | false"), p("a"));
        assert_eq!(s("a & false"), p("false"));
        assert_eq!(s("a & a"), p("a"));
        assert_eq!(s("a & !a"), p("false"));
        assert_eq!(s("F F a"), p("F a"));
        assert_eq!(s("G G a"), p("G a"));
        assert_eq!(s("F G F a"), p("G F a"));
        assert_eq!(s("G F G a"), p("F G a"));
        assert_eq!(s("X (a & b)"), p("X a & X b"));
        assert_eq!(s("X (a | X b)"), p("X a | X X b"));
        assert_eq!(s("a | (a & b)"), p("a"));
        assert_eq!(s("b & (a | b)"), p("b"));
        assert_eq!(s("F G a & F G b"), p("F G (a & b)"));
        assert_eq!(s("G F a | G F b"), p("G F (a | b)"));
        assert_eq!(s("a U false"), p("false"));
        assert_eq!(s("false U a"), p("a"));
        assert_eq!(s("X true"), p("true"));
    }

    #[test]
    fn operand_order_does_not_matter() {
        assert_eq!(s("b & a"), s("a & b"));
        assert_eq!(s("(c | b) | a"), s("a | (b | c)"));
    }

    #[test]
    fn simplification_is_idempotent() {
        for text in [
            "(F G p0 | G F p1) & (F G p2 | G F p3)",
            "G F a & F G b & G F c",
            "X (a & F (b | X c))",
            "!a U (b & !a & X !a & X X a)",
        ] {
            let once = s(text);
            assert_eq!(simplify(once, true), once, "{text}");
        }
    }
}
