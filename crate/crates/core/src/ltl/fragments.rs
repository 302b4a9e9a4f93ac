//! Syntactic fragments: purely-universal (suffix closed), purely-eventual
//! (prefix closed) and alternating (prefix invariant) formulas, together
//! with the disjunction-free decomposition and the goal of a
//! purely-universal formula.

use serde::Serialize;
use thiserror::Error;

use super::formula::{Formula, Kind};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct FormulaClass {
    pub purely_universal: bool,
    pub purely_eventual: bool,
    pub alternating: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FragmentError {
    #[error("`{0}` is not purely-universal")]
    NotPurelyUniversal(Formula),
    #[error("`{0}` is not a disjunction-free purely-universal formula")]
    NotDisjunctionFree(Formula),
}

/// Grammar membership, computed bottom-up. Expects PNF input.
///
/// ```text
/// ν ::= Gφ | ν|ν | ν&ν | Xν | ν U ν | φ R ν | Fν
/// μ ::= Fφ | μ|μ | μ&μ | Xμ | φ U μ | μ R μ | Gμ
/// ξ ::= Gμ | Fν | ξ|ξ | ξ&ξ | Xξ | φ U ξ | φ R ξ | Fξ | Gξ
/// ```
pub fn classify(f: Formula) -> FormulaClass {
    let mut class = FormulaClass::default();
    if let Some(x) = f.as_finally() {
        let inner = classify(x);
        class.purely_universal = inner.purely_universal;
        class.purely_eventual = true;
        class.alternating = inner.purely_universal || inner.alternating;
        return class;
    }
    if let Some(x) = f.as_globally() {
        let inner = classify(x);
        class.purely_universal = true;
        class.purely_eventual = inner.purely_eventual;
        class.alternating = inner.purely_eventual || inner.alternating;
        return class;
    }
    match f.kind() {
        Kind::And(l, r) | Kind::Or(l, r) => {
            let (l, r) = (classify(l), classify(r));
            class.purely_universal = l.purely_universal && r.purely_universal;
            class.purely_eventual = l.purely_eventual && r.purely_eventual;
            class.alternating = l.alternating && r.alternating;
        }
        Kind::Next(x) => class = classify(x),
        Kind::Until(l, r) => {
            let (l, r) = (classify(l), classify(r));
            class.purely_universal = l.purely_universal && r.purely_universal;
            class.purely_eventual = r.purely_eventual;
            class.alternating = r.alternating;
        }
        Kind::Release(l, r) => {
            let (l, r) = (classify(l), classify(r));
            class.purely_universal = r.purely_universal;
            class.purely_eventual = l.purely_eventual && r.purely_eventual;
            class.alternating = r.alternating;
        }
        _ => {}
    }
    class
}

pub fn is_purely_universal(f: Formula) -> bool {
    classify(f).purely_universal
}

pub fn is_purely_eventual(f: Formula) -> bool {
    classify(f).purely_eventual
}

/// Purely-universal with every `|`, `U` and `R` below some `G`:
/// `ν ::= Gφ | ν&ν | Xν | Fν`.
pub fn is_disjunction_free(f: Formula) -> bool {
    if f.as_globally().is_some() {
        return true;
    }
    if let Some(x) = f.as_finally() {
        return is_disjunction_free(x);
    }
    match f.kind() {
        Kind::And(l, r) => is_disjunction_free(l) && is_disjunction_free(r),
        Kind::Next(x) => is_disjunction_free(x),
        _ => false,
    }
}

/// Rewrites a purely-universal formula into disjunction-free parts
/// `ν₁ … νₙ` whose disjunction is equivalent to the input.
///
/// `ν₁ U ν₂` becomes `ν₂ | (ν₁ & F ν₂)`, `φ R ν` becomes `ν`, and
/// disjunctions are lifted over `&`, `X` and `F`.
pub fn decompose_disjunction_free(nu: Formula) -> Result<Vec<Formula>, FragmentError> {
    if !is_purely_universal(nu) {
        return Err(FragmentError::NotPurelyUniversal(nu));
    }
    let mut parts = Vec::new();
    for part in lift(nu) {
        if !parts.contains(&part) {
            parts.push(part);
        }
    }
    Ok(parts)
}

fn lift(nu: Formula) -> Vec<Formula> {
    if nu.as_globally().is_some() {
        return vec![nu];
    }
    if let Some(x) = nu.as_finally() {
        return lift(x).into_iter().map(Formula::finally).collect();
    }
    match nu.kind() {
        Kind::Or(l, r) => {
            let mut out = lift(l);
            out.extend(lift(r));
            out
        }
        Kind::And(l, r) => {
            let rs = lift(r);
            lift(l)
                .into_iter()
                .flat_map(|x| rs.iter().map(move |&y| Formula::and(x, y)))
                .collect()
        }
        Kind::Next(x) => lift(x).into_iter().map(Formula::next).collect(),
        Kind::Until(l, r) => {
            let rs = lift(r);
            let mut out = rs.clone();
            for x in lift(l) {
                for &y in &rs {
                    out.push(Formula::and(x, Formula::finally(y)));
                }
            }
            out
        }
        Kind::Release(_, r) => lift(r),
        _ => unreachable!("checked purely-universal before lifting"),
    }
}

/// The one-step obligation of a disjunction-free purely-universal formula:
/// `g(Gφ) = φ`, `g(Xν) = X g(ν)`, `g(ν₁ & ν₂) = g(ν₁) & g(ν₂)`,
/// `g(Fν) = true`.
pub fn goal(nu: Formula) -> Result<Formula, FragmentError> {
    if !is_disjunction_free(nu) {
        return Err(FragmentError::NotDisjunctionFree(nu));
    }
    Ok(goal_of(nu))
}

fn goal_of(nu: Formula) -> Formula {
    if let Some(x) = nu.as_globally() {
        return x;
    }
    if nu.as_finally().is_some() {
        return Formula::tt();
    }
    match nu.kind() {
        Kind::And(l, r) => Formula::and_folded(goal_of(l), goal_of(r)),
        Kind::Next(x) => Formula::next_folded(goal_of(x)),
        _ => unreachable!("checked disjunction-free before computing the goal"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::parse_formula;

    fn p(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn grammar_examples() {
        let g = classify(p("G a"));
        assert!(g.purely_universal && !g.purely_eventual && !g.alternating);
        let f = classify(p("F a"));
        assert!(f.purely_eventual && !f.purely_universal && !f.alternating);
        let gf = classify(p("G F a"));
        assert!(gf.alternating && gf.purely_universal && gf.purely_eventual);
        let fg = classify(p("F G a"));
        assert!(fg.alternating && fg.purely_universal && fg.purely_eventual);
        assert_eq!(classify(p("a U b")), FormulaClass::default());
        assert!(classify(p("a R G b")).purely_universal);
        assert!(!classify(p("G a U b")).purely_universal);
        assert!(classify(p("G a U G b")).purely_universal);
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(
            decompose_disjunction_free(p("G a | G b")).unwrap(),
            vec![p("G a"), p("G b")]
        );
        assert_eq!(
            decompose_disjunction_free(p("F (G a | G b)")).unwrap(),
            vec![p("F G a"), p("F G b")]
        );
        assert_eq!(
            decompose_disjunction_free(p("(G a) U (G b)")).unwrap(),
            vec![p("G b"), p("G a & F G b")]
        );
        assert!(matches!(
            decompose_disjunction_free(p("F a")),
            Err(FragmentError::NotPurelyUniversal(_))
        ));
    }

    #[test]
    fn decomposed_parts_are_disjunction_free() {
        for s in ["G a | X (G b & F (G a | G b))", "(G a | G b) U (c R G a)"] {
            for part in decompose_disjunction_free(p(s)).unwrap() {
                assert!(is_disjunction_free(part), "{part}");
            }
        }
    }

    #[test]
    fn goal_examples() {
        assert_eq!(goal(p("G a")).unwrap(), p("a"));
        assert_eq!(goal(p("F G a")).unwrap(), Formula::tt());
        assert_eq!(goal(p("G a & X G b")).unwrap(), p("a & X b"));
        assert!(goal(p("G a | G b")).is_err());
    }
}
