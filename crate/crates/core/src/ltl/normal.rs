use super::formula::{Formula, Kind};

/// Pushes every negation down to the atoms using the dualities
/// `!X φ = X !φ`, `!(φ U ψ) = !φ R !ψ` and `!(φ R ψ) = !φ U !ψ`.
pub fn to_pnf(f: Formula) -> Formula {
    match f.kind() {
        Kind::True | Kind::False | Kind::Atom(_) | Kind::NegAtom(_) => f,
        Kind::Not(x) => negate(x),
        Kind::And(l, r) => Formula::and(to_pnf(l), to_pnf(r)),
        Kind::Or(l, r) => Formula::or(to_pnf(l), to_pnf(r)),
        Kind::Next(x) => Formula::next(to_pnf(x)),
        Kind::Until(l, r) => Formula::until(to_pnf(l), to_pnf(r)),
        Kind::Release(l, r) => Formula::release(to_pnf(l), to_pnf(r)),
    }
}

/// PNF of `!f`. Accepts inputs that still contain `Not`.
pub fn negate_pnf(f: Formula) -> Formula {
    negate(f)
}

fn negate(f: Formula) -> Formula {
    match f.kind() {
        Kind::True => Formula::ff(),
        Kind::False => Formula::tt(),
        Kind::Atom(a) => Formula::lit(a, false),
        Kind::NegAtom(a) => Formula::lit(a, true),
        Kind::Not(x) => to_pnf(x),
        Kind::And(l, r) => Formula::or(negate(l), negate(r)),
        Kind::Or(l, r) => Formula::and(negate(l), negate(r)),
        Kind::Next(x) => Formula::next(negate(x)),
        Kind::Until(l, r) => Formula::release(negate(l), negate(r)),
        Kind::Release(l, r) => Formula::until(negate(l), negate(r)),
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
    fn until_dualizes_to_release() {
        let expected = to_pnf(p("!a R !b"));
        assert_eq!(to_pnf(p("!(a U b)")), expected);
        assert_eq!(negate_pnf(p("a U b")), expected);
    }

    #[test]
    fn finally_dualizes_to_globally() {
        assert_eq!(to_pnf(p("!F a")), to_pnf(p("G !a")));
        assert_eq!(negate_pnf(p("G a")), to_pnf(p("F !a")));
    }

    #[test]
    fn double_negation_cancels() {
        assert_eq!(to_pnf(p("!!a")), p("a"));
        assert_eq!(negate_pnf(p("a")), Formula::neg_atom("a"));
    }

    #[test]
    fn pnf_never_grows() {
        for s in ["!(a & X !(b R !a))", "!G F !a", "!(a -> b U c)"] {
            let f = p(s);
            let g = to_pnf(f);
            assert!(g.is_pnf());
            assert!(g.size() <= f.size(), "{f} -> {g}");
        }
    }
}
