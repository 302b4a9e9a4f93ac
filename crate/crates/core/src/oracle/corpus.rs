use std::collections::HashSet;

use rand::Rng;

use crate::ltl::{Atom, Formula};

/// All PNF formulas over `atoms` with at most `max_nodes` nodes (`F`, `G`
/// and negated atoms count as one node), smallest first. Formulas that
/// coincide after desugaring, such as `F a` and `true U a`, appear once.
pub fn enumerate_formulas(max_nodes: usize, atoms: &[Atom]) -> Vec<Formula> {
    let mut seen = HashSet::new();
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new()];
    let mut out = Vec::new();
    // A tree whose sugared size is below its nominal size (`true U a` is
    // `F a`) was already produced at the smaller size.
    let mut keep = |f: Formula, n: usize, layer: &mut Vec<Formula>, out: &mut Vec<Formula>| {
        if f.size() == n && seen.insert(f) {
            layer.push(f);
            out.push(f);
        }
    };
    for n in 1..=max_nodes {
        let mut layer = Vec::new();
        if n == 1 {
            let mut leaves = vec![Formula::tt(), Formula::ff()];
            for &a in atoms {
                leaves.push(Formula::lit(a, true));
                leaves.push(Formula::lit(a, false));
            }
            for f in leaves {
                keep(f, n, &mut layer, &mut out);
            }
        } else {
            for &x in &by_size[n - 1] {
                for f in [Formula::next(x), Formula::finally(x), Formula::globally(x)] {
                    keep(f, n, &mut layer, &mut out);
                }
            }
            for i in 1..n - 1 {
                let j = n - 1 - i;
                for &l in &by_size[i] {
                    for &r in &by_size[j] {
                        for f in [
                            Formula::and(l, r),
                            Formula::or(l, r),
                            Formula::until(l, r),
                            Formula::release(l, r),
                        ] {
                            keep(f, n, &mut layer, &mut out);
                        }
                    }
                }
            }
        }
        by_size.push(layer);
    }
    out
}

/// A random disjunction-free purely-universal formula:
/// `ν ::= G φ | ν & ν | X ν | F ν` with `φ` an arbitrary random formula.
pub fn random_disjunction_free(rng: &mut impl Rng, atoms: &[Atom], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.35) {
        return Formula::globally(random_formula(rng, atoms, depth.min(2)));
    }
    match rng.gen_range(0..3) {
        0 => Formula::and(
            random_disjunction_free(rng, atoms, depth - 1),
            random_disjunction_free(rng, atoms, depth - 1),
        ),
        1 => Formula::next(random_disjunction_free(rng, atoms, depth - 1)),
        _ => Formula::finally(random_disjunction_free(rng, atoms, depth - 1)),
    }
}

/// A random PNF formula of bounded depth.
pub fn random_formula(rng: &mut impl Rng, atoms: &[Atom], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        let a = atoms[rng.gen_range(0..atoms.len())];
        return match rng.gen_range(0..6) {
            0 => Formula::tt(),
            1 | 2 => Formula::lit(a, true),
            _ => Formula::lit(a, false),
        };
    }
    let mut sub = || random_formula(rng, atoms, depth - 1);
    let (l, r) = (sub(), sub());
    match rng.gen_range(0..7) {
        0 => Formula::and(l, r),
        1 => Formula::or(l, r),
        2 => Formula::next(l),
        3 => Formula::until(l, r),
        4 => Formula::release(l, r),
        5 => Formula::finally(l),
        _ => Formula::globally(l),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_one_is_the_leaves() {
        let a = Atom::new("a");
        let fs = enumerate_formulas(1, &[a]);
        assert_eq!(fs, vec![Formula::tt(), Formula::ff(), Formula::atom("a"), Formula::neg_atom("a")]);
    }

    #[test]
    fn size_two_adds_unary_closures() {
        let a = Atom::new("a");
        let fs = enumerate_formulas(2, &[a]);
        assert_eq!(fs.len(), 4 + 12);
        assert!(fs.contains(&Formula::next(Formula::atom("a"))));
        assert!(fs.contains(&Formula::globally(Formula::neg_atom("a"))));
    }

    #[test]
    fn every_formula_respects_the_bound_and_is_pnf() {
        let atoms = [Atom::new("a"), Atom::new("b")];
        let fs = enumerate_formulas(3, &atoms);
        assert!(fs.iter().all(|f| f.size() <= 3 && f.is_pnf()));
        let unique: HashSet<_> = fs.iter().collect();
        assert_eq!(unique.len(), fs.len());
    }
}
