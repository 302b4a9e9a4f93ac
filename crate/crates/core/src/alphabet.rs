//! The alphabet `2^AP` of a formula, with letters encoded as bitmasks over
//! the sorted atom list.

use std::fmt;

use thiserror::Error;

use crate::bits::BitSet;
use crate::ltl::{Atom, Formula};

pub const DEFAULT_AP_CAP: usize = 16;

/// A letter: bit `i` set iff atom `i` holds.
pub type Letter = u32;

/// A set of letters, indexed by letter value.
pub type LetterSet = BitSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("formula has {found} atomic propositions, more than the limit of {cap}")]
pub struct AlphabetError {
    pub found: usize,
    pub cap: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Alphabet {
    atoms: Vec<Atom>,
}

impl Alphabet {
    pub fn new(atoms: Vec<Atom>, cap: usize) -> Result<Alphabet, AlphabetError> {
        let mut atoms = atoms;
        atoms.sort();
        atoms.dedup();
        if atoms.len() > cap {
            return Err(AlphabetError {
                found: atoms.len(),
                cap,
            });
        }
        Ok(Alphabet { atoms })
    }

    pub fn of_formula(f: Formula, cap: usize) -> Result<Alphabet, AlphabetError> {
        Alphabet::new(f.atoms().into_iter().collect(), cap)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn index_of(&self, atom: Atom) -> Option<usize> {
        self.atoms.iter().position(|&a| a == atom)
    }

    pub fn num_letters(&self) -> usize {
        1 << self.atoms.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.num_letters() as Letter
    }

    pub fn sigma(&self) -> LetterSet {
        LetterSet::full(self.num_letters())
    }

    /// `Σ_a` for a positive literal, `Σ_{!a}` for a negative one.
    pub fn literal(&self, atom: Atom, positive: bool) -> LetterSet {
        let bit = self.index_of(atom).expect("atom outside the alphabet");
        self.letters()
            .filter(|l| (l >> bit & 1 == 1) == positive)
            .map(|l| l as usize)
            .collect()
    }

    pub fn display_letter(&self, letter: Letter) -> LetterDisplay<'_> {
        LetterDisplay {
            alphabet: self,
            letter,
        }
    }
}

/// Renders a letter as `{a, c}`.
pub struct LetterDisplay<'a> {
    alphabet: &'a Alphabet,
    letter: Letter,
}

impl fmt::Display for LetterDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self
            .alphabet
            .atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| self.letter >> i & 1 == 1)
            .map(|(_, a)| a.name())
            .collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ltl::parse_formula;

    #[test]
    fn literal_letter_sets() {
        let sigma = Alphabet::of_formula(parse_formula("b U a").unwrap(), 16).unwrap();
        assert_eq!(sigma.num_letters(), 4);
        let a = Atom::new("a");
        assert_eq!(sigma.literal(a, true), [1, 3].into_iter().collect());
        assert_eq!(sigma.literal(a, false), [0, 2].into_iter().collect());
        assert_eq!(sigma.display_letter(3).to_string(), "{a, b}");
    }

    #[test]
    fn cap_is_enforced() {
        let f = parse_formula("a & b & c").unwrap();
        assert_eq!(
            Alphabet::of_formula(f, 2),
            Err(AlphabetError { found: 3, cap: 2 })
        );
    }
}
