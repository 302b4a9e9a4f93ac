use std::fmt;

use rand::Rng;

use crate::alphabet::{Alphabet, Letter};

/// The ultimately periodic word `prefix · period^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LassoWord {
    pub prefix: Vec<Letter>,
    pub period: Vec<Letter>,
}

impl LassoWord {
    pub fn new(prefix: Vec<Letter>, period: Vec<Letter>) -> LassoWord {
        assert!(!period.is_empty(), "a lasso needs a nonempty period");
        LassoWord { prefix, period }
    }

    /// Number of distinct positions, `|u| + |v|`.
    pub fn len(&self) -> usize {
        self.prefix.len() + self.period.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn loop_start(&self) -> usize {
        self.prefix.len()
    }

    pub fn letter(&self, i: usize) -> Letter {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[i - self.prefix.len()]
        }
    }

    /// The position following `i`.
    pub fn succ(&self, i: usize) -> usize {
        if i + 1 < self.len() {
            i + 1
        } else {
            self.loop_start()
        }
    }

    /// The unique shortest representation of the same ω-word: a primitive
    /// period and a prefix that cannot be folded into it.
    pub fn canonical(&self) -> LassoWord {
        let v = &self.period;
        let root = (1..=v.len())
            .find(|&d| v.len().is_multiple_of(d) && (d..v.len()).all(|i| v[i] == v[i - d]))
            .unwrap();
        let mut period = v[..root].to_vec();
        let mut prefix = self.prefix.clone();
        while let (Some(&x), Some(&y)) = (prefix.last(), period.last()) {
            if x != y {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        LassoWord { prefix, period }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> LassoDisplay<'a> {
        LassoDisplay { word: self, alphabet }
    }
}

pub struct LassoDisplay<'a> {
    word: &'a LassoWord,
    alphabet: &'a Alphabet,
}

impl fmt::Display for LassoDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let render = |letters: &[Letter]| -> String {
            letters
                .iter()
                .map(|&l| self.alphabet.display_letter(l).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        if !self.word.prefix.is_empty() {
            write!(f, "{} ", render(&self.word.prefix))?;
        }
        write!(f, "({})^w", render(&self.word.period))
    }
}

/// Every lasso with `|u| ≤ max_prefix` and `1 ≤ |v| ≤ max_period` over
/// letters `0..num_letters`.
pub fn all_lassos(num_letters: usize, max_prefix: usize, max_period: usize) -> Vec<LassoWord> {
    let words = |max: usize, min: usize| -> Vec<Vec<Letter>> {
        let mut out = Vec::new();
        let mut layer = vec![Vec::new()];
        for len in 0..=max {
            if len >= min {
                out.extend(layer.iter().cloned());
            }
            layer = layer
                .iter()
                .flat_map(|w| {
                    (0..num_letters as Letter).map(move |l| {
                        let mut x = w.clone();
                        x.push(l);
                        x
                    })
                })
                .collect();
        }
        out
    };
    let prefixes = words(max_prefix, 0);
    let periods = words(max_period, 1);
    let mut out = Vec::with_capacity(prefixes.len() * periods.len());
    for u in &prefixes {
        for v in &periods {
            out.push(LassoWord::new(u.clone(), v.clone()));
        }
    }
    out
}

/// The distinct ω-words among [`all_lassos`], in canonical form.
pub fn distinct_lassos(num_letters: usize, max_prefix: usize, max_period: usize) -> Vec<LassoWord> {
    let mut out: Vec<LassoWord> = all_lassos(num_letters, max_prefix, max_period)
        .iter()
        .map(LassoWord::canonical)
        .collect();
    out.sort();
    out.dedup();
    out
}

pub fn random_lasso(rng: &mut impl Rng, num_letters: usize, max_prefix: usize, max_period: usize) -> LassoWord {
    let u = rng.gen_range(0..=max_prefix);
    let v = rng.gen_range(1..=max_period);
    let mut letter = || rng.gen_range(0..num_letters as Letter);
    LassoWord::new((0..u).map(|_| letter()).collect(), (0..v).map(|_| letter()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_folds_prefix_and_period() {
        let w = LassoWord::new(vec![0, 1], vec![0, 1, 0, 1]);
        assert_eq!(w.canonical(), LassoWord::new(vec![], vec![0, 1]));
        let x = LassoWord::new(vec![1, 1], vec![0, 1]);
        assert_eq!(x.canonical(), LassoWord::new(vec![1], vec![1, 0]));
    }

    #[test]
    fn lasso_universe_sizes() {
        assert_eq!(all_lassos(4, 3, 3).len(), 85 * 84);
        let distinct = distinct_lassos(4, 3, 3);
        assert!(distinct.len() < 85 * 84);
        assert!(distinct.iter().all(|w| *w == w.canonical()));
    }
}
