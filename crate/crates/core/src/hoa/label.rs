//! Boolean labels for letter sets: a prime-implicant sweep followed by a
//! greedy cover. Irredundant enough for reading, not guaranteed minimal.

use std::collections::BTreeSet;

use crate::alphabet::LetterSet;

/// A product term: atoms in `care` must take the value given in `value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cube {
    pub care: u32,
    pub value: u32,
}

impl Cube {
    fn covers(self, letter: u32) -> bool {
        letter & self.care == self.value
    }
}

/// A cover of `letters` by prime cubes over `num_atoms` atoms.
pub fn cover(letters: &LetterSet, num_atoms: usize) -> Vec<Cube> {
    let full: u32 = if num_atoms == 32 { !0 } else { (1 << num_atoms) - 1 };
    let minterms: Vec<u32> = letters.iter().map(|l| l as u32).collect();
    if minterms.is_empty() {
        return Vec::new();
    }
    let mut layer: BTreeSet<Cube> = minterms.iter().map(|&m| Cube { care: full, value: m }).collect();
    let mut primes: BTreeSet<Cube> = BTreeSet::new();
    while !layer.is_empty() {
        let mut merged: BTreeSet<Cube> = BTreeSet::new();
        let mut used: BTreeSet<Cube> = BTreeSet::new();
        for &c in &layer {
            for bit in 0..num_atoms {
                let b = 1 << bit;
                if c.care & b == 0 || c.value & b != 0 {
                    continue;
                }
                let partner = Cube {
                    care: c.care,
                    value: c.value | b,
                };
                if layer.contains(&partner) {
                    merged.insert(Cube {
                        care: c.care & !b,
                        value: c.value,
                    });
                    used.insert(c);
                    used.insert(partner);
                }
            }
        }
        primes.extend(layer.difference(&used).copied());
        layer = merged;
    }
    let mut uncovered: BTreeSet<u32> = minterms.into_iter().collect();
    let mut chosen = Vec::new();
    while !uncovered.is_empty() {
        let best = primes
            .iter()
            .copied()
            .max_by_key(|&c| {
                let gain = uncovered.iter().filter(|&&m| c.covers(m)).count();
                (gain, std::cmp::Reverse(c))
            })
            .unwrap();
        uncovered.retain(|&m| !best.covers(m));
        chosen.push(best);
    }
    chosen.sort();
    chosen
}

/// HOA label syntax for a letter set: `t`, `f`, or a sum of products over
/// atom indices such as `0&!1 | 2`.
pub fn label(letters: &LetterSet, num_atoms: usize) -> String {
    let cubes = cover(letters, num_atoms);
    if cubes.is_empty() {
        return "f".into();
    }
    let terms: Vec<String> = cubes
        .iter()
        .map(|c| {
            let lits: Vec<String> = (0..num_atoms)
                .filter(|&i| c.care >> i & 1 == 1)
                .map(|i| if c.value >> i & 1 == 1 { i.to_string() } else { format!("!{i}") })
                .collect();
            if lits.is_empty() {
                "t".to_string()
            } else {
                lits.join("&")
            }
        })
        .collect();
    if terms.len() > 1 && terms.iter().any(|t| t == "t") {
        return "t".into();
    }
    terms.join(" | ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> LetterSet {
        v.iter().copied().collect()
    }

    #[test]
    fn simple_labels() {
        assert_eq!(label(&set(&[0, 1, 2, 3]), 2), "t");
        assert_eq!(label(&set(&[1, 3]), 2), "0");
        assert_eq!(label(&set(&[0, 2]), 2), "!0");
        assert_eq!(label(&set(&[3]), 2), "0&1");
        assert_eq!(label(&set(&[1, 2, 3]), 2), "0 | 1");
        assert_eq!(label(&set(&[]), 2), "f");
        assert_eq!(label(&set(&[0]), 0), "t");
    }

    #[test]
    fn cover_is_exact() {
        for bits in 0u32..256 {
            let letters: LetterSet = (0..8).filter(|i| bits >> i & 1 == 1).collect();
            let cubes = cover(&letters, 3);
            for l in 0..8u32 {
                assert_eq!(cubes.iter().any(|c| c.covers(l)), letters.contains(l as usize));
            }
        }
    }
}
