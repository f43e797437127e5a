use std::cmp::Ordering;
use std::fmt;

use super::{AlgebraError, GroupAlphabet};

/// A generator raised to `+1` or `−1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: u8,
    pub exponent: i8,
}

impl Letter {
    pub fn new(generator: u8, exponent: i8) -> Letter {
        debug_assert!(exponent == 1 || exponent == -1);
        Letter { generator, exponent }
    }

    pub fn inverse(self) -> Letter {
        Letter {
            generator: self.generator,
            exponent: -self.exponent,
        }
    }
}

impl Ord for Letter {
    // positive powers sort before inverses of the same generator
    fn cmp(&self, other: &Self) -> Ordering {
        self.generator
            .cmp(&other.generator)
            .then(other.exponent.cmp(&self.exponent))
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A reduced word in a free group or a direct product of free groups.
///
/// Letters of a product alphabet are kept grouped by factor, each factor
/// freely reduced on its own.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupWord {
    alphabet: GroupAlphabet,
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn identity(alphabet: GroupAlphabet) -> GroupWord {
        GroupWord {
            alphabet,
            letters: Vec::new(),
        }
    }

    pub fn generator(alphabet: GroupAlphabet, generator: u8) -> Result<GroupWord, AlgebraError> {
        GroupWord::from_letters(alphabet, [Letter::new(generator, 1)])
    }

    pub fn from_letters(
        alphabet: GroupAlphabet,
        letters: impl IntoIterator<Item = Letter>,
    ) -> Result<GroupWord, AlgebraError> {
        let letters: Vec<Letter> = letters.into_iter().collect();
        for l in &letters {
            if l.generator as usize >= alphabet.rank() {
                return Err(AlgebraError::GeneratorOutOfRange {
                    alphabet: alphabet.to_string(),
                    index: l.generator,
                });
            }
        }
        Ok(GroupWord {
            alphabet,
            letters: normalize(alphabet, letters),
        })
    }

    /// Builds `g₁^{k₁} g₂^{k₂} ⋯` from `(generator, exponent)` pairs.
    pub fn from_powers(alphabet: GroupAlphabet, powers: &[(u8, i64)]) -> Result<GroupWord, AlgebraError> {
        let mut letters = Vec::new();
        for &(g, k) in powers {
            let sign = if k < 0 { -1 } else { 1 };
            for _ in 0..k.unsigned_abs() {
                letters.push(Letter::new(g, sign));
            }
        }
        GroupWord::from_letters(alphabet, letters)
    }

    pub fn alphabet(&self) -> GroupAlphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn checked_mul(&self, other: &GroupWord) -> Result<GroupWord, AlgebraError> {
        if self.alphabet != other.alphabet {
            return Err(AlgebraError::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: other.alphabet.to_string(),
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(GroupWord {
            alphabet: self.alphabet,
            letters: normalize(self.alphabet, letters),
        })
    }

    pub fn inverse(&self) -> GroupWord {
        let letters = self.letters.iter().rev().map(|l| l.inverse()).collect();
        GroupWord {
            alphabet: self.alphabet,
            letters: normalize(self.alphabet, letters),
        }
    }

    pub fn pow(&self, k: i64) -> GroupWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        GroupWord {
            alphabet: self.alphabet,
            letters: normalize(self.alphabet, letters),
        }
    }

    /// Image in the abelianization: exponent sum per generator.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.alphabet.rank()];
        for l in &self.letters {
            sums[l.generator as usize] += l.exponent as i64;
        }
        sums
    }

    /// Maximal runs of one letter, as `(generator, signed power)`.
    pub fn powers(&self) -> Vec<(u8, i64)> {
        let mut out: Vec<(u8, i64)> = Vec::new();
        for l in &self.letters {
            match out.last_mut() {
                Some((g, k)) if *g == l.generator && (*k > 0) == (l.exponent > 0) => *k += l.exponent as i64,
                _ => out.push((l.generator, l.exponent as i64)),
            }
        }
        out
    }

    /// Splits a product-alphabet word into its per-factor subwords.
    pub fn factor_parts(&self) -> Vec<Vec<Letter>> {
        let mut parts = vec![Vec::new(); self.alphabet.factor_count() as usize];
        for l in &self.letters {
            parts[self.alphabet.factor(l.generator) as usize].push(*l);
        }
        parts
    }

    /// Re-labels this word into another alphabet letter by letter.
    pub fn relabel(&self, target: GroupAlphabet, map: impl Fn(u8) -> u8) -> Result<GroupWord, AlgebraError> {
        GroupWord::from_letters(
            target,
            self.letters.iter().map(|l| Letter::new(map(l.generator), l.exponent)),
        )
    }
}

fn normalize(alphabet: GroupAlphabet, mut letters: Vec<Letter>) -> Vec<Letter> {
    if alphabet.factor_count() > 1 {
        letters.sort_by_key(|l| alphabet.factor(l.generator));
    }
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for l in letters {
        match out.last() {
            Some(prev) if prev.generator == l.generator && prev.exponent == -l.exponent => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

impl Ord for GroupWord {
    // length-lexicographic within an alphabet
    fn cmp(&self, other: &Self) -> Ordering {
        self.alphabet
            .cmp(&other.alphabet)
            .then(self.letters.len().cmp(&other.letters.len()))
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for GroupWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let names = self.alphabet.generators();
        let atoms: Vec<String> = self
            .powers()
            .into_iter()
            .map(|(g, k)| {
                if k == 1 {
                    names[g as usize].to_string()
                } else {
                    format!("{}^{}", names[g as usize], k)
                }
            })
            .collect();
        write!(f, "{}", atoms.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(powers: &[(u8, i64)]) -> GroupWord {
        GroupWord::from_powers(GroupAlphabet::F2, powers).unwrap()
    }

    #[test]
    fn free_reduction_cancels_adjacent_inverses() {
        assert!(w(&[(0, 1), (0, -1)]).is_identity());
        assert_eq!(w(&[(0, 2), (1, 1), (1, -1), (0, -1)]), w(&[(0, 1)]));
    }

    #[test]
    fn product_factors_commute() {
        let a = GroupAlphabet::F2Sq;
        let yx = GroupWord::from_powers(a, &[(3, 1), (0, 1)]).unwrap();
        let xy = GroupWord::from_powers(a, &[(0, 1), (3, 1)]).unwrap();
        assert_eq!(yx, xy);
        let cancel = GroupWord::from_powers(a, &[(3, 1), (0, 1), (3, -1)]).unwrap();
        assert_eq!(cancel, GroupWord::from_powers(a, &[(0, 1)]).unwrap());
    }

    #[test]
    fn display_groups_runs() {
        assert_eq!(w(&[(0, 2), (1, -1)]).to_string(), "X0^2 X1^-1");
        assert_eq!(w(&[]).to_string(), "1");
    }

    #[test]
    fn length_lex_order() {
        assert!(w(&[(1, 1)]) < w(&[(0, 2)]));
        assert!(w(&[(0, 1)]) < w(&[(0, -1)]));
        assert!(w(&[]) < w(&[(0, 1)]));
    }

    #[test]
    fn out_of_range_generator_is_rejected() {
        assert!(GroupWord::generator(GroupAlphabet::F2, 2).is_err());
    }
}
