use std::fmt;

use num::{One, Zero};

use super::combination::format_terms;
use super::ring::impl_ring_ops;
use super::{AlgebraError, Combination, GroupAlphabet, GroupWord, Letter, Rational, Ring, UnitRing, WordAlgebra};

/// Finite rational combination of reduced words over one alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupAlgebraElement {
    alphabet: GroupAlphabet,
    terms: Combination<GroupWord>,
}

impl GroupAlgebraElement {
    pub fn zero(alphabet: GroupAlphabet) -> Self {
        GroupAlgebraElement {
            alphabet,
            terms: Combination::new(),
        }
    }

    pub fn one(alphabet: GroupAlphabet) -> Self {
        Self::from_word(GroupWord::identity(alphabet))
    }

    pub fn constant(alphabet: GroupAlphabet, c: Rational) -> Self {
        Self::term(GroupWord::identity(alphabet), c)
    }

    pub fn from_word(word: GroupWord) -> Self {
        Self::term(word, Rational::one())
    }

    pub fn term(word: GroupWord, c: Rational) -> Self {
        GroupAlgebraElement {
            alphabet: word.alphabet(),
            terms: Combination::singleton(word, c),
        }
    }

    /// The generator `g` as an element; panics when out of range.
    pub fn generator(alphabet: GroupAlphabet, g: u8) -> Self {
        Self::from_word(GroupWord::generator(alphabet, g).expect("generator in range"))
    }

    pub fn from_terms(
        alphabet: GroupAlphabet,
        terms: impl IntoIterator<Item = (GroupWord, Rational)>,
    ) -> Result<Self, AlgebraError> {
        let mut out = Combination::new();
        for (w, c) in terms {
            if w.alphabet() != alphabet {
                return Err(AlgebraError::AlphabetMismatch {
                    left: alphabet.to_string(),
                    right: w.alphabet().to_string(),
                });
            }
            out.add_term(w, c);
        }
        Ok(GroupAlgebraElement { alphabet, terms: out })
    }

    pub fn alphabet(&self) -> GroupAlphabet {
        self.alphabet
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupWord, &Rational)> {
        self.terms.iter()
    }

    pub fn combination(&self) -> &Combination<GroupWord> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &GroupWord) -> Rational {
        self.terms.coefficient(w)
    }

    fn check_alphabet(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(AlgebraError::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: other.alphabet.to_string(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_alphabet(other)?;
        Ok(GroupAlgebraElement {
            alphabet: self.alphabet,
            terms: self.terms.plus(&other.terms),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_alphabet(other)?;
        let mut out = Combination::new();
        for (u, a) in self.terms.iter() {
            for (v, b) in other.terms.iter() {
                out.add_term(u.checked_mul(v)?, a * b);
            }
        }
        Ok(GroupAlgebraElement {
            alphabet: self.alphabet,
            terms: out,
        })
    }

    /// `g ↦ g⁻¹`, extended linearly.
    pub fn op(&self) -> Self {
        GroupAlgebraElement {
            alphabet: self.alphabet,
            terms: self.terms.map_keys(|w| w.inverse()),
        }
    }

    pub fn augmentation(&self) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (_, c)| acc + c)
    }

    /// `c·w` with `c ≠ 0`, if the element has that shape.
    pub fn as_monomial(&self) -> Option<(&GroupWord, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Integer powers; negative exponents need a unit.
    pub fn powi(&self, k: i64) -> Result<Self, AlgebraError> {
        let base = if k < 0 {
            self.unit_inverse()
                .ok_or_else(|| AlgebraError::NotAUnit(self.to_string()))?
        } else {
            self.clone()
        };
        Ok(base.pow(k.unsigned_abs() as u32))
    }

    /// Applies a word map to every term.
    pub fn map_words(&self, target: GroupAlphabet, f: impl Fn(&GroupWord) -> GroupWord) -> Self {
        GroupAlgebraElement {
            alphabet: target,
            terms: self.terms.map_keys(f),
        }
    }
}

impl Ring for GroupAlgebraElement {
    fn zero_like(&self) -> Self {
        Self::zero(self.alphabet)
    }
    fn one_like(&self) -> Self {
        Self::one(self.alphabet)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        self.checked_add(other).expect("group algebra alphabets agree")
    }
    fn negated(&self) -> Self {
        GroupAlgebraElement {
            alphabet: self.alphabet,
            terms: self.terms.negated(),
        }
    }
    fn times(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("group algebra alphabets agree")
    }
    fn scaled(&self, c: &Rational) -> Self {
        GroupAlgebraElement {
            alphabet: self.alphabet,
            terms: self.terms.scaled(c),
        }
    }
}

impl UnitRing for GroupAlgebraElement {
    fn unit_inverse(&self) -> Option<Self> {
        let (w, c) = self.as_monomial()?;
        Some(Self::term(w.inverse(), c.recip()))
    }
}

impl WordAlgebra for GroupAlgebraElement {
    type Letter = Letter;

    fn expand(&self) -> Vec<(Vec<Letter>, Rational)> {
        self.terms
            .iter()
            .map(|(w, c)| (w.letters().to_vec(), c.clone()))
            .collect()
    }

    fn alphabet_letters(&self) -> Vec<Letter> {
        (0..self.alphabet.rank() as u8)
            .flat_map(|g| [Letter::new(g, 1), Letter::new(g, -1)])
            .collect()
    }

    fn letter_element(&self, letter: Letter) -> Self {
        Self::from_word(GroupWord::from_letters(self.alphabet, [letter]).expect("letter in alphabet"))
    }

    fn letter_name(&self, letter: Letter) -> String {
        let name = self.alphabet.generators()[letter.generator as usize];
        if letter.exponent > 0 {
            name.to_string()
        } else {
            format!("{}^-1", name)
        }
    }
}

impl_ring_ops!(GroupAlgebraElement);

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format_terms(self.terms.iter(), |w| {
            if w.is_identity() {
                String::new()
            } else {
                w.to_string()
            }
        });
        f.write_str(&s)
    }
}
