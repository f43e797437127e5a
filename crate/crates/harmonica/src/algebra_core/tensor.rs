use std::cmp::Ordering;
use std::fmt;

use num::{One, Zero};

use super::combination::format_terms;
use super::ring::impl_ring_ops;
use super::{AlgebraError, Combination, Rational, Ring, TensorAlphabet, UnitRing, WordAlgebra};

/// A monomial in a free associative algebra; its degree is its length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorMonomial {
    alphabet: TensorAlphabet,
    letters: Vec<u8>,
}

impl TensorMonomial {
    pub fn unit(alphabet: TensorAlphabet) -> Self {
        TensorMonomial {
            alphabet,
            letters: Vec::new(),
        }
    }

    pub fn new(alphabet: TensorAlphabet, letters: Vec<u8>) -> Result<Self, AlgebraError> {
        if let Some(&bad) = letters.iter().find(|&&l| l as usize >= alphabet.rank()) {
            return Err(AlgebraError::GeneratorOutOfRange {
                alphabet: alphabet.to_string(),
                index: bad,
            });
        }
        Ok(TensorMonomial {
            alphabet,
            letters: sort_factors(alphabet, letters),
        })
    }

    pub fn alphabet(&self) -> TensorAlphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn degree(&self) -> usize {
        self.letters.len()
    }

    pub fn is_unit(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.alphabet != other.alphabet {
            return Err(AlgebraError::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: other.alphabet.to_string(),
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(TensorMonomial {
            alphabet: self.alphabet,
            letters: sort_factors(self.alphabet, letters),
        })
    }

    pub fn reversed(&self) -> Self {
        let letters = self.letters.iter().rev().copied().collect();
        TensorMonomial {
            alphabet: self.alphabet,
            letters: sort_factors(self.alphabet, letters),
        }
    }

    pub fn relabel(&self, target: TensorAlphabet, map: impl Fn(u8) -> u8) -> Result<Self, AlgebraError> {
        TensorMonomial::new(target, self.letters.iter().map(|&l| map(l)).collect())
    }

    /// Splits off the first `k` letters (no factor re-sorting is needed since
    /// both halves stay sorted).
    pub fn split_at(&self, k: usize) -> (Self, Self) {
        let (a, b) = self.letters.split_at(k);
        (
            TensorMonomial {
                alphabet: self.alphabet,
                letters: a.to_vec(),
            },
            TensorMonomial {
                alphabet: self.alphabet,
                letters: b.to_vec(),
            },
        )
    }
}

fn sort_factors(alphabet: TensorAlphabet, mut letters: Vec<u8>) -> Vec<u8> {
    if alphabet.factor_count() > 1 {
        letters.sort_by_key(|&l| alphabet.factor(l));
    }
    letters
}

impl Ord for TensorMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.alphabet
            .cmp(&other.alphabet)
            .then(self.letters.len().cmp(&other.letters.len()))
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for TensorMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TensorMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let names = self.alphabet.generators();
        let mut atoms: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let run = j - i;
            if run == 1 {
                atoms.push(names[l as usize].to_string());
            } else {
                atoms.push(format!("{}^{}", names[l as usize], run));
            }
            i = j;
        }
        write!(f, "{}", atoms.join(" "))
    }
}

/// Finite rational combination of monomials over one letter set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorElement {
    alphabet: TensorAlphabet,
    terms: Combination<TensorMonomial>,
}

impl TensorElement {
    pub fn zero(alphabet: TensorAlphabet) -> Self {
        TensorElement {
            alphabet,
            terms: Combination::new(),
        }
    }

    pub fn one(alphabet: TensorAlphabet) -> Self {
        Self::from_monomial(TensorMonomial::unit(alphabet))
    }

    pub fn constant(alphabet: TensorAlphabet, c: Rational) -> Self {
        Self::term(TensorMonomial::unit(alphabet), c)
    }

    pub fn from_monomial(m: TensorMonomial) -> Self {
        Self::term(m, Rational::one())
    }

    pub fn term(m: TensorMonomial, c: Rational) -> Self {
        TensorElement {
            alphabet: m.alphabet(),
            terms: Combination::singleton(m, c),
        }
    }

    /// The letter `l`; panics when out of range.
    pub fn letter(alphabet: TensorAlphabet, l: u8) -> Self {
        Self::from_monomial(TensorMonomial::new(alphabet, vec![l]).expect("letter in range"))
    }

    pub fn from_terms(
        alphabet: TensorAlphabet,
        terms: impl IntoIterator<Item = (TensorMonomial, Rational)>,
    ) -> Result<Self, AlgebraError> {
        let mut out = Combination::new();
        for (m, c) in terms {
            if m.alphabet() != alphabet {
                return Err(AlgebraError::AlphabetMismatch {
                    left: alphabet.to_string(),
                    right: m.alphabet().to_string(),
                });
            }
            out.add_term(m, c);
        }
        Ok(TensorElement { alphabet, terms: out })
    }

    pub fn alphabet(&self) -> TensorAlphabet {
        self.alphabet
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorMonomial, &Rational)> {
        self.terms.iter()
    }

    pub fn combination(&self) -> &Combination<TensorMonomial> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &TensorMonomial) -> Rational {
        self.terms.coefficient(m)
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
        Ok(TensorElement {
            alphabet: self.alphabet,
            terms: self.terms.plus(&other.terms),
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.mul_truncated(other, usize::MAX)
    }

    /// Product with every term of degree above `n` dropped.
    pub fn mul_truncated(&self, other: &Self, n: usize) -> Result<Self, AlgebraError> {
        self.check_alphabet(other)?;
        let mut out = Combination::new();
        for (u, a) in self.terms.iter() {
            for (v, b) in other.terms.iter() {
                if u.degree() + v.degree() <= n {
                    out.add_term(u.checked_mul(v)?, a * b);
                }
            }
        }
        Ok(TensorElement {
            alphabet: self.alphabet,
            terms: out,
        })
    }

    /// Letters go to their negatives and products are reversed.
    pub fn antipode(&self) -> Self {
        let mut out = Combination::new();
        for (m, c) in self.terms.iter() {
            let sign = if m.degree() % 2 == 0 { c.clone() } else { -c };
            out.add_term(m.reversed(), sign);
        }
        TensorElement {
            alphabet: self.alphabet,
            terms: out,
        }
    }

    pub fn homogeneous_component(&self, d: usize) -> Self {
        TensorElement {
            alphabet: self.alphabet,
            terms: self.terms.filter(|m| m.degree() == d),
        }
    }

    pub fn truncate(&self, n: usize) -> Self {
        TensorElement {
            alphabet: self.alphabet,
            terms: self.terms.filter(|m| m.degree() <= n),
        }
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Zero counts as homogeneous of every degree.
    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn map_monomials(&self, target: TensorAlphabet, f: impl Fn(&TensorMonomial) -> TensorMonomial) -> Self {
        TensorElement {
            alphabet: target,
            terms: self.terms.map_keys(f),
        }
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rational {
        self.terms.coefficient(&TensorMonomial::unit(self.alphabet))
    }
}

impl Ring for TensorElement {
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
        self.checked_add(other).expect("tensor alphabets agree")
    }
    fn negated(&self) -> Self {
        TensorElement {
            alphabet: self.alphabet,
            terms: self.terms.negated(),
        }
    }
    fn times(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("tensor alphabets agree")
    }
    fn scaled(&self, c: &Rational) -> Self {
        TensorElement {
            alphabet: self.alphabet,
            terms: self.terms.scaled(c),
        }
    }
}

impl UnitRing for TensorElement {
    fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() == 1 {
            let c = self.constant_term();
            if !c.is_zero() {
                return Some(Self::constant(self.alphabet, c.recip()));
            }
        }
        None
    }
}

impl WordAlgebra for TensorElement {
    type Letter = u8;

    fn expand(&self) -> Vec<(Vec<u8>, Rational)> {
        self.terms
            .iter()
            .map(|(m, c)| (m.letters().to_vec(), c.clone()))
            .collect()
    }

    fn alphabet_letters(&self) -> Vec<u8> {
        (0..self.alphabet.rank() as u8).collect()
    }

    fn letter_element(&self, letter: u8) -> Self {
        Self::letter(self.alphabet, letter)
    }

    fn letter_name(&self, letter: u8) -> String {
        self.alphabet.generators()[letter as usize].to_string()
    }
}

impl_ring_ops!(TensorElement);

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format_terms(self.terms.iter(), |m| {
            if m.is_unit() {
                String::new()
            } else {
                m.to_string()
            }
        });
        f.write_str(&s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::expr::parse_tensor;

    fn vdr(s: &str) -> TensorElement {
        parse_tensor(TensorAlphabet::V, s).unwrap()
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(vdr("e0 e1").antipode(), vdr("e1 e0"));
        assert_eq!(vdr("e0").antipode(), vdr("-e0"));
    }

    #[test]
    fn tensor_square_letters_commute_across_factors() {
        let a = parse_tensor(TensorAlphabet::VSq, "f1 e0").unwrap();
        let b = parse_tensor(TensorAlphabet::VSq, "e0 f1").unwrap();
        assert_eq!(a, b);
        let s = parse_tensor(TensorAlphabet::VSq, "e0 e1 f0").unwrap().antipode();
        assert_eq!(s, parse_tensor(TensorAlphabet::VSq, "-e1 e0 f0").unwrap());
    }

    #[test]
    fn homogeneous_parts() {
        let t = vdr("1 + e0 - 2 e0 e1");
        assert_eq!(t.homogeneous_component(2), vdr("-2 e0 e1"));
        assert_eq!(t.min_degree(), Some(0));
        assert!(vdr("e0 e1 - e1 e0").is_homogeneous_of(2));
    }

    #[test]
    fn truncated_product_drops_high_degrees() {
        let a = vdr("1 + e0");
        let p = a.mul_truncated(&a, 1).unwrap();
        assert_eq!(p, vdr("1 + 2 e0"));
    }
}
