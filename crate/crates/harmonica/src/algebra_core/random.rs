//! Seeded random sampling: words of bounded length, coefficients in −3..=3.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    int, GroupAlgebraElement, GroupAlphabet, GroupWord, Letter, TensorAlphabet, TensorElement, TensorMonomial,
};

pub type SampleRng = ChaCha8Rng;

pub const MAX_COEFFICIENT: i64 = 3;

pub fn rng_from_seed(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A nonzero coefficient in −3..=3.
pub fn coefficient(rng: &mut impl Rng) -> i64 {
    loop {
        let c = rng.gen_range(-MAX_COEFFICIENT..=MAX_COEFFICIENT);
        if c != 0 {
            return c;
        }
    }
}

/// A word built from at most `max_len` random letters (reduction may shorten it).
pub fn group_word(rng: &mut impl Rng, alphabet: GroupAlphabet, max_len: usize) -> GroupWord {
    let len = rng.gen_range(0..=max_len);
    group_word_of_letters(rng, alphabet, len)
}

pub fn group_word_of_letters(rng: &mut impl Rng, alphabet: GroupAlphabet, len: usize) -> GroupWord {
    let letters: Vec<Letter> = (0..len)
        .map(|_| {
            let g = rng.gen_range(0..alphabet.rank()) as u8;
            Letter::new(g, if rng.gen_bool(0.5) { 1 } else { -1 })
        })
        .collect();
    GroupWord::from_letters(alphabet, letters).expect("letters in range")
}

/// A nontrivial word.
pub fn nontrivial_group_word(rng: &mut impl Rng, alphabet: GroupAlphabet, max_len: usize) -> GroupWord {
    loop {
        let w = group_word(rng, alphabet, max_len.max(1));
        if !w.is_identity() {
            return w;
        }
    }
}

pub fn group_element(
    rng: &mut impl Rng,
    alphabet: GroupAlphabet,
    max_terms: usize,
    max_len: usize,
) -> GroupAlgebraElement {
    let n = rng.gen_range(1..=max_terms.max(1));
    let mut out = GroupAlgebraElement::zero(alphabet);
    for _ in 0..n {
        let w = group_word(rng, alphabet, max_len);
        out = &out + &GroupAlgebraElement::term(w, int(coefficient(rng)));
    }
    out
}

/// A random element of the augmentation ideal: Σ cᵢ(wᵢ − 1).
pub fn augmentation_ideal_element(
    rng: &mut impl Rng,
    alphabet: GroupAlphabet,
    max_terms: usize,
    max_len: usize,
) -> GroupAlgebraElement {
    let x = group_element(rng, alphabet, max_terms, max_len);
    let eps = x.augmentation();
    &x - &GroupAlgebraElement::constant(alphabet, eps)
}

pub fn tensor_monomial(rng: &mut impl Rng, alphabet: TensorAlphabet, degree: usize) -> TensorMonomial {
    let letters = (0..degree).map(|_| rng.gen_range(0..alphabet.rank()) as u8).collect();
    TensorMonomial::new(alphabet, letters).expect("letters in range")
}

pub fn tensor_element(
    rng: &mut impl Rng,
    alphabet: TensorAlphabet,
    max_terms: usize,
    max_degree: usize,
) -> TensorElement {
    let n = rng.gen_range(1..=max_terms.max(1));
    let mut out = TensorElement::zero(alphabet);
    for _ in 0..n {
        let d = rng.gen_range(0..=max_degree);
        let m = tensor_monomial(rng, alphabet, d);
        out = &out + &TensorElement::term(m, int(coefficient(rng)));
    }
    out
}

pub fn homogeneous_tensor(
    rng: &mut impl Rng,
    alphabet: TensorAlphabet,
    max_terms: usize,
    degree: usize,
) -> TensorElement {
    let n = rng.gen_range(1..=max_terms.max(1));
    let mut out = TensorElement::zero(alphabet);
    for _ in 0..n {
        let m = tensor_monomial(rng, alphabet, degree);
        out = &out + &TensorElement::term(m, int(coefficient(rng)));
    }
    out
}
