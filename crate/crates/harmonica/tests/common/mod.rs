//! Proptest strategies shared by the property tests.
#![allow(dead_code)]

use proptest::prelude::*;

use harmonica::algebra_core::{
    int, GroupAlgebraElement, GroupAlphabet, GroupWord, Matrix, Ring, TensorAlphabet, TensorElement, TensorMonomial,
};
use harmonica::braid_betti::{P5Element, P5Word};
use harmonica::braid_derham::UP5Element;

pub fn coefficient() -> impl Strategy<Value = i64> {
    prop_oneof![-3i64..=-1, 1i64..=3]
}

pub fn group_word(alphabet: GroupAlphabet, max_len: usize) -> impl Strategy<Value = GroupWord> {
    let rank = alphabet.rank() as u8;
    prop::collection::vec((0..rank, prop_oneof![Just(-1i64), Just(1i64)]), 0..=max_len)
        .prop_map(move |p| GroupWord::from_powers(alphabet, &p).unwrap())
}

pub fn group_element(
    alphabet: GroupAlphabet,
    max_terms: usize,
    max_len: usize,
) -> impl Strategy<Value = GroupAlgebraElement> {
    prop::collection::vec((group_word(alphabet, max_len), coefficient()), 1..=max_terms).prop_map(move |terms| {
        terms
            .into_iter()
            .fold(GroupAlgebraElement::zero(alphabet), |acc, (w, c)| {
                &acc + &GroupAlgebraElement::term(w, int(c))
            })
    })
}

pub fn nonzero_group_element(
    alphabet: GroupAlphabet,
    max_terms: usize,
    max_len: usize,
) -> impl Strategy<Value = GroupAlgebraElement> {
    group_element(alphabet, max_terms, max_len).prop_filter("nonzero", |x| !x.is_empty())
}

pub fn tensor_monomial(alphabet: TensorAlphabet, max_degree: usize) -> impl Strategy<Value = TensorMonomial> {
    let rank = alphabet.rank() as u8;
    prop::collection::vec(0..rank, 0..=max_degree).prop_map(move |l| TensorMonomial::new(alphabet, l).unwrap())
}

pub fn homogeneous_monomial(alphabet: TensorAlphabet, degree: usize) -> impl Strategy<Value = TensorMonomial> {
    let rank = alphabet.rank() as u8;
    prop::collection::vec(0..rank, degree).prop_map(move |l| TensorMonomial::new(alphabet, l).unwrap())
}

pub fn tensor_element(
    alphabet: TensorAlphabet,
    max_terms: usize,
    max_degree: usize,
) -> impl Strategy<Value = TensorElement> {
    prop::collection::vec((tensor_monomial(alphabet, max_degree), coefficient()), 1..=max_terms).prop_map(
        move |terms| {
            terms.into_iter().fold(TensorElement::zero(alphabet), |acc, (m, c)| {
                &acc + &TensorElement::term(m, int(c))
            })
        },
    )
}

pub fn homogeneous_tensor(
    alphabet: TensorAlphabet,
    max_terms: usize,
    degree: usize,
) -> impl Strategy<Value = TensorElement> {
    prop::collection::vec((homogeneous_monomial(alphabet, degree), coefficient()), 1..=max_terms).prop_map(
        move |terms| {
            terms.into_iter().fold(TensorElement::zero(alphabet), |acc, (m, c)| {
                &acc + &TensorElement::term(m, int(c))
            })
        },
    )
}

pub fn group_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<GroupAlgebraElement>> {
    prop::collection::vec(group_element(GroupAlphabet::F2, 2, 2), rows * cols)
        .prop_map(move |e| Matrix::new(rows, cols, e).unwrap())
}

pub fn tensor_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<TensorElement>> {
    prop::collection::vec(tensor_element(TensorAlphabet::V, 2, 2), rows * cols)
        .prop_map(move |e| Matrix::new(rows, cols, e).unwrap())
}

pub fn p5_word(max_len: usize) -> impl Strategy<Value = P5Word> {
    (
        group_word(GroupAlphabet::F3, max_len),
        group_word(GroupAlphabet::F2, max_len),
    )
        .prop_map(|(u, h)| P5Word::new(u, h).unwrap())
}

pub fn p5_element(max_terms: usize, max_len: usize) -> impl Strategy<Value = P5Element> {
    prop::collection::vec((p5_word(max_len), coefficient()), 1..=max_terms).prop_map(|terms| {
        terms
            .into_iter()
            .fold(P5Element::zero(), |acc, (w, c)| &acc + &P5Element::term(w, int(c)))
    })
}

/// Each term `c·(u, h)` paired with `−c·(1, h)`.
pub fn p5_kernel_element(max_terms: usize, max_len: usize) -> impl Strategy<Value = P5Element> {
    prop::collection::vec((p5_word(max_len), coefficient()), 1..=max_terms).prop_map(|terms| {
        terms.into_iter().fold(P5Element::zero(), |acc, (w, c)| {
            let base = P5Word::section(w.base().clone()).unwrap();
            &(&acc + &P5Element::term(w, int(c))) - &P5Element::term(base, int(c))
        })
    })
}

pub fn up5_monomial(max_kernel: usize, max_base: usize) -> impl Strategy<Value = UP5Element> {
    (
        tensor_monomial(TensorAlphabet::F3Lie, max_kernel),
        tensor_monomial(TensorAlphabet::V, max_base),
    )
        .prop_map(|(a, n)| UP5Element::from_parts(a, n).unwrap())
}

pub fn up5_element(max_terms: usize, max_degree: usize) -> impl Strategy<Value = UP5Element> {
    prop::collection::vec((up5_monomial(max_degree, max_degree), coefficient()), 1..=max_terms).prop_map(|terms| {
        terms
            .into_iter()
            .fold(UP5Element::zero(), |acc, (m, c)| &acc + &m.scaled(&int(c)))
    })
}

/// Combinations of `a ⊗ n` with `a` of degree at least 1.
pub fn up5_kernel_element(max_terms: usize, max_degree: usize) -> impl Strategy<Value = UP5Element> {
    let kernel = prop::collection::vec(0..3u8, 1..=max_degree)
        .prop_map(|l| TensorMonomial::new(TensorAlphabet::F3Lie, l).unwrap());
    prop::collection::vec(
        (kernel, tensor_monomial(TensorAlphabet::V, max_degree), coefficient()),
        1..=max_terms,
    )
    .prop_map(|terms| {
        terms.into_iter().fold(UP5Element::zero(), |acc, (a, n, c)| {
            &acc + &UP5Element::from_parts(a, n).unwrap().scaled(&int(c))
        })
    })
}
