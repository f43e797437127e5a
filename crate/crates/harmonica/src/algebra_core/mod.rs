//! Exact scalars, free-group words, free associative monomials, their linear
//! combinations, and matrices over any of these.
//!
//! Direct products of free groups (and tensor products of free associative
//! algebras) are handled by alphabets split into commuting factors: letters
//! are stably sorted by factor before reduction, so `X1 Y0 X0` and
//! `X1 X0 Y0` are the same word.

mod alphabet;
mod combination;
mod error;
pub mod expr;
mod group_algebra;
mod matrix;
mod morphism;
pub mod random;
mod ring;
mod tensor;
mod word;

pub use alphabet::{GroupAlphabet, TensorAlphabet};
pub use combination::Combination;
pub use error::AlgebraError;
pub use group_algebra::GroupAlgebraElement;
pub use matrix::{matrix_map, Matrix};
pub use morphism::{Substitution, WordAlgebra};
pub use ring::{Ring, UnitRing};
pub use tensor::{TensorElement, TensorMonomial};
pub use word::{GroupWord, Letter};

pub(crate) use combination::format_terms;
pub(crate) use ring::impl_ring_ops;

/// The base ring: arbitrary-precision rationals, always in lowest terms.
pub type Rational = num::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Sum of coefficients: the algebra morphism sending every group element to 1.
pub fn augmentation(a: &GroupAlgebraElement) -> Rational {
    a.augmentation()
}

/// The antiautomorphism `g ↦ g⁻¹` of a group algebra.
pub fn op(a: &GroupAlgebraElement) -> GroupAlgebraElement {
    a.op()
}

/// The antiautomorphism of a tensor algebra sending each letter `x` to `−x`.
pub fn antipode(t: &TensorElement) -> TensorElement {
    t.antipode()
}

pub fn multiply(a: &GroupAlgebraElement, b: &GroupAlgebraElement) -> Result<GroupAlgebraElement, AlgebraError> {
    a.checked_mul(b)
}

pub fn matrix_multiply<R: Ring>(m: &Matrix<R>, n: &Matrix<R>) -> Result<Matrix<R>, AlgebraError> {
    m.checked_mul(n)
}
