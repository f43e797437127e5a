//! The associated graded of a group algebra, computed through the truncated
//! Magnus expansion `Xᵢ ↦ 1 + eᵢ`, `Xᵢ⁻¹ ↦ Σₖ (−eᵢ)ᵏ`.
//!
//! For free groups (and direct products of them) the augmentation-ideal
//! filtration is exactly the pull-back of the degree filtration, so the
//! filtration degree of `a` is the lowest degree present in its expansion and
//! `grₙ(a)` is the degree-`n` part.

use std::fmt;

use num::One;
use thiserror::Error;

use crate::algebra_core::{
    GroupAlgebraElement, GroupWord, Letter, Rational, Ring, TensorAlphabet, TensorElement, TensorMonomial,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MagnusError {
    #[error("truncation must be at least 1, got {0}")]
    TruncationTooSmall(usize),
    #[error("the zero element has no filtration degree")]
    ZeroElement,
    #[error("degree {degree} exceeds truncation {truncation}")]
    DegreeAboveTruncation { degree: usize, truncation: usize },
    #[error("element has filtration degree {found}, below the requested {requested}")]
    BelowFiltration { requested: usize, found: usize },
}

/// Either a degree `≤ N`, or the statement that the expansion vanishes
/// through degree `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum FiltrationDegree {
    Degree(usize),
    ExceedsN,
}

impl FiltrationDegree {
    pub fn at_least(self, n: usize) -> bool {
        match self {
            FiltrationDegree::Degree(d) => d >= n,
            FiltrationDegree::ExceedsN => true,
        }
    }

    pub fn value(self) -> Option<usize> {
        match self {
            FiltrationDegree::Degree(d) => Some(d),
            FiltrationDegree::ExceedsN => None,
        }
    }
}

impl fmt::Display for FiltrationDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiltrationDegree::Degree(d) => write!(f, "{}", d),
            FiltrationDegree::ExceedsN => write!(f, "exceeds-N"),
        }
    }
}

/// A tensor-algebra element known only through degree `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagnusSeries {
    truncation: usize,
    body: TensorElement,
}

impl MagnusSeries {
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn body(&self) -> &TensorElement {
        &self.body
    }

    pub fn component(&self, d: usize) -> TensorElement {
        self.body.homogeneous_component(d)
    }

    pub fn lowest_degree(&self) -> FiltrationDegree {
        match self.body.min_degree() {
            Some(d) => FiltrationDegree::Degree(d),
            None => FiltrationDegree::ExceedsN,
        }
    }

    /// The same series known only through degree `m ≤ N`.
    pub fn restrict(&self, m: usize) -> MagnusSeries {
        MagnusSeries {
            truncation: m.min(self.truncation),
            body: self.body.truncate(m),
        }
    }

    pub fn times(&self, other: &MagnusSeries) -> MagnusSeries {
        let n = self.truncation.min(other.truncation);
        MagnusSeries {
            truncation: n,
            body: self.body.mul_truncated(&other.body, n).expect("same tensor alphabet"),
        }
    }
}

impl fmt::Display for MagnusSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(deg {})", self.body, self.truncation + 1)
    }
}

fn letter_series(target: TensorAlphabet, letter: Letter, n: usize) -> TensorElement {
    let mut out = TensorElement::one(target);
    if letter.exponent > 0 {
        if n >= 1 {
            out = &out + &TensorElement::letter(target, letter.generator);
        }
    } else {
        for k in 1..=n {
            let m = TensorMonomial::new(target, vec![letter.generator; k]).expect("letter in range");
            let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
            out = &out + &TensorElement::term(m, sign);
        }
    }
    out
}

/// Magnus expansion of a single word through degree `n`.
pub fn magnus_word(word: &GroupWord, n: usize) -> TensorElement {
    let target = word.alphabet().magnus_target();
    let mut acc = TensorElement::one(target);
    for &l in word.letters() {
        acc = acc
            .mul_truncated(&letter_series(target, l, n), n)
            .expect("same tensor alphabet");
    }
    acc
}

pub fn magnus(a: &GroupAlgebraElement, n: usize) -> Result<MagnusSeries, MagnusError> {
    if n < 1 {
        return Err(MagnusError::TruncationTooSmall(n));
    }
    let target = a.alphabet().magnus_target();
    let mut body = TensorElement::zero(target);
    for (w, c) in a.terms() {
        body = &body + &magnus_word(w, n).scaled(c);
    }
    Ok(MagnusSeries { truncation: n, body })
}

pub fn filtration_degree(a: &GroupAlgebraElement, n: usize) -> Result<FiltrationDegree, MagnusError> {
    if a.is_zero() {
        return Err(MagnusError::ZeroElement);
    }
    Ok(magnus(a, n)?.lowest_degree())
}

/// `[a]ₙ ∈ grₙ`, defined when `a` lies in `Fⁿ`.
pub fn gr_component(a: &GroupAlgebraElement, n: usize, truncation: usize) -> Result<TensorElement, MagnusError> {
    if n > truncation {
        return Err(MagnusError::DegreeAboveTruncation { degree: n, truncation });
    }
    let target = a.alphabet().magnus_target();
    if a.is_zero() {
        return Ok(TensorElement::zero(target));
    }
    let series = magnus(a, truncation)?;
    if let FiltrationDegree::Degree(d) = series.lowest_degree() {
        if d < n {
            return Err(MagnusError::BelowFiltration { requested: n, found: d });
        }
    }
    Ok(series.component(n))
}

/// The graded lift `e_{i₁}⋯e_{iₖ} ↦ (X_{i₁}−1)⋯(X_{iₖ}−1)`; its degree-`k`
/// Magnus component is the monomial again.
pub fn graded_lift(t: &TensorElement) -> GroupAlgebraElement {
    let source = t.alphabet().magnus_source();
    let one = GroupAlgebraElement::one(source);
    let mut out = GroupAlgebraElement::zero(source);
    for (m, c) in t.terms() {
        let mut prod = one.clone();
        for &l in m.letters() {
            prod = &prod * &(&GroupAlgebraElement::generator(source, l) - &one);
        }
        out = &out + &prod.scaled(c);
    }
    out
}

/// Filtration degrees on the algebras the engine uses: the augmentation
/// filtration on group algebras and the degree filtration on tensor algebras.
pub trait Filtered {
    fn filtration_degree_through(&self, n: usize) -> Result<FiltrationDegree, MagnusError>;
}

impl Filtered for GroupAlgebraElement {
    fn filtration_degree_through(&self, n: usize) -> Result<FiltrationDegree, MagnusError> {
        filtration_degree(self, n)
    }
}

impl Filtered for TensorElement {
    fn filtration_degree_through(&self, n: usize) -> Result<FiltrationDegree, MagnusError> {
        match self.min_degree() {
            None => Err(MagnusError::ZeroElement),
            Some(d) if d <= n => Ok(FiltrationDegree::Degree(d)),
            Some(_) => Ok(FiltrationDegree::ExceedsN),
        }
    }
}

/// Degree of `a` through `n`, treating zero as lying in every filtration step.
pub fn degree_or_exceeds<T: Filtered + Ring>(a: &T, n: usize) -> FiltrationDegree {
    if a.is_zero() {
        FiltrationDegree::ExceedsN
    } else {
        a.filtration_degree_through(n).unwrap_or(FiltrationDegree::ExceedsN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::expr::{parse_group, parse_tensor};
    use crate::algebra_core::GroupAlphabet;

    fn vb(s: &str) -> GroupAlgebraElement {
        parse_group(GroupAlphabet::F2, s).unwrap()
    }

    fn vdr(s: &str) -> TensorElement {
        parse_tensor(TensorAlphabet::V, s).unwrap()
    }

    #[test]
    fn generator_minus_one_is_its_letter() {
        assert_eq!(magnus(&vb("X1 - 1"), 3).unwrap().body(), &vdr("e1"));
    }

    #[test]
    fn inverse_generator_is_a_geometric_series() {
        assert_eq!(magnus(&vb("X1^-1 - 1"), 3).unwrap().body(), &vdr("-e1 + e1^2 - e1^3"));
    }

    #[test]
    fn filtration_degrees() {
        assert_eq!(filtration_degree(&vb("X0"), 4), Ok(FiltrationDegree::Degree(0)));
        assert_eq!(
            filtration_degree(&vb("(X0 - 1)(X1 - 1)"), 4),
            Ok(FiltrationDegree::Degree(2))
        );
        assert_eq!(filtration_degree(&vb("0"), 4), Err(MagnusError::ZeroElement));
        let deep = vb("(X0 - 1)^3");
        assert_eq!(filtration_degree(&deep, 2), Ok(FiltrationDegree::ExceedsN));
    }

    #[test]
    fn commutator_graded_component() {
        assert_eq!(gr_component(&vb("X0 X1 - X1 X0"), 2, 4).unwrap(), vdr("e0 e1 - e1 e0"));
    }

    #[test]
    fn gr_component_preconditions() {
        assert!(matches!(
            gr_component(&vb("X0"), 1, 3),
            Err(MagnusError::BelowFiltration { .. })
        ));
        assert!(matches!(
            gr_component(&vb("X0 - 1"), 5, 3),
            Err(MagnusError::DegreeAboveTruncation { .. })
        ));
        assert!(magnus(&vb("X0"), 0).is_err());
    }

    #[test]
    fn tensor_square_uses_e_and_f_letters() {
        let a = parse_group(GroupAlphabet::F2Sq, "(X1 - 1)(Y0 - 1)").unwrap();
        assert_eq!(
            gr_component(&a, 2, 3).unwrap(),
            parse_tensor(TensorAlphabet::VSq, "e1 f0").unwrap()
        );
    }

    #[test]
    fn graded_lift_recovers_the_monomial() {
        let t = vdr("e0 e1 - 2 e1 e1");
        assert_eq!(gr_component(&graded_lift(&t), 2, 4).unwrap(), t);
    }
}
