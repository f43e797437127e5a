//! The de Rham object: `V^DR = K⟨e₀, e₁⟩` acting on `(V^DR ⊗ V^DR)^⊕3`
//! through `rρ`, with `e = e₁`, `rrow = (1, −1, 0)` and `rcol = (e₁, −f₁, 0)ᵗ`.
//! Here `fᵢ = 1 ⊗ eᵢ` and `e_∞ = −e₀ − e₁` is always stored expanded.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num::BigInt;
use thiserror::Error;

use crate::algebra_core::expr::parse_tensor;
use crate::algebra_core::{
    AlgebraError, Matrix, Rational, Ring, Substitution, TensorAlphabet, TensorElement, TensorMonomial,
};
use crate::betti_matrix::{self, delta_wb_generator, rucol, rurho, rurow, WbGenerator};
use crate::bfs_framework::{BfsObject, CheckOutcome, Structure};
use crate::magnus_gr::{gr_component, magnus};

type T = TensorElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeRhamError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("expected an element of {expected}, got one of {found}")]
    WrongAlgebra {
        expected: TensorAlphabet,
        found: TensorAlphabet,
    },
    #[error("the closed form needs n >= 0, got {0}")]
    NegativeDegree(i64),
    #[error("{0} is not in K + V e1")]
    NotInW(String),
}

pub(crate) fn v(s: &str) -> T {
    parse_tensor(TensorAlphabet::V, s).expect("well-formed constant")
}

pub(crate) fn vsq(s: &str) -> T {
    parse_tensor(TensorAlphabet::VSq, s).expect("well-formed constant")
}

pub fn rho_e0() -> Matrix<T> {
    Matrix::from_rows(vec![
        vec![vsq("e0"), vsq("0"), vsq("0")],
        vec![vsq("0"), vsq("-e1 + f0"), vsq("-e1")],
        vec![vsq("0"), vsq("(e0 + e1) - f0"), vsq("e0 + e1")],
    ])
    .expect("3x3")
}

pub fn rho_e1() -> Matrix<T> {
    Matrix::from_rows(vec![
        vec![vsq("e1"), vsq("-f1"), vsq("0")],
        vec![vsq("-e1"), vsq("f1"), vsq("0")],
        vec![vsq("0"), vsq("0"), vsq("0")],
    ])
    .expect("3x3")
}

pub fn rrow() -> Matrix<T> {
    Matrix::row(vec![vsq("1"), vsq("-1"), vsq("0")]).expect("1x3")
}

pub fn rcol() -> Matrix<T> {
    Matrix::column(vec![vsq("e1"), vsq("-f1"), vsq("0")]).expect("3x1")
}

struct DeRhamTables {
    rho: Substitution<T, Matrix<T>>,
    rrho: Substitution<T, Matrix<T>>,
    object: BfsObject<T, T>,
}

fn build_tables() -> DeRhamTables {
    let one3 = Matrix::identity(3, &vsq("1"));
    let rho = Substitution::new(one3.clone()).with(0, rho_e0()).with(1, rho_e1());
    // rρ(eᵢ) = M₃(S)(ᵗρ(S eᵢ)).
    let mut rrho = Substitution::new(one3);
    for l in 0..2u8 {
        let s_letter = T::letter(TensorAlphabet::V, l).antipode();
        let image = rho
            .apply(&s_letter)
            .expect("letters have images")
            .transpose()
            .map(|x| x.antipode());
        rrho.insert(l, image);
    }
    let object = BfsObject::new("O^DR_mat", rrho.clone(), v("e1"), rrow(), rcol())
        .expect("well-formed de Rham object")
        .with_structure(Structure::Graded {
            generators: vec![(v("e0"), 1), (v("e1"), 1)],
        });
    DeRhamTables { rho, rrho, object }
}

fn tables() -> &'static DeRhamTables {
    static TABLES: OnceLock<DeRhamTables> = OnceLock::new();
    TABLES.get_or_init(build_tables)
}

fn require(x: &T, expected: TensorAlphabet) -> Result<(), DeRhamError> {
    if x.alphabet() != expected {
        return Err(DeRhamError::WrongAlgebra {
            expected,
            found: x.alphabet(),
        });
    }
    Ok(())
}

pub fn rho(x: &T) -> Result<Matrix<T>, DeRhamError> {
    require(x, TensorAlphabet::V)?;
    Ok(tables().rho.apply(x)?)
}

/// `rρ(x)` from the letter table.
pub fn rrho(x: &T) -> Result<Matrix<T>, DeRhamError> {
    require(x, TensorAlphabet::V)?;
    Ok(tables().rrho.apply(x)?)
}

/// `rρ(x)` evaluated as `M₃(S) ∘ ᵗ ∘ ρ ∘ S` on `x` itself.
pub fn rrho_composite(x: &T) -> Result<Matrix<T>, DeRhamError> {
    Ok(rho(&x.antipode())?.transpose().map(|y| y.antipode()))
}

pub fn derham_object() -> &'static BfsObject<T, T> {
    &tables().object
}

/// `Δ_{O^DR_mat}(x) = rrow · rρ(x) · rcol`.
pub fn delta_odr(x: &T) -> Result<T, DeRhamError> {
    require(x, TensorAlphabet::V)?;
    Ok(derham_object().delta(x)?)
}

fn e0_power_e1(n: usize) -> T {
    let mut letters = vec![0u8; n];
    letters.push(1);
    T::from_monomial(TensorMonomial::new(TensorAlphabet::V, letters).expect("e0^n e1"))
}

fn embed(x: &T, target: TensorAlphabet, shift: u8) -> T {
    x.map_monomials(target, |m| {
        m.relabel(target, |l| l + shift).expect("shifted letters in range")
    })
}

/// `x ↦ x ⊗ 1`.
pub fn left(x: &T) -> T {
    embed(x, TensorAlphabet::VSq, 0)
}

/// `x ↦ 1 ⊗ x`.
pub fn right(x: &T) -> T {
    embed(x, TensorAlphabet::VSq, 2)
}

pub fn tensor(a: &T, b: &T) -> T {
    &left(a) * &right(b)
}

/// The closed form `Δ^{W,DR}(e₀ⁿe₁)`.
pub fn delta_wdr(n: i64) -> Result<T, DeRhamError> {
    if n < 0 {
        return Err(DeRhamError::NegativeDegree(n));
    }
    let n = n as usize;
    let a = e0_power_e1(n);
    let one = v("1");
    let mut out = &tensor(&a, &one) + &tensor(&one, &a);
    for k in 0..n {
        out = &out - &tensor(&e0_power_e1(k), &e0_power_e1(n - k - 1));
    }
    Ok(out)
}

/// `w = λ + x·e₁`, read off syntactically: every non-constant monomial must
/// end in `e₁`.
pub fn wdr_membership(w: &T) -> Option<(Rational, T)> {
    if w.alphabet() != TensorAlphabet::V {
        return None;
    }
    let mut quotient = T::zero(TensorAlphabet::V);
    for (m, c) in w.terms() {
        if m.is_unit() {
            continue;
        }
        if m.letters().last() != Some(&1) {
            return None;
        }
        let (head, _) = m.split_at(m.degree() - 1);
        quotient = &quotient + &T::term(head, c.clone());
    }
    Some((w.constant_term(), quotient))
}

/// `Δ^{W,DR}` on any element of `W^DR`, as `λ + Δ_{O^DR_mat}(x)`.
pub fn delta_wdr_element(w: &T) -> Result<T, DeRhamError> {
    let (c, x) = wdr_membership(w).ok_or_else(|| DeRhamError::NotInW(w.to_string()))?;
    Ok(&T::constant(TensorAlphabet::VSq, c) + &delta_odr(&x)?)
}

fn split_monomial(m: &TensorMonomial) -> (TensorMonomial, TensorMonomial) {
    let k = m.letters().iter().take_while(|&&l| l < 2).count();
    let (a, b) = m.split_at(k);
    (
        a.relabel(TensorAlphabet::V, |l| l).expect("first factor"),
        b.relabel(TensorAlphabet::V, |l| l - 2).expect("second factor"),
    )
}

/// `x = Σ_m a_m ⊗ m`, keyed by the second-factor monomial.
pub fn group_by_right(x: &T) -> BTreeMap<TensorMonomial, T> {
    let mut out: BTreeMap<TensorMonomial, T> = BTreeMap::new();
    for (m, c) in x.terms() {
        let (a, b) = split_monomial(m);
        let slot = out.entry(b).or_insert_with(|| T::zero(TensorAlphabet::V));
        *slot = &*slot + &T::term(a, c.clone());
    }
    out
}

/// `x = Σ_m m ⊗ b_m`, keyed by the first-factor monomial.
pub fn group_by_left(x: &T) -> BTreeMap<TensorMonomial, T> {
    let mut out: BTreeMap<TensorMonomial, T> = BTreeMap::new();
    for (m, c) in x.terms() {
        let (a, b) = split_monomial(m);
        let slot = out.entry(a).or_insert_with(|| T::zero(TensorAlphabet::V));
        *slot = &*slot + &T::term(b, c.clone());
    }
    out
}

/// `(Δ⊗id)Δ(w) − (id⊗Δ)Δ(w)` in `V^⊗3`, for `w ∈ W^DR`.
pub fn coassociativity_defect(w: &T) -> Result<T, DeRhamError> {
    let d = delta_wdr_element(w)?;
    let mut lhs = T::zero(TensorAlphabet::VCube);
    for (m, a) in group_by_right(&d) {
        let da = embed(&delta_wdr_element(&a)?, TensorAlphabet::VCube, 0);
        lhs = &lhs + &(&da * &embed(&T::from_monomial(m), TensorAlphabet::VCube, 4));
    }
    let mut rhs = T::zero(TensorAlphabet::VCube);
    for (m, b) in group_by_left(&d) {
        let db = embed(&delta_wdr_element(&b)?, TensorAlphabet::VCube, 2);
        rhs = &rhs + &(&embed(&T::from_monomial(m), TensorAlphabet::VCube, 0) * &db);
    }
    Ok(&lhs - &rhs)
}

fn compare_entries(
    label: &str,
    betti: &Matrix<crate::algebra_core::GroupAlgebraElement>,
    derham: &Matrix<T>,
    degree: usize,
    truncation: usize,
    failures: &mut Vec<String>,
) {
    for (i, j, entry) in betti.indexed() {
        match gr_component(entry, degree, truncation) {
            Ok(g) if &g == derham.get(i, j) => {}
            Ok(g) => failures.push(format!(
                "{} entry ({},{}): gr{} = {} but expected {}",
                label,
                i,
                j,
                degree,
                g,
                derham.get(i, j)
            )),
            Err(err) => failures.push(format!("{} entry ({},{}): {}", label, i, j, err)),
        }
    }
}

/// `gr₀(rurow) = rrow`, `gr₁(rucol) = rcol` and `gr₁(rρ̲(Xᵢ−1)) = rρ(eᵢ)`,
/// entrywise through Magnus truncation `n`.
pub fn gr_compare_betti(n: usize) -> CheckOutcome {
    if n < 2 {
        return CheckOutcome::fail(format!("truncation must be at least 2, got {}", n));
    }
    let mut failures = Vec::new();
    compare_entries("rurow", &rurow(), &rrow(), 0, n, &mut failures);
    compare_entries("rucol", &rucol(), &rcol(), 1, n, &mut failures);
    for (i, (b, d)) in [("X0 - 1", "e0"), ("X1 - 1", "e1")].iter().enumerate() {
        match (rurho(&betti_matrix::f2(b)), rrho(&v(d))) {
            (Ok(bm), Ok(dm)) => compare_entries(&format!("rurho(X{} - 1)", i), &bm, &dm, 1, n, &mut failures),
            (Err(err), _) => failures.push(err.to_string()),
            (_, Err(err)) => failures.push(err.to_string()),
        }
    }
    CheckOutcome::from_failures(failures)
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| {
        acc * BigInt::from(n - i) / BigInt::from(i + 1)
    })
}

/// `(X₀−1)ⁿ(X₁−1) = Σₖ C(n,k)(−1)^{n−k} X₀ᵏ(X₁−1)`, an element of `W^B`
/// whose class in `grₙ₊₁` is `e₀ⁿe₁`, as a combination of generators.
pub fn graded_generator_lift(n: usize) -> Vec<(WbGenerator, Rational)> {
    (0..=n)
        .map(|k| {
            let sign = if (n - k).is_multiple_of(2) { 1 } else { -1 };
            (
                WbGenerator::X0Power(k as i64),
                Rational::from_integer(binomial(n, k) * sign),
            )
        })
        .collect()
}

/// The degree-`(n+1)` Magnus component of `Δ^{W,B}((X₀−1)ⁿ(X₁−1))`.
pub fn gr_delta_wb(n: usize, truncation: usize) -> Result<T, DeRhamError> {
    let mut delta = betti_matrix::f2sq("0");
    for (g, c) in graded_generator_lift(n) {
        delta = &delta + &delta_wb_generator(g).scaled(&c);
    }
    let series = magnus(&delta, truncation).map_err(|e| AlgebraError::Dimension(e.to_string()))?;
    Ok(series.component(n + 1))
}

/// The degree-`(n+1)` Magnus component of `Δ^{W,B}(X₀ⁿ(X₁−1))` itself.
pub fn literal_gr_delta_wb(n: usize, truncation: usize) -> Result<T, DeRhamError> {
    let delta = delta_wb_generator(WbGenerator::X0Power(n as i64));
    let series = magnus(&delta, truncation).map_err(|e| AlgebraError::Dimension(e.to_string()))?;
    Ok(series.component(n + 1))
}

/// `gr(Δ^{W,B}) = Δ^{W,DR}` on the graded generators `e₀ⁿe₁`, `0 ≤ n ≤ N−1`,
/// realised in `W^B` by `(X₀−1)ⁿ(X₁−1)`; plus `gr₀(Δ^{W,B}(X₁⁻¹)) = 1`.
pub fn gr_delta_compare(n: usize) -> CheckOutcome {
    if n < 2 {
        return CheckOutcome::fail(format!("truncation must be at least 2, got {}", n));
    }
    let mut failures = Vec::new();
    for k in 0..n {
        match (gr_delta_wb(k, n), delta_wdr(k as i64)) {
            (Ok(b), Ok(d)) if b == d => {}
            (Ok(b), Ok(d)) => failures.push(format!("n = {}: gr gives {} but the closed form is {}", k, b, d)),
            (Err(err), _) | (_, Err(err)) => failures.push(err.to_string()),
        }
    }
    let inv = delta_wb_generator(WbGenerator::InvX1);
    match magnus(&inv, n) {
        Ok(s) if s.component(0) == vsq("1") => {}
        Ok(s) => failures.push(format!("gr0 of Delta(X1^-1) is {}", s.component(0))),
        Err(err) => failures.push(err.to_string()),
    }
    CheckOutcome::from_failures(failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bfs_framework::{check_factorization, grading_compliance};

    #[test]
    fn rrho_generators() {
        let e0 = Matrix::from_rows(vec![
            vec![vsq("e0"), vsq("0"), vsq("0")],
            vec![vsq("0"), vsq("-e1 + f0"), vsq("(e0 + e1) - f0")],
            vec![vsq("0"), vsq("-e1"), vsq("e0 + e1")],
        ])
        .unwrap();
        let e1 = Matrix::from_rows(vec![
            vec![vsq("e1"), vsq("-e1"), vsq("0")],
            vec![vsq("-f1"), vsq("f1"), vsq("0")],
            vec![vsq("0"), vsq("0"), vsq("0")],
        ])
        .unwrap();
        assert_eq!(rrho(&v("e0")).unwrap(), e0);
        assert_eq!(rrho(&v("e1")).unwrap(), e1);
    }

    #[test]
    fn object_is_graded_and_factorizes() {
        assert!(check_factorization(derham_object()).passed);
        assert!(grading_compliance(derham_object()).passed);
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_odr(&v("1")).unwrap(), vsq("e1 + f1"));
        assert_eq!(delta_odr(&v("e0")).unwrap(), vsq("e0 e1 + f0 f1 - e1 f1"));
        assert_eq!(
            delta_odr(&v("e0^2")).unwrap(),
            vsq("e0^2 e1 + f0^2 f1 - e1 f0 f1 - e0 e1 f1")
        );
        assert!(delta_wdr(-1).is_err());
    }

    #[test]
    fn two_paths_agree() {
        for s in ["e0 e1 e0", "e1^3 - 2 e0", "e0^2 e1 e0 e1"] {
            assert_eq!(rrho(&v(s)).unwrap(), rrho_composite(&v(s)).unwrap());
        }
    }

    #[test]
    fn gr_comparisons_pass() {
        assert!(gr_compare_betti(4).passed);
        assert!(gr_delta_compare(4).passed);
    }

    #[test]
    fn literal_generator_reading_differs_from_one_on() {
        assert_eq!(literal_gr_delta_wb(0, 4).unwrap(), delta_wdr(0).unwrap());
        assert_ne!(literal_gr_delta_wb(1, 4).unwrap(), delta_wdr(1).unwrap());
    }

    #[test]
    fn coassociative_on_generators() {
        for n in 0..=3 {
            assert!(coassociativity_defect(&e0_power_e1(n)).unwrap().is_zero());
        }
    }
}
