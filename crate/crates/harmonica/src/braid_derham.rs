//! The enveloping algebra `U(p₅)` as the twisted product `U(f₃) ⊗ U(f₂)`:
//! a basis element `a ⊗ n` stands for `a·ℓ(n)`, with `a` a monomial in
//! `t₁₅, t₂₅, t₃₅` and `n` a monomial in `e₀ = t₂₃`, `e₁ = t₁₂`. Moving a
//! base letter past a kernel letter uses `eᵢ·t = t·eᵢ + δ_{eᵢ}(t)`.
//!
//! Also: the projections `U(pr_j)`, the matrices `ϖ` and `rϖ`, the bimodule
//! `M^DR` in coordinates, and its comparison with `gr(M^B)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num::One;
use rand::Rng;
use thiserror::Error;

use crate::algebra_core::expr::{parse_tensor, parse_with, ExprContext, ParseError};
use crate::algebra_core::random;
use crate::algebra_core::{
    format_terms, impl_ring_ops, int, AlgebraError, Combination, GroupAlphabet, GroupWord, Matrix, Rational, Ring,
    TensorAlphabet, TensorElement, TensorMonomial, UnitRing,
};
use crate::bfs_framework::CheckOutcome;
use crate::braid_betti::{
    self, fox_decompose, mb_filtration_degree, mb_left_action, p5_magnus, theta, K4Generator, MBElement, P5Element,
    P5Word, Projection,
};
use crate::derham_matrix::rrho;
use crate::magnus_gr::{gr_component, graded_lift, magnus_word, FiltrationDegree};

type T = TensorElement;

const LIE: TensorAlphabet = TensorAlphabet::F3Lie;
const V: TensorAlphabet = TensorAlphabet::V;
const VSQ: TensorAlphabet = TensorAlphabet::VSq;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0} is not in the kernel of U(pr5)")]
    NotInKernel(String),
    #[error("expected an element of {expected}, got one of {found}")]
    WrongAlgebra {
        expected: TensorAlphabet,
        found: TensorAlphabet,
    },
    #[error("coordinates must be homogeneous of one degree: {0}")]
    NotHomogeneous(String),
    #[error("degree {degree} does not fit under truncation {truncation}")]
    Truncation { degree: usize, truncation: usize },
    #[error("{0}")]
    Betti(String),
}

fn lie(s: &str) -> T {
    parse_tensor(LIE, s).expect("well-formed constant")
}

fn v(s: &str) -> T {
    parse_tensor(V, s).expect("well-formed constant")
}

/// The expected derivations, `δ[i][j] = δ_{eᵢ}(t_{j5})`.
pub fn expected_derivations() -> [[T; 3]; 2] {
    [
        [lie("0"), lie("t25 t35 - t35 t25"), lie("t35 t25 - t25 t35")],
        [lie("t15 t25 - t25 t15"), lie("t25 t15 - t15 t25"), lie("0")],
    ]
}

/// `δ_{eᵢ}(t_{j5})` read off from `Θ`: the degree-2 Magnus component of
/// `Θ_{X_i}(x_{j5})`.
pub fn derivations_from_theta() -> [[T; 3]; 2] {
    let t = theta();
    std::array::from_fn(|i| {
        let h = GroupWord::generator(GroupAlphabet::F2, i as u8).expect("X0, X1");
        let imgs = t.images(&h);
        std::array::from_fn(|j| magnus_word(&imgs[j], 2).homogeneous_component(2))
    })
}

/// `δ_{e₀}, δ_{e₁}` on the kernel letters, derived from `Θ` and compared
/// with the expected brackets when first used.
#[derive(Clone, Debug)]
pub struct DerivationTable {
    images: [[T; 3]; 2],
}

impl DerivationTable {
    pub fn derive() -> Result<Self, String> {
        let derived = derivations_from_theta();
        let expected = expected_derivations();
        for i in 0..2 {
            for j in 0..3 {
                if derived[i][j] != expected[i][j] {
                    return Err(format!(
                        "delta_e{}(t{}5) is {} from Theta but {} is expected",
                        i,
                        j + 1,
                        derived[i][j],
                        expected[i][j]
                    ));
                }
            }
        }
        Ok(DerivationTable { images: derived })
    }

    pub fn image(&self, i: u8, j: u8) -> &T {
        &self.images[i as usize][j as usize]
    }

    /// `δ_{eᵢ}` extended to `U(f₃)` by the Leibniz rule.
    pub fn apply(&self, i: u8, a: &T) -> T {
        let mut out = T::zero(LIE);
        for (m, c) in a.terms() {
            let letters = m.letters();
            for (pos, &l) in letters.iter().enumerate() {
                let head = T::from_monomial(TensorMonomial::new(LIE, letters[..pos].to_vec()).expect("t letters"));
                let tail = T::from_monomial(TensorMonomial::new(LIE, letters[pos + 1..].to_vec()).expect("t letters"));
                out = &out + &(&(&head * self.image(i, l)) * &tail).scaled(c);
            }
        }
        out
    }
}

pub fn derivations() -> &'static DerivationTable {
    static TABLE: OnceLock<DerivationTable> = OnceLock::new();
    TABLE.get_or_init(|| match DerivationTable::derive() {
        Ok(t) => t,
        Err(diagnostic) => panic!("derivation table mismatch: {}", diagnostic),
    })
}

pub fn check_derivation_table() -> CheckOutcome {
    match DerivationTable::derive() {
        Ok(_) => CheckOutcome::pass(),
        Err(d) => CheckOutcome::fail(d),
    }
}

/// A basis element `a ⊗ n` of `U(p₅)`.
pub type UP5Key = (TensorMonomial, TensorMonomial);

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UP5Element {
    terms: Combination<UP5Key>,
}

fn unit_pair() -> UP5Key {
    (TensorMonomial::unit(LIE), TensorMonomial::unit(V))
}

impl UP5Element {
    pub fn zero() -> Self {
        UP5Element::default()
    }

    pub fn one() -> Self {
        UP5Element::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        UP5Element {
            terms: Combination::singleton(unit_pair(), c),
        }
    }

    pub fn from_parts(a: TensorMonomial, n: TensorMonomial) -> Result<Self, LieError> {
        if a.alphabet() != LIE {
            return Err(LieError::WrongAlgebra {
                expected: LIE,
                found: a.alphabet(),
            });
        }
        if n.alphabet() != V {
            return Err(LieError::WrongAlgebra {
                expected: V,
                found: n.alphabet(),
            });
        }
        Ok(UP5Element {
            terms: Combination::singleton((a, n), Rational::one()),
        })
    }

    pub fn from_terms(terms: Combination<UP5Key>) -> Self {
        UP5Element { terms }
    }

    /// `a ⊗ 1` for `a ∈ U(f₃)`.
    pub fn from_kernel(a: &T) -> Self {
        UP5Element {
            terms: a
                .terms()
                .map(|(m, c)| ((m.clone(), TensorMonomial::unit(V)), c.clone()))
                .collect(),
        }
    }

    /// `t_{i5}` for `i ∈ {1, 2, 3}`.
    pub fn t_i5(i: usize) -> Self {
        assert!((1..=3).contains(&i), "t_i5 needs i in 1..=3");
        UP5Element::from_kernel(&T::letter(LIE, (i - 1) as u8))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&UP5Key, &Rational)> {
        self.terms.iter()
    }

    pub fn combination(&self) -> &Combination<UP5Key> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn homogeneous_component(&self, d: usize) -> Self {
        UP5Element {
            terms: self.terms.filter(|(a, n)| a.degree() + n.degree() == d),
        }
    }

    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.terms.keys().all(|(a, n)| a.degree() + n.degree() == d)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|(a, n)| a.degree() + n.degree()).min()
    }

    /// The antipode: `S(a ⊗ n) = S(n)·S(a)`.
    pub fn antipode(&self) -> Self {
        let mut out = UP5Element::zero();
        for ((a, n), c) in self.terms.iter() {
            let sa = sign(a.degree());
            let sn = sign(n.degree());
            let left = UP5Element::from_parts(TensorMonomial::unit(LIE), n.reversed()).expect("V monomial");
            let right = UP5Element::from_parts(a.reversed(), TensorMonomial::unit(V)).expect("t monomial");
            out = &out + &(&left * &right).scaled(&(c * sa * sn));
        }
        out
    }
}

fn sign(d: usize) -> Rational {
    if d.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `eᵢ·x` for a base letter `eᵢ`.
fn base_letter_times(i: u8, x: &Combination<UP5Key>) -> Combination<UP5Key> {
    let d = derivations();
    let letter = TensorMonomial::new(V, vec![i]).expect("e letter");
    let mut out = Combination::new();
    for ((a, n), c) in x.iter() {
        out.add_term((a.clone(), letter.checked_mul(n).expect("V monomials")), c.clone());
        let moved = d.apply(i, &T::from_monomial(a.clone()));
        for (m, e) in moved.terms() {
            out.add_term((m.clone(), n.clone()), e * c);
        }
    }
    out
}

impl Ring for UP5Element {
    fn zero_like(&self) -> Self {
        UP5Element::zero()
    }
    fn one_like(&self) -> Self {
        UP5Element::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        UP5Element {
            terms: self.terms.plus(&other.terms),
        }
    }
    fn negated(&self) -> Self {
        UP5Element {
            terms: self.terms.negated(),
        }
    }
    fn times(&self, other: &Self) -> Self {
        let mut by_base: BTreeMap<&TensorMonomial, Vec<(&TensorMonomial, &Rational)>> = BTreeMap::new();
        for ((a, n), c) in self.terms.iter() {
            by_base.entry(n).or_default().push((a, c));
        }
        let mut out = Combination::new();
        for (n, heads) in by_base {
            let mut moved = other.terms.clone();
            for &i in n.letters().iter().rev() {
                moved = base_letter_times(i, &moved);
            }
            for (a, c) in heads {
                for ((b, m), d) in moved.iter() {
                    out.add_term((a.checked_mul(b).expect("t monomials"), m.clone()), c * d);
                }
            }
        }
        UP5Element { terms: out }
    }
    fn scaled(&self, c: &Rational) -> Self {
        UP5Element {
            terms: self.terms.scaled(c),
        }
    }
}

impl UnitRing for UP5Element {
    fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (k, c) = self.terms.iter().next()?;
        (*k == unit_pair()).then(|| UP5Element::constant(c.recip()))
    }
}

impl_ring_ops!(UP5Element);

impl fmt::Display for UP5Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format_terms(self.terms.iter(), |(a, n)| match (a.is_unit(), n.is_unit()) {
            (true, true) => String::new(),
            (false, true) => a.to_string(),
            (true, false) => n.to_string(),
            (false, false) => format!("{} {}", a, n),
        });
        f.write_str(&s)
    }
}

/// `t_{ij}` in the normal form: `t₁₂ = e₁`, `t₂₃ = e₀`, and the rest solved
/// from `t₁₅ = −t₁₂ − t₁₃ − t₁₄`, `t₂₅ = −t₁₂ − t₂₃ − t₂₄`,
/// `t₃₅ = −t₁₃ − t₂₃ − t₃₄` and `z₄ = 0`.
pub fn infinitesimal_generator(g: K4Generator) -> UP5Element {
    let e0 = ell(&v("e0")).expect("V element");
    let e1 = ell(&v("e1")).expect("V element");
    let [t15, t25, t35] = [1, 2, 3].map(UP5Element::t_i5);
    match g {
        K4Generator::X12 => e1,
        K4Generator::X23 => e0,
        K4Generator::X34 => &(&t15 + &t25) + &e1,
        K4Generator::X13 => -(&(&(&(&t35 + &e0) + &t15) + &t25) + &e1),
        K4Generator::X14 => &(&t35 + &e0) + &t25,
        K4Generator::X24 => -(&(&t25 + &e1) + &e0),
    }
}

fn t_name(g: K4Generator) -> String {
    g.name().replacen('x', "t", 1)
}

/// `[t_{ij}, t_{ik} + t_{jk}]`, `[t_{ij}, t_{kl}]`, `z₄` and the three
/// definitions of `t_{i5}`, each evaluated in the twisted product.
pub fn infinitesimal_relators() -> Vec<(String, UP5Element)> {
    use K4Generator as K;
    let t = |i, j| infinitesimal_generator(K::from_strands(i, j).expect("strands in 1..=4"));
    let bracket = |x: &UP5Element, y: &UP5Element| &(x * y) - &(y * x);
    let mut out = Vec::new();
    for (i, j, k) in [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)] {
        out.push((
            format!("[t{i}{j}, t{i}{k} + t{j}{k}]"),
            bracket(&t(i, j), &(&t(i, k) + &t(j, k))),
        ));
    }
    for ((i, j), (k, l)) in [((1, 2), (3, 4)), ((1, 3), (2, 4)), ((1, 4), (2, 3))] {
        out.push((format!("[t{i}{j}, t{k}{l}]"), bracket(&t(i, j), &t(k, l))));
    }
    let z4 = K::ALL
        .iter()
        .fold(UP5Element::zero(), |acc, g| &acc + &infinitesimal_generator(*g));
    out.push(("z4".into(), z4));
    let defs = [
        (1usize, [K::X12, K::X13, K::X14]),
        (2, [K::X12, K::X23, K::X24]),
        (3, [K::X13, K::X23, K::X34]),
    ];
    for (i, gens) in defs {
        let sum = gens
            .iter()
            .fold(UP5Element::t_i5(i), |acc, g| &acc + &infinitesimal_generator(*g));
        let names: Vec<String> = gens.iter().map(|g| t_name(*g)).collect();
        out.push((format!("t{i}5 + {}", names.join(" + ")), sum));
    }
    out
}

pub fn check_infinitesimal_relators() -> CheckOutcome {
    let failures = infinitesimal_relators()
        .into_iter()
        .filter(|(_, x)| !x.is_zero())
        .map(|(name, x)| format!("{} = {}", name, x))
        .collect();
    CheckOutcome::from_failures(failures)
}

/// Parses `U(p₅)` expressions over `t12 … t34`, `t15 t25 t35`, `e0 e1`.
pub struct UP5Context;

impl ExprContext for UP5Context {
    type Elem = UP5Element;
    fn generator(&self, name: &str) -> Option<UP5Element> {
        if let Some(g) = K4Generator::ALL.iter().find(|g| t_name(**g) == name) {
            return Some(infinitesimal_generator(*g));
        }
        if let Some(i) = LIE.index_of(name) {
            return Some(UP5Element::t_i5(i as usize + 1));
        }
        let e = V.index_of(name)?;
        ell(&T::letter(V, e)).ok()
    }
    fn scalar(&self, c: &Rational) -> UP5Element {
        UP5Element::constant(c.clone())
    }
    fn inverse(&self, e: &UP5Element) -> Option<UP5Element> {
        e.unit_inverse()
    }
}

pub fn parse_up5(text: &str) -> Result<UP5Element, ParseError> {
    parse_with(&UP5Context, text)
}

fn require(x: &T, expected: TensorAlphabet) -> Result<(), LieError> {
    if x.alphabet() != expected {
        return Err(LieError::WrongAlgebra {
            expected,
            found: x.alphabet(),
        });
    }
    Ok(())
}

/// `U(ℓ) : V^DR → U(p₅)`, `n ↦ 1 ⊗ n`.
pub fn ell(x: &T) -> Result<UP5Element, LieError> {
    require(x, V)?;
    Ok(UP5Element {
        terms: x
            .terms()
            .map(|(n, c)| ((TensorMonomial::unit(LIE), n.clone()), c.clone()))
            .collect(),
    })
}

/// Images of `t₁₂, t₁₃, t₁₄, t₂₃, t₂₄, t₃₄` in `V^DR` under `pr₁, pr₂, pr₅`.
pub fn lie_projection_table(which: Projection) -> [T; 6] {
    let z = v("0");
    let e0 = v("e0");
    let e1 = v("e1");
    let einf = v("-e0 - e1");
    match which {
        Projection::Pr1 => [z.clone(), z.clone(), z, e0, einf, e1],
        Projection::Pr2 => [z.clone(), einf, e0, z.clone(), z, e1],
        Projection::Pr5 => [e1.clone(), einf.clone(), e0.clone(), e0, einf, e1],
        Projection::Pr12 => panic!("pr12 is assembled from pr1 and pr2"),
    }
}

struct LieProjection {
    kernel: [T; 3],
    base: [T; 2],
}

fn build_lie_projection(which: Projection) -> LieProjection {
    if which == Projection::Pr12 {
        let a = build_lie_projection(Projection::Pr1);
        let b = build_lie_projection(Projection::Pr2);
        let emb = |x: &T, s: u8| x.map_monomials(VSQ, |m| m.relabel(VSQ, |l| l + s).expect("VSq letters"));
        return LieProjection {
            kernel: std::array::from_fn(|i| &emb(&a.kernel[i], 0) + &emb(&b.kernel[i], 2)),
            base: std::array::from_fn(|i| &emb(&a.base[i], 0) + &emb(&b.base[i], 2)),
        };
    }
    let t = lie_projection_table(which);
    let neg_sum = |a: usize, b: usize, c: usize| -(&(&t[a] + &t[b]) + &t[c]);
    LieProjection {
        kernel: [neg_sum(0, 1, 2), neg_sum(0, 3, 4), neg_sum(1, 3, 5)],
        base: [t[3].clone(), t[0].clone()],
    }
}

struct LieProjections {
    pr1: LieProjection,
    pr2: LieProjection,
    pr5: LieProjection,
    pr12: LieProjection,
}

fn lie_projections() -> &'static LieProjections {
    static TABLES: OnceLock<LieProjections> = OnceLock::new();
    TABLES.get_or_init(|| LieProjections {
        pr1: build_lie_projection(Projection::Pr1),
        pr2: build_lie_projection(Projection::Pr2),
        pr5: build_lie_projection(Projection::Pr5),
        pr12: build_lie_projection(Projection::Pr12),
    })
}

fn product_of_images(letters: &[u8], images: &[T], one: &T) -> T {
    letters.iter().fold(one.clone(), |acc, &l| &acc * &images[l as usize])
}

/// `U(pr_j)` on `U(p₅)`, through the images of `t_{i5}` and of `ℓ(eᵢ)`.
pub fn u_project(which: Projection, a: &UP5Element) -> T {
    let p = lie_projections();
    let table = match which {
        Projection::Pr1 => &p.pr1,
        Projection::Pr2 => &p.pr2,
        Projection::Pr5 => &p.pr5,
        Projection::Pr12 => &p.pr12,
    };
    let target = if which == Projection::Pr12 { VSQ } else { V };
    let one = T::one(target);
    let mut out = T::zero(target);
    for ((k, n), c) in a.terms() {
        let x =
            &product_of_images(k.letters(), &table.kernel, &one) * &product_of_images(n.letters(), &table.base, &one);
        out = &out + &x.scaled(c);
    }
    out
}

/// `pr₅∘ℓ = id`, `pr₅(t_{i5}) = 0`, and each projection sends
/// `δ_{eᵢ}(t)` to the bracket `[pr(eᵢ), pr(t)]`.
pub fn check_lie_projections() -> CheckOutcome {
    let mut failures = Vec::new();
    for s in ["e0", "e1"] {
        let got = u_project(Projection::Pr5, &ell(&v(s)).expect("V"));
        if got != v(s) {
            failures.push(format!("pr5(l({})) = {}", s, got));
        }
    }
    for i in 1..=3 {
        let got = u_project(Projection::Pr5, &UP5Element::t_i5(i));
        if !got.is_zero() {
            failures.push(format!("pr5(t{}5) = {}", i, got));
        }
    }
    let d = derivations();
    for which in [Projection::Pr1, Projection::Pr2, Projection::Pr5, Projection::Pr12] {
        for i in 0..2u8 {
            let e = u_project(which, &ell(&T::letter(V, i)).expect("V"));
            for j in 0..3u8 {
                let t = u_project(which, &UP5Element::t_i5(j as usize + 1));
                let lhs = u_project(which, &UP5Element::from_kernel(d.image(i, j)));
                let rhs = &(&e * &t) - &(&t * &e);
                if lhs != rhs {
                    failures.push(format!(
                        "{}(delta_e{}(t{}5)) = {}, expected {}",
                        which,
                        i,
                        j + 1,
                        lhs,
                        rhs
                    ));
                }
            }
        }
    }
    CheckOutcome::from_failures(failures)
}

fn kernel_check(k: &UP5Element) -> Result<(), LieError> {
    if k.terms.keys().any(|(a, _)| a.is_unit()) {
        return Err(LieError::NotInKernel(k.to_string()));
    }
    Ok(())
}

/// `k = Σ t_{i5}·qᵢ` for `k ∈ ker U(pr₅)`, by splitting off the first
/// kernel letter of each basis element.
pub fn lie_decompose(k: &UP5Element) -> Result<[UP5Element; 3], LieError> {
    kernel_check(k)?;
    let mut q: [Combination<UP5Key>; 3] = Default::default();
    for ((a, n), c) in k.terms() {
        let (first, rest) = a.split_at(1);
        q[first.letters()[0] as usize].add_term((rest, n.clone()), c.clone());
    }
    Ok(q.map(|terms| UP5Element { terms }))
}

pub fn lie_recompose(q: &[UP5Element; 3]) -> UP5Element {
    (0..3).fold(UP5Element::zero(), |acc, i| &acc + &(&UP5Element::t_i5(i + 1) * &q[i]))
}

/// `a·n` rewritten as `Σ n′·a′`, base letters first, using
/// `a·eᵢ = eᵢ·a − δ_{eᵢ}(a)`.
fn base_first(a: &T, n: &[u8]) -> Combination<(TensorMonomial, TensorMonomial)> {
    let Some((&i, rest)) = n.split_first() else {
        return a
            .terms()
            .map(|(m, c)| ((TensorMonomial::unit(V), m.clone()), c.clone()))
            .collect();
    };
    let letter = TensorMonomial::new(V, vec![i]).expect("e letter");
    let mut out: Combination<(TensorMonomial, TensorMonomial)> = base_first(a, rest)
        .into_iter()
        .map(|((b, m), c)| ((letter.checked_mul(&b).expect("V monomials"), m), c))
        .collect();
    let moved = derivations().apply(i, a);
    if !moved.is_zero() {
        for (key, c) in base_first(&moved, rest) {
            out.add_term(key, -c);
        }
    }
    out
}

/// `k = Σ a_j·t_{j5}`: each basis element is rewritten base-first as
/// `Σ n′·a′` and the last kernel letter of `a′` split off.
pub fn lie_right_decompose(k: &UP5Element) -> Result<[UP5Element; 3], LieError> {
    kernel_check(k)?;
    let mut a: [UP5Element; 3] = Default::default();
    for ((m, n), c) in k.terms() {
        for ((nb, mk), d) in base_first(&T::from_monomial(m.clone()), n.letters()) {
            if mk.is_unit() {
                return Err(LieError::NotInKernel(k.to_string()));
            }
            let (head, last) = mk.split_at(mk.degree() - 1);
            let left = UP5Element::from_parts(TensorMonomial::unit(LIE), nb).expect("V monomial");
            let right = UP5Element::from_parts(head, TensorMonomial::unit(V)).expect("t monomial");
            let j = last.letters()[0] as usize;
            a[j] = &a[j] + &(&left * &right).scaled(&(c * &d));
        }
    }
    Ok(a)
}

pub fn lie_right_recompose(a: &[UP5Element; 3]) -> UP5Element {
    (0..3).fold(UP5Element::zero(), |acc, j| &acc + &(&a[j] * &UP5Element::t_i5(j + 1)))
}

/// `rϖ(p)`: column `j` decomposes `p·t_{j5}`.
pub fn lie_rvarpi(p: &UP5Element) -> Matrix<UP5Element> {
    let cols: Vec<[UP5Element; 3]> = (1..=3)
        .map(|j| lie_decompose(&(p * &UP5Element::t_i5(j))).expect("p t_j5 lies in the kernel"))
        .collect();
    Matrix::from_fn(3, 3, |i, j| cols[j][i].clone())
}

/// `ϖ(p)`: row `i` right-decomposes `t_{i5}·p`.
pub fn lie_varpi(p: &UP5Element) -> Matrix<UP5Element> {
    let rows: Vec<[UP5Element; 3]> = (1..=3)
        .map(|i| lie_right_decompose(&(&UP5Element::t_i5(i) * p)).expect("t_i5 p lies in the kernel"))
        .collect();
    Matrix::from_fn(3, 3, |i, j| rows[i][j].clone())
}

/// `M₃(S) ∘ ᵗ(−) ∘ ϖ ∘ S`.
pub fn lie_rvarpi_from_varpi(p: &UP5Element) -> Matrix<UP5Element> {
    lie_varpi(&p.antipode()).transpose().map(|x| x.antipode())
}

/// `M₃(U(pr₁₂))(rϖ(U(ℓ)(x)))`, to be compared with `rρ(x)`.
pub fn lie_geometric_rrho(x: &T) -> Result<Matrix<T>, LieError> {
    Ok(lie_rvarpi(&ell(x)?).map(|e| u_project(Projection::Pr12, e)))
}

pub fn check_lie_geometric_rrho(x: &T) -> Result<CheckOutcome, LieError> {
    let geometric = lie_geometric_rrho(x)?;
    let explicit = rrho(x).map_err(|e| LieError::Betti(e.to_string()))?;
    let diff = geometric.differing_entries(&explicit);
    Ok(CheckOutcome::check(diff.is_empty(), || {
        let (i, j) = diff[0];
        format!(
            "x = {}: entry ({}, {}) is {} geometrically and {} explicitly",
            x,
            i,
            j,
            geometric.get(i, j),
            explicit.get(i, j)
        )
    }))
}

/// An element `Σ t_{i5} ⊗ aᵢ` of `M^DR`, stored as `(a₁, a₂, a₃)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MDRElement {
    coords: [T; 3],
}

impl MDRElement {
    pub fn new(coords: [T; 3]) -> Result<Self, LieError> {
        for a in &coords {
            require(a, VSQ)?;
        }
        Ok(MDRElement { coords })
    }

    /// The canonical generator `uᵢ`, `i ∈ {1, 2, 3}`.
    pub fn generator(i: usize) -> Self {
        MDRElement {
            coords: std::array::from_fn(|k| if k + 1 == i { T::one(VSQ) } else { T::zero(VSQ) }),
        }
    }

    pub fn coords(&self) -> &[T; 3] {
        &self.coords
    }

    pub fn as_column(&self) -> Matrix<T> {
        Matrix::column(self.coords.to_vec()).expect("3x1")
    }

    /// The common degree of the nonzero coordinates.
    pub fn degree(&self) -> Result<Option<usize>, LieError> {
        let mut degree = None;
        for a in self.coords.iter().filter(|a| !a.is_zero()) {
            let d = a.min_degree().expect("nonzero");
            if !a.is_homogeneous_of(d) || degree.is_some_and(|e| e != d) {
                return Err(LieError::NotHomogeneous(self.to_string()));
            }
            degree = Some(d);
        }
        Ok(degree)
    }

    /// `m·w` for `w ∈ V^DR ⊗ V^DR`.
    pub fn right_act(&self, w: &T) -> Result<Self, LieError> {
        require(w, VSQ)?;
        MDRElement::new(self.coords.clone().map(|a| &a * w))
    }
}

impl fmt::Display for MDRElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.coords[0], self.coords[1], self.coords[2])
    }
}

/// `m ↦ rρ(x)·m`.
pub fn mdr_left_action(x: &T, m: &MDRElement) -> Result<MDRElement, LieError> {
    let r = rrho(x).map_err(|e| LieError::Betti(e.to_string()))?;
    let out = r.checked_mul(&m.as_column())?;
    MDRElement::new([out.get(0, 0).clone(), out.get(1, 0).clone(), out.get(2, 0).clone()])
}

/// `M^DR` coordinates of `k ∈ ker U(pr₅)`: decompose, then apply `U(pr₁₂)`.
pub fn mdr_coordinates(k: &UP5Element) -> Result<MDRElement, LieError> {
    let q = lie_decompose(k)?;
    MDRElement::new(q.map(|x| u_project(Projection::Pr12, &x)))
}

/// A class of `gr_{d+1}(M^B)`, given by its coordinates in
/// `gr_d(V^B ⊗ V^B)^⊕3 ≅ (V^DR ⊗ V^DR)_d^⊕3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrMBClass {
    pub degree: usize,
    pub coords: [T; 3],
}

impl fmt::Display for GrMBClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[({}, {}, {})]_{}",
            self.coords[0], self.coords[1], self.coords[2], self.degree
        )
    }
}

/// The comparison `M^DR → gr(M^B)` along the top of the square: lift each
/// coordinate with `eᵢ ↦ Xᵢ − 1`, `fᵢ ↦ Yᵢ − 1`, check the filtration
/// degree of the resulting `M^B` element, and read back its graded
/// coordinates through truncation `N`.
pub fn mdr_to_gr_mb(m: &MDRElement, n: usize) -> Result<GrMBClass, LieError> {
    let d = m.degree()?.unwrap_or(0);
    if n < 2 || d + 1 > n {
        return Err(LieError::Truncation {
            degree: d + 1,
            truncation: n,
        });
    }
    let lifted =
        MBElement::new(m.coords.clone().map(|a| graded_lift(&a))).map_err(|e| LieError::Betti(e.to_string()))?;
    betti_class(&lifted, d, n)
}

/// The class of an `M^B` element in `gr_{d+1}` via Magnus components of its
/// coordinates; fails if the element sits lower in the filtration.
pub fn betti_class(b: &MBElement, d: usize, n: usize) -> Result<GrMBClass, LieError> {
    let deg = mb_filtration_degree(b, n);
    if !deg.at_least(d + 1) {
        return Err(LieError::Betti(format!(
            "{} has filtration degree {} below {}",
            b,
            deg,
            d + 1
        )));
    }
    let mut coords: [T; 3] = std::array::from_fn(|_| T::zero(VSQ));
    for (i, a) in b.coords().iter().enumerate() {
        if !a.is_zero() {
            coords[i] = gr_component(a, d, n).map_err(|e| LieError::Betti(e.to_string()))?;
        }
    }
    Ok(GrMBClass { degree: d + 1, coords })
}

/// `a ⊗ n ↦ ι(Π (x_{a_k 5} − 1))·σ(Π (X_{n_k} − 1))`.
pub fn graded_lift_p5(k: &UP5Element) -> P5Element {
    let xs: [P5Element; 3] = std::array::from_fn(|i| P5Element::x_i5_minus_one(i + 1));
    let sigmas: [P5Element; 2] = std::array::from_fn(|i| {
        let h = GroupWord::generator(GroupAlphabet::F2, i as u8).expect("X0, X1");
        &P5Element::from_word(P5Word::section(h).expect("F2 word")) - &P5Element::one()
    });
    let mut out = P5Element::zero();
    for ((a, n), c) in k.terms() {
        let mut prod = P5Element::one();
        for &l in a.letters() {
            prod = &prod * &xs[l as usize];
        }
        for &l in n.letters() {
            prod = &prod * &sigmas[l as usize];
        }
        out = &out + &prod.scaled(c);
    }
    out
}

/// The square along its bottom: `k ∈ ker U(pr₅)` homogeneous of degree
/// `d ≥ 1` gives `M^DR` coordinates by decomposition and `U(pr₁₂)`; its
/// graded lift to `ker(k pr₅)` gives `M^B` coordinates by Fox calculus and
/// `pr₁₂`. The graded class of the latter must match the former.
pub fn check_square_on_kernel(k: &UP5Element, n: usize) -> Result<CheckOutcome, LieError> {
    let d = k.min_degree().unwrap_or(1);
    if !k.is_homogeneous_of(d) || d == 0 {
        return Err(LieError::NotHomogeneous(k.to_string()));
    }
    let derham = mdr_coordinates(k)?;
    let lift = graded_lift_p5(k);
    let q = fox_decompose(&lift).map_err(|e| LieError::Betti(e.to_string()))?;
    let b = MBElement::new(q.map(|x| braid_betti::project(Projection::Pr12, &x)))
        .map_err(|e| LieError::Betti(e.to_string()))?;
    let class = betti_class(&b, d - 1, n)?;
    Ok(CheckOutcome::check(class.coords == derham.coords, || {
        format!("k = {}: de Rham {} but Betti {}", k, derham, class)
    }))
}

/// Left compatibility on a generator: `gr(rρ̲(Xᵢ − 1)·lift(m)) = rρ(eᵢ)·m`.
pub fn check_left_action_square(i: u8, m: &MDRElement, n: usize) -> Result<CheckOutcome, LieError> {
    let d = m.degree()?.unwrap_or(0);
    let e = T::letter(V, i);
    let derham = mdr_left_action(&e, m)?;
    let lifted =
        MBElement::new(m.coords.clone().map(|a| graded_lift(&a))).map_err(|x| LieError::Betti(x.to_string()))?;
    let acted = mb_left_action(&graded_lift(&e), &lifted).map_err(|x| LieError::Betti(x.to_string()))?;
    let class = betti_class(&acted, d + 1, n)?;
    Ok(CheckOutcome::check(class.coords == derham.coords, || {
        format!("e{} on {}: de Rham {} but Betti {}", i, m, derham, class)
    }))
}

/// Right compatibility: `gr(lift(m)·lift(w)) = m·w` for homogeneous `w`.
pub fn check_right_action_square(m: &MDRElement, w: &T, n: usize) -> Result<CheckOutcome, LieError> {
    let d = m.degree()?.unwrap_or(0);
    let dw = w.min_degree().unwrap_or(0);
    if !w.is_homogeneous_of(dw) {
        return Err(LieError::NotHomogeneous(w.to_string()));
    }
    let derham = m.right_act(w)?;
    let lw = graded_lift(w);
    let lifted =
        MBElement::new(m.coords.clone().map(|a| &graded_lift(&a) * &lw)).map_err(|x| LieError::Betti(x.to_string()))?;
    let class = betti_class(&lifted, d + dw, n)?;
    Ok(CheckOutcome::check(class.coords == derham.coords, || {
        format!("{} times {}: de Rham {} but Betti {}", m, w, derham, class)
    }))
}

/// The generator rule `uᵢ ↦ [x_{i5} − 1]₁ ⊗ 1` along both routes: the lifted
/// coordinate vector, and `t_{i5}` through its graded lift and Fox calculus.
pub fn check_generators_square(n: usize) -> Result<CheckOutcome, LieError> {
    let mut out = CheckOutcome::pass();
    for i in 1..=3 {
        let u = MDRElement::generator(i);
        let top = mdr_to_gr_mb(&u, n)?;
        out = out.and(CheckOutcome::check(top.coords == u.coords && top.degree == 1, || {
            format!("u{} maps to {}", i, top)
        }));
        out = out.and(check_square_on_kernel(&UP5Element::t_i5(i), n)?);
        let leading = UP5Element::from_terms(
            p5_magnus(&P5Element::x_i5_minus_one(i), n).filter(|(a, b)| a.degree() + b.degree() == 1),
        );
        out = out.and(CheckOutcome::check(leading == UP5Element::t_i5(i), || {
            format!("[x{}5 - 1]_1 = {}", i, leading)
        }));
    }
    Ok(out)
}

/// The degree-`d` part of the Magnus model of a `kP₅*` element.
pub fn leading_part(p: &P5Element, d: usize, n: usize) -> UP5Element {
    UP5Element::from_terms(p5_magnus(p, n).filter(|(a, b)| a.degree() + b.degree() == d))
}

/// `gr` consistency: for `p ∈ I^a`, `q ∈ I^b` with `a + b ≤ N`, the degree
/// `a + b` part of `pq` is the twisted product of the leading parts.
pub fn check_gr_product(p: &P5Element, q: &P5Element, n: usize) -> CheckOutcome {
    let (FiltrationDegree::Degree(a), FiltrationDegree::Degree(b)) = (
        braid_betti::p5_filtration_degree(p, n),
        braid_betti::p5_filtration_degree(q, n),
    ) else {
        return CheckOutcome::pass();
    };
    if a + b > n {
        return CheckOutcome::pass();
    }
    let lhs = leading_part(&(p * q), a + b, n);
    let rhs = &leading_part(p, a, n) * &leading_part(q, b, n);
    CheckOutcome::check(lhs == rhs, || {
        format!("gr_{}({} * {}) = {}, twisted product gives {}", a + b, p, q, lhs, rhs)
    })
}

pub fn random_monomial(rng: &mut impl Rng, kernel_degree: usize, base_degree: usize) -> UP5Key {
    (
        random::tensor_monomial(rng, LIE, kernel_degree),
        random::tensor_monomial(rng, V, base_degree),
    )
}

pub fn random_element(rng: &mut impl Rng, max_terms: usize, max_degree: usize) -> UP5Element {
    let n = rng.gen_range(1..=max_terms.max(1));
    let mut terms = Combination::new();
    for _ in 0..n {
        let d = rng.gen_range(0..=max_degree);
        let k = rng.gen_range(0..=d);
        terms.add_term(random_monomial(rng, k, d - k), int(random::coefficient(rng)));
    }
    UP5Element { terms }
}

/// A random kernel element, homogeneous of degree `d ≥ 1`.
pub fn random_homogeneous_kernel(rng: &mut impl Rng, max_terms: usize, d: usize) -> UP5Element {
    let n = rng.gen_range(1..=max_terms.max(1));
    let mut terms = Combination::new();
    for _ in 0..n {
        let k = rng.gen_range(1..=d.max(1));
        terms.add_term(random_monomial(rng, k, d - k), int(random::coefficient(rng)));
    }
    UP5Element { terms }
}

/// A random kernel element of mixed degrees at most `max_degree`.
pub fn random_kernel_element(rng: &mut impl Rng, max_terms: usize, max_degree: usize) -> UP5Element {
    let n = rng.gen_range(1..=max_terms.max(1));
    let mut terms = Combination::new();
    for _ in 0..n {
        let d = rng.gen_range(1..=max_degree.max(1));
        let k = rng.gen_range(1..=d);
        terms.add_term(random_monomial(rng, k, d - k), int(random::coefficient(rng)));
    }
    UP5Element { terms }
}
