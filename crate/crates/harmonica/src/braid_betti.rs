//! The group `P₅* = K₄/⟨ω₄⟩` in the normal form `ι(u)·σ(h)`, with
//! `u ∈ F₃ = ⟨x₁₅, x₂₅, x₃₅⟩`, `h ∈ F₂` and `σ(X₀) = x₂₃`, `σ(X₁) = x₁₂`.
//! Products follow `(u, h)(u′, h′) = (u·Θ_h(u′), hh′)`.
//!
//! On top of it: the projections `pr₁, pr₂, pr₅, pr₁₂` and the section `ℓ`,
//! Fox decompositions of `ker(k pr₅)`, the matrix morphisms `ϖ̲` and `rϖ̲`,
//! and the bimodule `M^B` written in the coordinates `(a₁, a₂, a₃)` of
//! `Σ (x_{i5} − 1) ⊗ aᵢ`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num::{One, Zero};
use rand::Rng;
use thiserror::Error;

use crate::algebra_core::expr::{parse_with, ExprContext, ParseError};
use crate::algebra_core::random;
use crate::algebra_core::{
    format_terms, impl_ring_ops, int, AlgebraError, Combination, GroupAlgebraElement, GroupAlphabet, GroupWord, Letter,
    Matrix, Rational, Ring, TensorMonomial, UnitRing,
};
use crate::betti_matrix::{rurho, twist_diagonal};
use crate::bfs_framework::CheckOutcome;
use crate::magnus_gr::{magnus_word, Filtered, FiltrationDegree};

type G = GroupAlgebraElement;

const F3: GroupAlphabet = GroupAlphabet::F3;
const F2: GroupAlphabet = GroupAlphabet::F2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0} is not in the kernel of k pr5")]
    NotInKernel(String),
    #[error("expected an element of {expected}, got one of {found}")]
    WrongAlgebra {
        expected: GroupAlphabet,
        found: GroupAlphabet,
    },
    #[error("no conjugator of length <= {bound} inverts Theta on {generator}")]
    ThetaInverse { generator: String, bound: usize },
}

fn w3(powers: &[(u8, i64)]) -> GroupWord {
    GroupWord::from_powers(F3, powers).expect("F3 generators")
}

fn w2(powers: &[(u8, i64)]) -> GroupWord {
    GroupWord::from_powers(F2, powers).expect("F2 generators")
}

/// Replaces generator `g` by `images[g]` and `g⁻¹` by its inverse.
fn substitute(w: &GroupWord, images: &[GroupWord]) -> GroupWord {
    let target = images[0].alphabet();
    let mut letters = Vec::new();
    for l in w.letters() {
        let img = &images[l.generator as usize];
        if l.exponent > 0 {
            letters.extend_from_slice(img.letters());
        } else {
            letters.extend(img.letters().iter().rev().map(|x| x.inverse()));
        }
    }
    GroupWord::from_letters(target, letters).expect("images share one alphabet")
}

fn generators3() -> [GroupWord; 3] {
    [w3(&[(0, 1)]), w3(&[(1, 1)]), w3(&[(2, 1)])]
}

pub fn theta_x0_images() -> [GroupWord; 3] {
    [
        w3(&[(0, 1)]),
        w3(&[(2, -1), (1, 1), (2, 1)]),
        w3(&[(2, -1), (1, -1), (2, 1), (1, 1), (2, 1)]),
    ]
}

pub fn theta_x1_images() -> [GroupWord; 3] {
    [
        w3(&[(1, -1), (0, 1), (1, 1)]),
        w3(&[(1, -1), (0, -1), (1, 1), (0, 1), (1, 1)]),
        w3(&[(2, 1)]),
    ]
}

/// Every reduced `F₃` word of length at most `max_len`.
fn words_up_to(max_len: usize) -> Vec<GroupWord> {
    let letters: Vec<Letter> = (0..3u8).flat_map(|g| [Letter::new(g, 1), Letter::new(g, -1)]).collect();
    let mut layer = vec![Vec::<Letter>::new()];
    let mut out = vec![GroupWord::identity(F3)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.last().is_some_and(|p| *p == l.inverse()) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                out.push(GroupWord::from_letters(F3, v.iter().copied()).expect("F3 letters"));
                next.push(v);
            }
        }
        layer = next;
    }
    out
}

/// Inverts an automorphism of `F₃` sending each generator to a conjugate of
/// a generator: each `x_g` is matched against candidates `v⁻¹·x_g·v` with
/// `|v| ≤ bound`, and the result is checked in both composition orders.
pub fn derive_inverse(forward: &[GroupWord; 3], bound: usize) -> Result<[GroupWord; 3], BraidError> {
    let gens = generators3();
    let conjugators = words_up_to(bound);
    let mut found = Vec::with_capacity(3);
    for g in &gens {
        let hit = conjugators.iter().find_map(|v| {
            let candidate = v
                .inverse()
                .checked_mul(g)
                .and_then(|x| x.checked_mul(v))
                .expect("F3 words");
            (substitute(&candidate, forward) == *g).then_some(candidate)
        });
        match hit {
            Some(c) => found.push(c),
            None => {
                return Err(BraidError::ThetaInverse {
                    generator: g.to_string(),
                    bound,
                })
            }
        }
    }
    let inverse: [GroupWord; 3] = found.try_into().expect("three images");
    for (g, (f, i)) in gens.iter().zip(forward.iter().zip(inverse.iter())) {
        if substitute(f, &inverse) != *g || substitute(i, forward) != *g {
            return Err(BraidError::ThetaInverse {
                generator: g.to_string(),
                bound,
            });
        }
    }
    Ok(inverse)
}

pub const THETA_CONJUGATOR_BOUND: usize = 3;

/// `Θ : F₂ → Aut(F₃)` through the images of `x₁₅, x₂₅, x₃₅` under
/// `Θ_{X₀}`, `Θ_{X₁}` and their inverses.
#[derive(Clone, Debug)]
pub struct ThetaAction {
    forward: [[GroupWord; 3]; 2],
    inverse: [[GroupWord; 3]; 2],
}

impl ThetaAction {
    pub fn new() -> Result<Self, BraidError> {
        let forward = [theta_x0_images(), theta_x1_images()];
        let inverse = [
            derive_inverse(&forward[0], THETA_CONJUGATOR_BOUND)?,
            derive_inverse(&forward[1], THETA_CONJUGATOR_BOUND)?,
        ];
        Ok(ThetaAction { forward, inverse })
    }

    pub fn letter_images(&self, l: Letter) -> &[GroupWord; 3] {
        if l.exponent > 0 {
            &self.forward[l.generator as usize]
        } else {
            &self.inverse[l.generator as usize]
        }
    }

    /// `Θ_h` on the three generators.
    pub fn images(&self, h: &GroupWord) -> [GroupWord; 3] {
        let mut imgs = generators3();
        for &l in h.letters().iter().rev() {
            let table = self.letter_images(l);
            imgs = imgs.map(|w| substitute(&w, table));
        }
        imgs
    }

    pub fn apply(&self, h: &GroupWord, u: &GroupWord) -> GroupWord {
        if h.is_identity() || u.is_identity() {
            return u.clone();
        }
        substitute(u, &self.images(h))
    }
}

pub fn theta() -> &'static ThetaAction {
    static THETA: OnceLock<ThetaAction> = OnceLock::new();
    THETA.get_or_init(|| ThetaAction::new().expect("Theta inverses exist within the bound"))
}

/// `Θ_{X_i}∘Θ_{X_i⁻¹} = id` on generators, `Θ_h∘Θ_{h⁻¹} = id` for every
/// `h` of length ≤ 3, and every `Θ_h` image has the exponent vector of its
/// argument.
pub fn check_theta_integrity() -> CheckOutcome {
    let t = theta();
    let gens = generators3();
    let mut failures = Vec::new();
    let mut bases = vec![GroupWord::identity(F2)];
    for len in 1..=3usize {
        let mut rng = random::rng_from_seed(len as u64);
        for _ in 0..8 {
            bases.push(random::group_word_of_letters(&mut rng, F2, len));
        }
    }
    bases.extend([w2(&[(0, 1)]), w2(&[(0, -1)]), w2(&[(1, 1)]), w2(&[(1, -1)])]);
    for h in &bases {
        let there = t.images(h);
        let back = t.images(&h.inverse());
        for (g, x) in gens.iter().enumerate() {
            if substitute(&there[g], &back) != *x || substitute(&back[g], &there) != *x {
                failures.push(format!("Theta_{{{}}} is not inverted on {}", h, x));
            }
            if there[g].exponent_sums() != x.exponent_sums() {
                failures.push(format!(
                    "Theta_{{{}}}({}) = {} changes the abelianization",
                    h, x, there[g]
                ));
            }
        }
    }
    CheckOutcome::from_failures(failures)
}

/// A group element of `P₅*` as the pair `(u, h)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct P5Word {
    kernel: GroupWord,
    base: GroupWord,
}

impl P5Word {
    pub fn new(kernel: GroupWord, base: GroupWord) -> Result<Self, BraidError> {
        if kernel.alphabet() != F3 {
            return Err(BraidError::WrongAlgebra {
                expected: F3,
                found: kernel.alphabet(),
            });
        }
        if base.alphabet() != F2 {
            return Err(BraidError::WrongAlgebra {
                expected: F2,
                found: base.alphabet(),
            });
        }
        Ok(P5Word { kernel, base })
    }

    pub fn identity() -> Self {
        P5Word {
            kernel: GroupWord::identity(F3),
            base: GroupWord::identity(F2),
        }
    }

    /// `ι(u)`.
    pub fn from_kernel(u: GroupWord) -> Result<Self, BraidError> {
        P5Word::new(u, GroupWord::identity(F2))
    }

    /// `σ(h) = ℓ̲(h)`.
    pub fn section(h: GroupWord) -> Result<Self, BraidError> {
        P5Word::new(GroupWord::identity(F3), h)
    }

    /// `x_{i5}` for `i ∈ {1, 2, 3}`.
    pub fn x_i5(i: usize) -> Self {
        assert!((1..=3).contains(&i), "x_i5 needs i in 1..=3");
        P5Word {
            kernel: generators3()[i - 1].clone(),
            base: GroupWord::identity(F2),
        }
    }

    pub fn kernel(&self) -> &GroupWord {
        &self.kernel
    }

    pub fn base(&self) -> &GroupWord {
        &self.base
    }

    pub fn is_identity(&self) -> bool {
        self.kernel.is_identity() && self.base.is_identity()
    }

    pub fn mul(&self, other: &P5Word) -> P5Word {
        let twisted = theta().apply(&self.base, &other.kernel);
        P5Word {
            kernel: self.kernel.checked_mul(&twisted).expect("F3 words"),
            base: self.base.checked_mul(&other.base).expect("F2 words"),
        }
    }

    /// `(u, h)⁻¹ = (Θ_{h⁻¹}(u⁻¹), h⁻¹)`.
    pub fn inverse(&self) -> P5Word {
        let h_inv = self.base.inverse();
        P5Word {
            kernel: theta().apply(&h_inv, &self.kernel.inverse()),
            base: h_inv,
        }
    }

    pub fn pow(&self, k: i64) -> P5Word {
        let b = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(P5Word::identity(), |acc, _| acc.mul(&b))
    }

    pub fn commutator(&self, other: &P5Word) -> P5Word {
        self.mul(other).mul(&self.inverse()).mul(&other.inverse())
    }
}

impl fmt::Display for P5Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kernel.is_identity(), self.base.is_identity()) {
            (true, true) => write!(f, "1"),
            (false, true) => write!(f, "{}", self.kernel),
            (true, false) => write!(f, "{}", self.base),
            (false, false) => write!(f, "{} {}", self.kernel, self.base),
        }
    }
}

/// The generators of `K₄`, named by the strands they link.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum K4Generator {
    X12,
    X13,
    X14,
    X23,
    X24,
    X34,
}

impl K4Generator {
    pub const ALL: [K4Generator; 6] = [
        K4Generator::X12,
        K4Generator::X13,
        K4Generator::X14,
        K4Generator::X23,
        K4Generator::X24,
        K4Generator::X34,
    ];

    pub fn name(self) -> &'static str {
        match self {
            K4Generator::X12 => "x12",
            K4Generator::X13 => "x13",
            K4Generator::X14 => "x14",
            K4Generator::X23 => "x23",
            K4Generator::X24 => "x24",
            K4Generator::X34 => "x34",
        }
    }

    pub fn from_strands(i: usize, j: usize) -> Option<K4Generator> {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        match (a, b) {
            (1, 2) => Some(K4Generator::X12),
            (1, 3) => Some(K4Generator::X13),
            (1, 4) => Some(K4Generator::X14),
            (2, 3) => Some(K4Generator::X23),
            (2, 4) => Some(K4Generator::X24),
            (3, 4) => Some(K4Generator::X34),
            _ => None,
        }
    }

    /// Normal form of the generator. `x₁₂, x₂₃` are the section letters;
    /// `x₁₃` is solved from `ω₄ = 1`; the others come from
    /// `x₁₅ = (x₁₂x₁₃x₁₄)⁻¹`, `x₂₅ = (x₁₂x₂₃x₂₄)⁻¹`, `x₃₅ = (x₁₃x₂₃x₃₄)⁻¹`.
    pub fn normal_form(self) -> P5Word {
        k4_table().normal[self as usize].clone()
    }
}

struct K4Table {
    normal: [P5Word; 6],
}

fn build_k4_table() -> K4Table {
    let x12 = P5Word::section(w2(&[(1, 1)])).expect("F2 word");
    let x23 = P5Word::section(w2(&[(0, 1)])).expect("F2 word");
    let [x15, x25, x35] = [1, 2, 3].map(P5Word::x_i5);
    // x₁₃ = x₃₅⁻¹x₁₅⁻¹·Θ_{X₁}⁻¹(x₂₅⁻¹)·σ(X₁⁻¹X₀⁻¹)
    let tail = theta().apply(&w2(&[(1, -1)]), &w3(&[(1, -1)]));
    let x13 = P5Word::new(
        w3(&[(2, -1), (0, -1)]).checked_mul(&tail).expect("F3 words"),
        w2(&[(1, -1), (0, -1)]),
    )
    .expect("normal form");
    let x14 = x13.inverse().mul(&x12.inverse()).mul(&x15.inverse());
    let x24 = x23.inverse().mul(&x12.inverse()).mul(&x25.inverse());
    let x34 = x23.inverse().mul(&x13.inverse()).mul(&x35.inverse());
    K4Table {
        normal: [x12, x13, x14, x23, x24, x34],
    }
}

fn k4_table() -> &'static K4Table {
    static TABLE: OnceLock<K4Table> = OnceLock::new();
    TABLE.get_or_init(build_k4_table)
}

/// Normal form of a product of `K₄` generators and their inverses.
pub fn k4_word(letters: &[(K4Generator, i64)]) -> P5Word {
    letters
        .iter()
        .fold(P5Word::identity(), |acc, &(g, k)| acc.mul(&g.normal_form().pow(k)))
}

/// The defining relators of `K₄`, the central element `ω₄`, and the three
/// definitions of `x_{i5}`, each with its normal form.
pub fn k4_relators() -> Vec<(String, P5Word)> {
    use K4Generator as K;
    let g = |i, j| K::from_strands(i, j).expect("strands in 1..=4").normal_form();
    let mut out = Vec::new();
    for (i, j, k) in [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)] {
        let cycle = g(i, j).mul(&g(i, k)).mul(&g(j, k));
        for (a, b) in [(i, j), (i, k), (j, k)] {
            out.push((
                format!("(x{i}{j} x{i}{k} x{j}{k}, x{a}{b})"),
                cycle.commutator(&g(a, b)),
            ));
        }
    }
    out.push(("(x12, x34)".into(), g(1, 2).commutator(&g(3, 4))));
    let conj = g(1, 2).inverse().mul(&g(2, 4)).mul(&g(1, 2));
    out.push(("(x13, x12^-1 x24 x12)".into(), g(1, 3).commutator(&conj)));
    out.push(("(x14, x23)".into(), g(1, 4).commutator(&g(2, 3))));
    out.push((
        "omega4".into(),
        k4_word(&[
            (K::X12, 1),
            (K::X13, 1),
            (K::X23, 1),
            (K::X14, 1),
            (K::X24, 1),
            (K::X34, 1),
        ]),
    ));
    let defs = [
        (1usize, [K::X12, K::X13, K::X14]),
        (2, [K::X12, K::X23, K::X24]),
        (3, [K::X13, K::X23, K::X34]),
    ];
    for (i, [a, b, c]) in defs {
        let product = k4_word(&[(a, 1), (b, 1), (c, 1)]);
        out.push((
            format!("x{i}5 ({} {} {})", a.name(), b.name(), c.name()),
            P5Word::x_i5(i).mul(&product),
        ));
    }
    out
}

/// Every relator must reduce to the identity; failures are reported with
/// their normal forms.
pub fn check_k4_relators() -> CheckOutcome {
    let failures = k4_relators()
        .into_iter()
        .filter(|(_, w)| !w.is_identity())
        .map(|(name, w)| format!("{} = {}", name, w))
        .collect();
    CheckOutcome::from_failures(failures)
}

/// An element of `kP₅*`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct P5Element {
    terms: Combination<P5Word>,
}

impl P5Element {
    pub fn zero() -> Self {
        P5Element::default()
    }

    pub fn one() -> Self {
        P5Element::from_word(P5Word::identity())
    }

    pub fn constant(c: Rational) -> Self {
        P5Element::term(P5Word::identity(), c)
    }

    pub fn from_word(w: P5Word) -> Self {
        P5Element::term(w, Rational::one())
    }

    pub fn term(w: P5Word, c: Rational) -> Self {
        P5Element {
            terms: Combination::singleton(w, c),
        }
    }

    pub fn x_i5(i: usize) -> Self {
        P5Element::from_word(P5Word::x_i5(i))
    }

    /// `x_{i5} − 1`.
    pub fn x_i5_minus_one(i: usize) -> Self {
        &P5Element::x_i5(i) - &P5Element::one()
    }

    pub fn generator(g: K4Generator) -> Self {
        P5Element::from_word(g.normal_form())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&P5Word, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &P5Word) -> Rational {
        self.terms.coefficient(w)
    }

    pub fn augmentation(&self) -> Rational {
        self.terms.iter().map(|(_, c)| c.clone()).sum()
    }

    /// `g ↦ g⁻¹`, extended linearly.
    pub fn op(&self) -> Self {
        P5Element {
            terms: self.terms.map_keys(|w| w.inverse()),
        }
    }
}

impl Ring for P5Element {
    fn zero_like(&self) -> Self {
        P5Element::zero()
    }
    fn one_like(&self) -> Self {
        P5Element::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        P5Element {
            terms: self.terms.plus(&other.terms),
        }
    }
    fn negated(&self) -> Self {
        P5Element {
            terms: self.terms.negated(),
        }
    }
    fn times(&self, other: &Self) -> Self {
        let t = theta();
        let mut out = Combination::new();
        for (a, c) in self.terms.iter() {
            let images = (!a.base.is_identity()).then(|| t.images(&a.base));
            for (b, d) in other.terms.iter() {
                let twisted = match &images {
                    Some(imgs) => substitute(&b.kernel, imgs),
                    None => b.kernel.clone(),
                };
                let w = P5Word {
                    kernel: a.kernel.checked_mul(&twisted).expect("F3 words"),
                    base: a.base.checked_mul(&b.base).expect("F2 words"),
                };
                out.add_term(w, c * d);
            }
        }
        P5Element { terms: out }
    }
    fn scaled(&self, c: &Rational) -> Self {
        P5Element {
            terms: self.terms.scaled(c),
        }
    }
}

impl UnitRing for P5Element {
    fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (w, c) = self.terms.iter().next()?;
        Some(P5Element::term(w.inverse(), c.recip()))
    }
}

impl_ring_ops!(P5Element);

impl fmt::Display for P5Element {
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

/// Parses `kP₅*` expressions. Generators are `x12 … x34`, `x15 x25 x35`,
/// and `X0 X1` standing for `ℓ̲(X₀) = x₂₃`, `ℓ̲(X₁) = x₁₂`.
pub struct P5Context;

impl ExprContext for P5Context {
    type Elem = P5Element;
    fn generator(&self, name: &str) -> Option<P5Element> {
        if let Some(g) = K4Generator::ALL.iter().find(|g| g.name() == name) {
            return Some(P5Element::generator(*g));
        }
        if let Some(i) = F3.index_of(name) {
            return Some(P5Element::x_i5(i as usize + 1));
        }
        let h = F2.index_of(name)?;
        Some(P5Element::from_word(
            P5Word::section(GroupWord::generator(F2, h).ok()?).ok()?,
        ))
    }
    fn scalar(&self, c: &Rational) -> P5Element {
        P5Element::constant(c.clone())
    }
    fn inverse(&self, e: &P5Element) -> Option<P5Element> {
        e.unit_inverse()
    }
}

pub fn parse_p5(text: &str) -> Result<P5Element, ParseError> {
    parse_with(&P5Context, text)
}

/// `kℓ̲ : kF₂ → kP₅*`, `h ↦ (1, h)`.
pub fn ell(v: &G) -> Result<P5Element, BraidError> {
    require(v, F2)?;
    let mut terms = Combination::new();
    for (w, c) in v.terms() {
        terms.add_term(P5Word::section(w.clone())?, c.clone());
    }
    Ok(P5Element { terms })
}

fn require(v: &G, expected: GroupAlphabet) -> Result<(), BraidError> {
    if v.alphabet() != expected {
        return Err(BraidError::WrongAlgebra {
            expected,
            found: v.alphabet(),
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Projection {
    Pr1,
    Pr2,
    Pr5,
    Pr12,
}

impl Projection {
    pub fn target(self) -> GroupAlphabet {
        match self {
            Projection::Pr12 => GroupAlphabet::F2Sq,
            _ => F2,
        }
    }
}

impl FromStr for Projection {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "pr1" => Ok(Projection::Pr1),
            "pr2" => Ok(Projection::Pr2),
            "pr5" => Ok(Projection::Pr5),
            "pr12" => Ok(Projection::Pr12),
            _ => Err(format!("unknown projection '{}'", s)),
        }
    }
}

impl fmt::Display for Projection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Projection::Pr1 => "pr1",
            Projection::Pr2 => "pr2",
            Projection::Pr5 => "pr5",
            Projection::Pr12 => "pr12",
        };
        f.write_str(s)
    }
}

/// Images of `x₁₂, x₁₃, x₁₄, x₂₃, x₂₄, x₃₄` in `F₂` under `pr₁, pr₂, pr₅`.
pub fn k4_projection_table(which: Projection) -> [GroupWord; 6] {
    let one = w2(&[]);
    let x0 = w2(&[(0, 1)]);
    let x1 = w2(&[(1, 1)]);
    let x0x1_inv = w2(&[(1, -1), (0, -1)]);
    let x1x0_inv = w2(&[(0, -1), (1, -1)]);
    match which {
        Projection::Pr1 => [one.clone(), one.clone(), one, x0, x1x0_inv, x1],
        Projection::Pr2 => [one.clone(), x0x1_inv, x0, one.clone(), one, x1],
        Projection::Pr5 => [x1.clone(), x0x1_inv, x0.clone(), x0, x1x0_inv, x1],
        Projection::Pr12 => panic!("pr12 is assembled from pr1 and pr2"),
    }
}

/// A projection on the normal-form generators `x_{i5}` and `σ(X_i)`.
#[derive(Clone, Debug)]
struct ProjectionTable {
    kernel: [GroupWord; 3],
    base: [GroupWord; 2],
}

fn build_projection(which: Projection) -> ProjectionTable {
    let t = k4_projection_table(which);
    let prod = |a: usize, b: usize, c: usize| {
        t[a].checked_mul(&t[b])
            .and_then(|x| x.checked_mul(&t[c]))
            .expect("F2 words")
            .inverse()
    };
    ProjectionTable {
        kernel: [prod(0, 1, 2), prod(0, 3, 4), prod(1, 3, 5)],
        base: [t[3].clone(), t[0].clone()],
    }
}

struct Projections {
    pr1: ProjectionTable,
    pr2: ProjectionTable,
    pr5: ProjectionTable,
}

fn projections() -> &'static Projections {
    static TABLES: OnceLock<Projections> = OnceLock::new();
    TABLES.get_or_init(|| Projections {
        pr1: build_projection(Projection::Pr1),
        pr2: build_projection(Projection::Pr2),
        pr5: build_projection(Projection::Pr5),
    })
}

fn project_basic(t: &ProjectionTable, w: &P5Word) -> GroupWord {
    substitute(&w.kernel, &t.kernel)
        .checked_mul(&substitute(&w.base, &t.base))
        .expect("F2 words")
}

fn to_f2sq(w: &GroupWord, shift: u8) -> GroupWord {
    w.relabel(GroupAlphabet::F2Sq, |g| g + shift)
        .expect("shifted letters in range")
}

pub fn project_word(which: Projection, w: &P5Word) -> GroupWord {
    let p = projections();
    match which {
        Projection::Pr1 => project_basic(&p.pr1, w),
        Projection::Pr2 => project_basic(&p.pr2, w),
        Projection::Pr5 => project_basic(&p.pr5, w),
        Projection::Pr12 => to_f2sq(&project_basic(&p.pr1, w), 0)
            .checked_mul(&to_f2sq(&project_basic(&p.pr2, w), 2))
            .expect("F2Sq words"),
    }
}

pub fn project(which: Projection, a: &P5Element) -> G {
    let mut out = G::zero(which.target());
    for (w, c) in a.terms() {
        out = &out + &G::term(project_word(which, w), c.clone());
    }
    out
}

/// `pr₅∘ℓ̲ = id`, `pr₅(x_{i5}) = 1`, `pr₁₂(x_{i5})` is the twisting diagonal
/// `(Y₁, X₁, (X₀X₁)⁻¹Y₁⁻¹Y₀Y₁)`, and each projection intertwines `Θ_h`
/// with conjugation by the image of `σ(h)`.
pub fn check_projection_tables() -> CheckOutcome {
    let mut failures = Vec::new();
    for h in [w2(&[(0, 1)]), w2(&[(1, 1)])] {
        let got = project_word(Projection::Pr5, &P5Word::section(h.clone()).expect("F2 word"));
        if got != h {
            failures.push(format!("pr5(l({})) = {}", h, got));
        }
    }
    let diag = twist_diagonal();
    for i in 1..=3 {
        let x = P5Word::x_i5(i);
        let p5 = project_word(Projection::Pr5, &x);
        if !p5.is_identity() {
            failures.push(format!("pr5(x{}5) = {}", i, p5));
        }
        let p12 = G::from_word(project_word(Projection::Pr12, &x));
        if p12 != diag[i - 1] {
            failures.push(format!("pr12(x{}5) = {}, expected {}", i, p12, diag[i - 1]));
        }
    }
    for which in [Projection::Pr1, Projection::Pr2, Projection::Pr5, Projection::Pr12] {
        for h in [w2(&[(0, 1)]), w2(&[(1, 1)]), w2(&[(0, -1)]), w2(&[(1, -1)])] {
            let s = P5Word::section(h.clone()).expect("F2 word");
            for x in generators3() {
                let lhs = project_word(which, &P5Word::from_kernel(theta().apply(&h, &x)).expect("F3"));
                let x5 = P5Word::from_kernel(x.clone()).expect("F3");
                let rhs = project_word(which, &s.mul(&x5).mul(&s.inverse()));
                if lhs != rhs {
                    failures.push(format!("{}(Theta_{{{}}}({})) = {}, expected {}", which, h, x, lhs, rhs));
                }
            }
        }
    }
    CheckOutcome::from_failures(failures)
}

/// `pr₁₂(x₂₃) = X₀`, `pr₁₂(x₁₄) = Y₀`, `pr₁₂(x₃₄x₁₃x₁₄) = X₁`,
/// `pr₁₂(x₂₃x₂₄x₃₄) = Y₁`: words in `K₄` lifting the generators of `F₂ × F₂`.
pub fn pr12_witnesses() -> [(&'static str, P5Word, GroupWord); 4] {
    use K4Generator as K;
    let sq = |g: u8| GroupWord::generator(GroupAlphabet::F2Sq, g).expect("F2Sq generator");
    [
        ("x23", k4_word(&[(K::X23, 1)]), sq(0)),
        ("x34 x13 x14", k4_word(&[(K::X34, 1), (K::X13, 1), (K::X14, 1)]), sq(1)),
        ("x14", k4_word(&[(K::X14, 1)]), sq(2)),
        ("x23 x24 x34", k4_word(&[(K::X23, 1), (K::X24, 1), (K::X34, 1)]), sq(3)),
    ]
}

pub fn check_pr12_witnesses() -> CheckOutcome {
    let failures = pr12_witnesses()
        .into_iter()
        .filter_map(|(name, w, expected)| {
            let got = project_word(Projection::Pr12, &w);
            (got != expected).then(|| format!("pr12({}) = {}, expected {}", name, got, expected))
        })
        .collect();
    CheckOutcome::from_failures(failures)
}

/// A linear right inverse of `k pr₁₂`: on a word `x·y` (`x` in the `X`
/// letters, `y` in the `Y` letters) it multiplies the images of the letters
/// under the witness table. Both halves are group morphisms out of `F₂`, so
/// `Fⁿ(V^B ⊗ V^B)` lands in `I^n_{P₅*}`.
pub fn pr12_lift(a: &G) -> Result<P5Element, BraidError> {
    require(a, GroupAlphabet::F2Sq)?;
    let lifts: Vec<P5Word> = pr12_witnesses().into_iter().map(|(_, w, _)| w).collect();
    let inverses: Vec<P5Word> = lifts.iter().map(|w| w.inverse()).collect();
    let mut out = Combination::new();
    for (w, c) in a.terms() {
        let mut acc = P5Word::identity();
        for l in w.letters() {
            let g = l.generator as usize;
            acc = acc.mul(if l.exponent > 0 { &lifts[g] } else { &inverses[g] });
        }
        out.add_term(acc, c.clone());
    }
    Ok(P5Element { terms: out })
}

fn kernel_check(k: &P5Element) -> Result<(), BraidError> {
    let mut sums: BTreeMap<&GroupWord, Rational> = BTreeMap::new();
    for (w, c) in k.terms() {
        *sums.entry(&w.base).or_insert_with(Rational::zero) += c;
    }
    if sums.values().any(|s| !s.is_zero()) {
        return Err(BraidError::NotInKernel(k.to_string()));
    }
    Ok(())
}

fn tail_word(letters: &[Letter]) -> GroupWord {
    GroupWord::from_letters(F3, letters.iter().copied()).expect("F3 letters")
}

/// `k = Σ (x_{i5} − 1)·qᵢ` for `k ∈ ker(k pr₅)`, by left Fox derivatives of
/// the `F₃` part of each term: `u − 1 = Σ_k (y_k − 1)·y_{k+1}⋯y_m`.
pub fn fox_decompose(k: &P5Element) -> Result<[P5Element; 3], BraidError> {
    kernel_check(k)?;
    let mut q: [Combination<P5Word>; 3] = Default::default();
    for (w, c) in k.terms() {
        let letters = w.kernel.letters();
        for (pos, l) in letters.iter().enumerate() {
            let (tail, coeff) = if l.exponent > 0 {
                (tail_word(&letters[pos + 1..]), c.clone())
            } else {
                (tail_word(&letters[pos..]), -c)
            };
            q[l.generator as usize].add_term(
                P5Word {
                    kernel: tail,
                    base: w.base.clone(),
                },
                coeff,
            );
        }
    }
    Ok(q.map(|terms| P5Element { terms }))
}

/// `Σ (x_{i5} − 1)·qᵢ`.
pub fn recompose(q: &[P5Element; 3]) -> P5Element {
    (0..3).fold(P5Element::zero(), |acc, i| {
        &acc + &(&P5Element::x_i5_minus_one(i + 1) * &q[i])
    })
}

/// `k = Σ a_j·(x_{j5} − 1)`, by writing each term as `σ(h)·ι(Θ_{h⁻¹}(u))`
/// and taking right Fox derivatives `u′ − 1 = Σ_k y₁⋯y_{k−1}·(y_k − 1)`.
pub fn right_fox_decompose(k: &P5Element) -> Result<[P5Element; 3], BraidError> {
    kernel_check(k)?;
    let t = theta();
    let mut a: [Combination<P5Word>; 3] = Default::default();
    for (w, c) in k.terms() {
        let back = t.images(&w.base.inverse());
        let forth = t.images(&w.base);
        let moved = substitute(&w.kernel, &back);
        let letters = moved.letters();
        for (pos, l) in letters.iter().enumerate() {
            let (head, coeff) = if l.exponent > 0 {
                (tail_word(&letters[..pos]), c.clone())
            } else {
                (tail_word(&letters[..=pos]), -c)
            };
            a[l.generator as usize].add_term(
                P5Word {
                    kernel: substitute(&head, &forth),
                    base: w.base.clone(),
                },
                coeff,
            );
        }
    }
    Ok(a.map(|terms| P5Element { terms }))
}

/// `Σ a_j·(x_{j5} − 1)`.
pub fn right_recompose(a: &[P5Element; 3]) -> P5Element {
    (0..3).fold(P5Element::zero(), |acc, j| {
        &acc + &(&a[j] * &P5Element::x_i5_minus_one(j + 1))
    })
}

/// `rϖ̲(p)`: column `j` is the Fox decomposition of `p·(x_{j5} − 1)`.
pub fn rvarpi(p: &P5Element) -> Matrix<P5Element> {
    let cols: Vec<[P5Element; 3]> = (1..=3)
        .map(|j| fox_decompose(&(p * &P5Element::x_i5_minus_one(j))).expect("p(x_j5 - 1) lies in the kernel"))
        .collect();
    Matrix::from_fn(3, 3, |i, j| cols[j][i].clone())
}

/// `ϖ̲(p)`: row `i` is the right Fox decomposition of `(x_{i5} − 1)·p`.
pub fn varpi(p: &P5Element) -> Matrix<P5Element> {
    let rows: Vec<[P5Element; 3]> = (1..=3)
        .map(|i| right_fox_decompose(&(&P5Element::x_i5_minus_one(i) * p)).expect("(x_i5 - 1)p lies in the kernel"))
        .collect();
    Matrix::from_fn(3, 3, |i, j| rows[i][j].clone())
}

/// `Ad_{diag(x₁₅,x₂₅,x₃₅)⁻¹} ∘ M₃(op) ∘ ᵗ(−) ∘ ϖ̲ ∘ op`.
pub fn rvarpi_from_varpi(p: &P5Element) -> Matrix<P5Element> {
    let d: Vec<P5Element> = (1..=3).map(P5Element::x_i5).collect();
    let d_inv: Vec<P5Element> = d.iter().map(|x| x.op()).collect();
    varpi(&p.op())
        .transpose()
        .map(|x| x.op())
        .conjugate_by_diagonal(&d, &d_inv)
}

/// `M₃(k pr₁₂)(rϖ̲(kℓ̲(v)))`, to be compared with `rρ̲(v)`.
pub fn geometric_rurho(v: &G) -> Result<Matrix<G>, BraidError> {
    let m = rvarpi(&ell(v)?);
    Ok(m.map(|x| project(Projection::Pr12, x)))
}

pub fn check_geometric_rurho(v: &G) -> Result<CheckOutcome, BraidError> {
    let geometric = geometric_rurho(v)?;
    let explicit = rurho(v).map_err(|e| match e {
        crate::betti_matrix::BettiError::Algebra(a) => BraidError::Algebra(a),
        _ => BraidError::WrongAlgebra {
            expected: F2,
            found: v.alphabet(),
        },
    })?;
    let diff = geometric.differing_entries(&explicit);
    Ok(CheckOutcome::check(diff.is_empty(), || {
        let (i, j) = diff[0];
        format!(
            "v = {}: entry ({}, {}) is {} geometrically and {} explicitly",
            v,
            i,
            j,
            geometric.get(i, j),
            explicit.get(i, j)
        )
    }))
}

/// An element `Σ (x_{i5} − 1) ⊗ aᵢ` of `M^B`, stored as `(a₁, a₂, a₃)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MBElement {
    coords: [G; 3],
}

impl MBElement {
    pub fn new(coords: [G; 3]) -> Result<Self, BraidError> {
        for a in &coords {
            require(a, GroupAlphabet::F2Sq)?;
        }
        Ok(MBElement { coords })
    }

    pub fn coords(&self) -> &[G; 3] {
        &self.coords
    }

    pub fn as_column(&self) -> Matrix<G> {
        Matrix::column(self.coords.to_vec()).expect("3x1")
    }

    /// `Σ (x_{i5} − 1)·L(aᵢ)` in `ker(k pr₅)` for the lift `L` of
    /// [`pr12_lift`].
    pub fn kernel_lift(&self) -> Result<P5Element, BraidError> {
        let lifts = [
            pr12_lift(&self.coords[0])?,
            pr12_lift(&self.coords[1])?,
            pr12_lift(&self.coords[2])?,
        ];
        Ok(recompose(&lifts))
    }
}

impl fmt::Display for MBElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.coords[0], self.coords[1], self.coords[2])
    }
}

/// Left action of `V^B` on `M^B` in coordinates: `a ↦ rρ̲(v)·a`.
pub fn mb_left_action(v: &G, m: &MBElement) -> Result<MBElement, BraidError> {
    let r = rurho(v).map_err(|_| BraidError::WrongAlgebra {
        expected: F2,
        found: v.alphabet(),
    })?;
    let out = r.checked_mul(&m.as_column())?;
    MBElement::new([out.get(0, 0).clone(), out.get(1, 0).clone(), out.get(2, 0).clone()])
}

/// The same action computed geometrically: `ℓ̲(v)·(x_{i5} − 1)` is formed in
/// `kP₅*`, decomposed by Fox calculus, and projected by `pr₁₂`.
pub fn mb_left_action_geometric(v: &G, m: &MBElement) -> Result<MBElement, BraidError> {
    let lv = ell(v)?;
    let mut out: [G; 3] = std::array::from_fn(|_| G::zero(GroupAlphabet::F2Sq));
    for (i, a) in m.coords.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let q = fox_decompose(&(&lv * &P5Element::x_i5_minus_one(i + 1)))?;
        for (k, qk) in q.iter().enumerate() {
            out[k] = &out[k] + &(&project(Projection::Pr12, qk) * a);
        }
    }
    MBElement::new(out)
}

/// `1 + min_i deg(aᵢ)`, the coordinates' Magnus degrees being computed
/// through `N − 1`; `ExceedsN` when that exceeds `N` or `m = 0`.
pub fn mb_filtration_degree(m: &MBElement, n: usize) -> FiltrationDegree {
    if n == 0 {
        return FiltrationDegree::ExceedsN;
    }
    let through = (n - 1).max(1);
    let lowest = m
        .coords
        .iter()
        .filter(|a| !a.is_zero())
        .filter_map(|a| a.filtration_degree_through(through).ok()?.value())
        .min();
    match lowest {
        Some(d) if d < n => FiltrationDegree::Degree(d + 1),
        _ => FiltrationDegree::ExceedsN,
    }
}

/// The Magnus model of `kP₅* ≅ kF₃ ⊗ kF₂`: `(u, h) ↦ M(u) ⊗ M(h)` with
/// letters `t₁₅, t₂₅, t₃₅` on the left and `e₀, e₁` on the right, truncated
/// at total degree `N`.
pub type P5Series = Combination<(TensorMonomial, TensorMonomial)>;

pub fn p5_magnus(p: &P5Element, n: usize) -> P5Series {
    let mut out = P5Series::new();
    let mut cache: BTreeMap<&GroupWord, Vec<(TensorMonomial, Rational)>> = BTreeMap::new();
    for (w, c) in p.terms() {
        let left: Vec<(TensorMonomial, Rational)> = magnus_word(&w.kernel, n)
            .terms()
            .map(|(m, x)| (m.clone(), x.clone()))
            .collect();
        let right = cache.entry(&w.base).or_insert_with(|| {
            magnus_word(&w.base, n)
                .terms()
                .map(|(m, x)| (m.clone(), x.clone()))
                .collect()
        });
        for (a, x) in &left {
            for (b, y) in right.iter() {
                if a.degree() + b.degree() <= n {
                    out.add_term((a.clone(), b.clone()), x * y * c);
                }
            }
        }
    }
    out
}

/// Lowest total degree of [`p5_magnus`]; `ExceedsN` for zero or when the
/// model vanishes through `N`.
pub fn p5_filtration_degree(p: &P5Element, n: usize) -> FiltrationDegree {
    p5_magnus(p, n)
        .keys()
        .map(|(a, b)| a.degree() + b.degree())
        .min()
        .map_or(FiltrationDegree::ExceedsN, FiltrationDegree::Degree)
}

/// Terms of the model with no kernel letter: the image of `gr(k pr₅)`.
pub fn pure_base_part(s: &P5Series) -> P5Series {
    s.filter(|(a, _)| a.is_unit())
}

/// `ι(u)·σ(v)` for `u ∈ kF₃`, `v ∈ kF₂`.
pub fn semidirect_product(u: &G, v: &G) -> P5Element {
    let mut terms = Combination::new();
    for (a, c) in u.terms() {
        for (b, d) in v.terms() {
            terms.add_term(
                P5Word {
                    kernel: a.clone(),
                    base: b.clone(),
                },
                c * d,
            );
        }
    }
    P5Element { terms }
}

fn random_ideal_product(rng: &mut impl Rng, alphabet: GroupAlphabet, k: usize) -> G {
    (0..k).fold(G::one(alphabet), |acc, _| {
        let w = random::nontrivial_group_word(rng, alphabet, 2);
        &acc * &(&G::from_word(w) - &G::one(alphabet))
    })
}

/// The augmentation-ideal decomposition through degree `max_n ≤ N`:
/// for `u ∈ I_{F₃}^a`, `v ∈ I_{F₂}^b` the product `ι(u)σ(v)` lies in
/// `I^{a+b}` with leading part `gr_a(u) ⊗ gr_b(v)`, and a product of `n`
/// factors `x_{i5} − 1`, `σ(Xⱼ) − 1` in any order has degree exactly `n`.
pub fn check_semidirect_augmentation(
    rng: &mut impl Rng,
    max_n: usize,
    samples: usize,
    truncation: usize,
) -> CheckOutcome {
    let mut failures = Vec::new();
    let sigma: [P5Element; 2] = std::array::from_fn(|j| {
        &P5Element::from_word(P5Word::section(w2(&[(j as u8, 1)])).expect("F2 word")) - &P5Element::one()
    });
    for n in 1..=max_n.min(truncation) {
        for a in 0..=n {
            let b = n - a;
            for _ in 0..samples {
                let u = random_ideal_product(rng, F3, a);
                let v = random_ideal_product(rng, F2, b);
                let p = semidirect_product(&u, &v);
                let degree = p5_filtration_degree(&p, truncation);
                if !degree.at_least(n) {
                    failures.push(format!("iota({}) sigma({}) has degree {} < {}", u, v, degree, n));
                    continue;
                }
                let (mu, mv) = (magnus_word_sum(&u, a), magnus_word_sum(&v, b));
                let mut expected = P5Series::new();
                for (x, c) in &mu {
                    for (y, d) in &mv {
                        expected.add_term((x.clone(), y.clone()), c * d);
                    }
                }
                let leading = p5_magnus(&p, truncation).filter(|(x, y)| x.degree() + y.degree() == n);
                if leading != expected {
                    failures.push(format!("iota({}) sigma({}): leading part differs", u, v));
                }
            }
        }
        for _ in 0..samples {
            let mut p = P5Element::one();
            for _ in 0..n {
                let k = rng.gen_range(0..5usize);
                let f = if k < 3 {
                    P5Element::x_i5_minus_one(k + 1)
                } else {
                    sigma[k - 3].clone()
                };
                p = &p * &f;
            }
            let degree = p5_filtration_degree(&p, truncation);
            if degree != FiltrationDegree::Degree(n) {
                failures.push(format!("{} has degree {}, expected {}", p, degree, n));
            }
        }
    }
    CheckOutcome::from_failures(failures)
}

/// The shift `F^{a−1}(V^B ⊗ V^B)^⊕3 ≅ F^a M^B` on random coordinates
/// whose lowest Magnus degree is exactly `a − 1`, for `1 ≤ a ≤ max_a`. The
/// degree is read both from the coordinates and from the kernel lift in
/// the Magnus model of `kP₅*`, and Fox calculus must give back the
/// coordinates.
pub fn check_filtration_shift(rng: &mut impl Rng, max_a: usize, samples: usize) -> CheckOutcome {
    let truncation = max_a + 1;
    let mut failures = Vec::new();
    for a in 1..=max_a {
        for _ in 0..samples {
            let lowest = rng.gen_range(0..3usize);
            let coords: [G; 3] = std::array::from_fn(|i| {
                if i != lowest && rng.gen_bool(0.3) {
                    return G::zero(GroupAlphabet::F2Sq);
                }
                let extra = if i == lowest { 0 } else { rng.gen_range(0..2) };
                let x = random_ideal_product(rng, GroupAlphabet::F2Sq, a - 1 + extra);
                x.scaled(&int(random::coefficient(rng)))
            });
            let m = MBElement::new(coords).expect("F2Sq coordinates");
            let degree = mb_filtration_degree(&m, truncation);
            if degree != FiltrationDegree::Degree(a) {
                failures.push(format!("{} has M^B degree {}, expected {}", m, degree, a));
                continue;
            }
            let lift = match m.kernel_lift() {
                Ok(k) => k,
                Err(e) => {
                    failures.push(e.to_string());
                    continue;
                }
            };
            let lifted = p5_filtration_degree(&lift, truncation);
            if lifted != FiltrationDegree::Degree(a) {
                failures.push(format!("kernel lift of {} has degree {}, expected {}", m, lifted, a));
            }
            match fox_decompose(&lift) {
                Ok(q) => {
                    let back = q.map(|x| project(Projection::Pr12, &x));
                    if back != m.coords {
                        failures.push(format!("Fox coordinates of the lift of {} differ", m));
                    }
                }
                Err(e) => failures.push(e.to_string()),
            }
        }
    }
    CheckOutcome::from_failures(failures)
}

/// Degree-`d` Magnus component of a group-algebra element, as terms.
fn magnus_word_sum(x: &G, d: usize) -> Vec<(TensorMonomial, Rational)> {
    let mut out = Combination::new();
    for (w, c) in x.terms() {
        for (m, e) in magnus_word(w, d).terms() {
            if m.degree() == d {
                out.add_term(m.clone(), c * e);
            }
        }
    }
    out.iter().map(|(m, c)| (m.clone(), c.clone())).collect()
}

pub fn random_word(rng: &mut impl Rng, max_kernel: usize, max_base: usize) -> P5Word {
    P5Word {
        kernel: random::group_word(rng, F3, max_kernel),
        base: random::group_word(rng, F2, max_base),
    }
}

pub fn random_element(rng: &mut impl Rng, max_terms: usize, max_len: usize) -> P5Element {
    let n = rng.gen_range(1..=max_terms.max(1));
    let mut terms = Combination::new();
    for _ in 0..n {
        terms.add_term(random_word(rng, max_len, max_len), int(random::coefficient(rng)));
    }
    P5Element { terms }
}

/// A random element of `ker(k pr₅)`: each term `c·(u, h)` is paired with
/// `−c·(1, h)`.
pub fn random_kernel_element(rng: &mut impl Rng, max_terms: usize, max_len: usize) -> P5Element {
    let x = random_element(rng, max_terms, max_len);
    let mut terms = x.terms.clone();
    for (w, c) in x.terms() {
        terms.add_term(
            P5Word {
                kernel: GroupWord::identity(F3),
                base: w.base.clone(),
            },
            -c,
        );
    }
    P5Element { terms }
}

/// `(g − 1)` for a random group element `g ≠ 1` of `P₅*`.
pub fn random_augmentation_generator(rng: &mut impl Rng, max_len: usize) -> P5Element {
    loop {
        let w = random_word(rng, max_len, max_len);
        if !w.is_identity() {
            return &P5Element::from_word(w) - &P5Element::one();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::betti_matrix::{f2, f2sq, rucol, rurow};

    fn p5(s: &str) -> P5Element {
        parse_p5(s).unwrap()
    }

    fn x(i: u8) -> GroupWord {
        w3(&[(i, 1)])
    }

    #[test]
    fn semidirect_augmentation_degrees() {
        let mut rng = random::rng_from_seed(3);
        let outcome = check_semidirect_augmentation(&mut rng, 3, 3, 4);
        assert!(outcome.passed, "{:?}", outcome.witness);
    }

    #[test]
    fn filtration_shift_on_random_coordinates() {
        let mut rng = random::rng_from_seed(5);
        let outcome = check_filtration_shift(&mut rng, 3, 3);
        assert!(outcome.passed, "{:?}", outcome.witness);
    }

    #[test]
    fn theta_inverse_matches_hand_computation() {
        // Θ_{X₀} fixes c = x₂₅x₃₅ and sends x₃₅ to c⁻¹x₃₅c.
        let inv = derive_inverse(&theta_x0_images(), 3).unwrap();
        assert_eq!(inv[2], w3(&[(1, 1), (2, 1), (1, -1)]));
        assert_eq!(inv[1], w3(&[(1, 1), (2, 1), (1, 1), (2, -1), (1, -1)]));
        assert_eq!(inv[0], x(0));
        assert!(check_theta_integrity().passed);
    }

    #[test]
    fn product_examples() {
        let x15 = P5Word::x_i5(1);
        let s0 = P5Word::section(w2(&[(0, 1)])).unwrap();
        assert_eq!(x15.mul(&s0), P5Word::new(x(0), w2(&[(0, 1)])).unwrap());
        assert_eq!(
            s0.mul(&P5Word::x_i5(2)),
            P5Word::new(w3(&[(2, -1), (1, 1), (2, 1)]), w2(&[(0, 1)])).unwrap()
        );
    }

    #[test]
    fn k4_relators_reduce_to_the_identity() {
        let outcome = check_k4_relators();
        assert!(outcome.passed, "{:?}", outcome.witness);
        assert_eq!(k4_relators().len(), 19);
    }

    #[test]
    fn projection_examples() {
        assert!(
            check_projection_tables().passed,
            "{:?}",
            check_projection_tables().witness
        );
        assert_eq!(project(Projection::Pr5, &p5("x15")), f2("1"));
        // (pr₂(x₁₂)·pr₂(x₁₃)·pr₂(x₁₄))⁻¹ = (1·(X₀X₁)⁻¹·X₀)⁻¹
        assert_eq!(project(Projection::Pr2, &p5("x15")), f2("X1"));
        let w = f2("X0 X1^-2 X0^-1 + 3 X1");
        assert_eq!(project(Projection::Pr5, &ell(&w).unwrap()), w);
    }

    #[test]
    fn pr12_images_and_witnesses() {
        assert_eq!(project(Projection::Pr12, &p5("x15")), f2sq("Y1"));
        assert_eq!(project(Projection::Pr12, &p5("x25")), f2sq("X1"));
        assert_eq!(project(Projection::Pr12, &p5("x35")), f2sq("(X0 X1)^-1 Y1^-1 Y0 Y1"));
        assert!(check_pr12_witnesses().passed);
        let a = f2sq("X0 Y1^-1 - 2 X1^-1 Y0");
        assert_eq!(project(Projection::Pr12, &pr12_lift(&a).unwrap()), a);
    }

    #[test]
    fn fox_examples() {
        let zero = P5Element::zero();
        assert_eq!(
            fox_decompose(&p5("x15 - 1")).unwrap(),
            [p5("1"), zero.clone(), zero.clone()]
        );
        assert_eq!(
            fox_decompose(&p5("x15 x25 - 1")).unwrap(),
            [p5("x25"), p5("1"), zero.clone()]
        );
        assert_eq!(
            fox_decompose(&p5("x15^-1 - 1")).unwrap(),
            [p5("-x15^-1"), zero.clone(), zero]
        );
        assert!(matches!(fox_decompose(&p5("x15")), Err(BraidError::NotInKernel(_))));
        let k = p5("x15 x23 x35^-1 - x12 x13 x14 x23");
        assert_eq!(recompose(&fox_decompose(&k).unwrap()), k);
        assert_eq!(right_recompose(&right_fox_decompose(&k).unwrap()), k);
    }

    #[test]
    fn rvarpi_examples() {
        assert_eq!(rvarpi(&P5Element::one()), Matrix::identity(3, &P5Element::one()));
        assert_eq!(varpi(&P5Element::one()), Matrix::identity(3, &P5Element::one()));
        // x₁₅(x_{j5} − 1) = (x₁₅ − 1)(x_{j5} − 1) + (x_{j5} − 1) for j ≠ 1
        let m = rvarpi(&p5("x15"));
        let expected = Matrix::from_rows(vec![
            vec![p5("x15"), p5("x25 - 1"), p5("x35 - 1")],
            vec![p5("0"), p5("1"), p5("0")],
            vec![p5("0"), p5("0"), p5("1")],
        ])
        .unwrap();
        assert_eq!(m, expected);
    }

    #[test]
    fn rvarpi_is_multiplicative_and_matches_varpi() {
        let p = p5("x13 - 2 x24 x15");
        let q = p5("X0^-1 x35 + 1/2");
        assert_eq!(rvarpi(&(&p * &q)), rvarpi(&p).times(&rvarpi(&q)));
        assert_eq!(rvarpi(&p), rvarpi_from_varpi(&p));
        assert_eq!(varpi(&(&p * &q)), varpi(&p).times(&varpi(&q)));
    }

    #[test]
    fn geometric_route_gives_rurho() {
        for s in ["X0", "X1", "X1 - 1", "X0^-1 X1^2", "X0 - 1"] {
            let outcome = check_geometric_rurho(&f2(s)).unwrap();
            assert!(outcome.passed, "{:?}", outcome.witness);
        }
        let corner = geometric_rurho(&f2("X1 - 1")).unwrap();
        assert_eq!(corner.get(0, 0), &f2sq("X1 - 1"));
    }

    #[test]
    fn mb_action_examples() {
        let m = MBElement::new([f2sq("X0 Y1 - 2"), f2sq("Y0^-1"), f2sq("X1 + Y1")]).unwrap();
        assert_eq!(mb_left_action(&f2("1"), &m).unwrap(), m);
        let e = mb_left_action(&f2("X1 - 1"), &m).unwrap();
        let factored = rucol().times(&rurow().times(&m.as_column()));
        assert_eq!(e.as_column(), factored);
        assert_eq!(mb_left_action_geometric(&f2("X1 - 1"), &m).unwrap(), e);
        assert_eq!(
            mb_left_action_geometric(&f2("X0^2 - X1^-1 X0"), &m).unwrap(),
            mb_left_action(&f2("X0^2 - X1^-1 X0"), &m).unwrap()
        );
    }

    #[test]
    fn mb_filtration_examples() {
        let z = f2sq("0");
        let unit = MBElement::new([f2sq("1"), z.clone(), z.clone()]).unwrap();
        assert_eq!(mb_filtration_degree(&unit, 4), FiltrationDegree::Degree(1));
        let e = MBElement::new([f2sq("X1 - 1"), z.clone(), z.clone()]).unwrap();
        assert_eq!(mb_filtration_degree(&e, 4), FiltrationDegree::Degree(2));
        let moved = mb_left_action(&f2("X0 - 1"), &e).unwrap();
        assert!(mb_filtration_degree(&moved, 4).at_least(3));
        let zero = MBElement::new([z.clone(), z.clone(), z]).unwrap();
        assert_eq!(mb_filtration_degree(&zero, 4), FiltrationDegree::ExceedsN);
    }

    #[test]
    fn magnus_model_degrees() {
        assert_eq!(p5_filtration_degree(&p5("x15 - 1"), 3), FiltrationDegree::Degree(1));
        assert_eq!(
            p5_filtration_degree(&p5("(x15 - 1)(x23 - 1)"), 3),
            FiltrationDegree::Degree(2)
        );
        assert_eq!(
            p5_filtration_degree(&p5("(x23 - 1)(x15 - 1)(x12 - 1)"), 4),
            FiltrationDegree::Degree(3)
        );
        assert_eq!(p5_filtration_degree(&p5("x13 x24"), 3), FiltrationDegree::Degree(0));
        let k = p5("x25 x12 - x12");
        assert!(pure_base_part(&p5_magnus(&k, 3)).is_empty());
    }

    #[test]
    fn display_parses_back() {
        let p = p5("2 x13 x24^-1 - 1/3 x35 X1 + 1");
        assert_eq!(parse_p5(&p.to_string()).unwrap(), p);
    }
}
