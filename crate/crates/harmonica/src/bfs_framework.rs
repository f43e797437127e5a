//! Bimodules with factorization structure over a free right module of finite
//! rank: `(B, A^⊕n, A, ρ, e, row, col)` with `ρ(e) = col·row`.
//!
//! `ρ` is stored as a table of letter images, so it is an algebra morphism by
//! construction on words; the factorization identity then makes
//! `Δ(b) = row·ρ(b)·col` multiplicative for `b ·ₑ b′ = b e b′`.

use std::fmt;

use num::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra_core::{AlgebraError, Matrix, Rational, Ring, Substitution, TensorElement, WordAlgebra};
use crate::magnus_gr::{degree_or_exceeds, Filtered};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BfsError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("malformed object: {0}")]
    Malformed(String),
    #[error("invalid bimodule isomorphism: {0}")]
    InvalidIso(String),
    #[error("factorization identity fails: {0}")]
    Factorization(String),
}

/// Result of one verification: pass, or fail with a human-readable witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckOutcome {
    pub fn pass() -> Self {
        CheckOutcome {
            passed: true,
            witness: None,
        }
    }

    pub fn fail(witness: impl Into<String>) -> Self {
        CheckOutcome {
            passed: false,
            witness: Some(witness.into()),
        }
    }

    /// Passes iff `failures` is empty; otherwise reports the first few.
    pub fn from_failures(failures: Vec<String>) -> Self {
        if failures.is_empty() {
            return Self::pass();
        }
        let shown: Vec<&str> = failures.iter().take(3).map(|s| s.as_str()).collect();
        let mut w = shown.join("; ");
        if failures.len() > 3 {
            w.push_str(&format!("; ... ({} failures)", failures.len()));
        }
        Self::fail(w)
    }

    pub fn and(self, other: CheckOutcome) -> CheckOutcome {
        match (self.passed, other.passed) {
            (true, true) => Self::pass(),
            (true, false) => other,
            (false, true) => self,
            (false, false) => Self::fail(format!(
                "{}; {}",
                self.witness.unwrap_or_default(),
                other.witness.unwrap_or_default()
            )),
        }
    }

    pub fn check(condition: bool, witness: impl FnOnce() -> String) -> Self {
        if condition {
            Self::pass()
        } else {
            Self::fail(witness())
        }
    }
}

/// Optional refinement of an object: degrees claimed for chosen elements of
/// `B` (generators of its filtration or grading), checked against `ρ`.
#[derive(Clone, Debug)]
pub enum Structure<B> {
    Plain,
    Filtered { generators: Vec<(B, usize)> },
    Graded { generators: Vec<(B, usize)> },
}

/// An element `(λ, b)` of `K ⊕ (B, ·ₑ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Augmented<B> {
    pub scalar: Rational,
    pub body: B,
}

impl<B: Ring> Augmented<B> {
    pub fn unit(sample: &B) -> Self {
        Augmented {
            scalar: Rational::one(),
            body: sample.zero_like(),
        }
    }

    pub fn of(body: B) -> Self {
        Augmented {
            scalar: Rational::zero(),
            body,
        }
    }
}

impl<B: fmt::Display> fmt::Display for Augmented<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.scalar, self.body)
    }
}

#[derive(Clone, Debug)]
pub struct BfsObject<B: WordAlgebra, A: Ring> {
    name: String,
    rank: usize,
    rho: Substitution<B, Matrix<A>>,
    e: B,
    row: Matrix<A>,
    col: Matrix<A>,
    structure: Structure<B>,
}

impl<B: WordAlgebra, A: Ring> BfsObject<B, A> {
    pub fn new(
        name: impl Into<String>,
        rho: Substitution<B, Matrix<A>>,
        e: B,
        row: Matrix<A>,
        col: Matrix<A>,
    ) -> Result<Self, BfsError> {
        let rank = row.cols();
        if row.rows() != 1 || col.cols() != 1 || col.rows() != rank {
            return Err(BfsError::Malformed(format!(
                "row is {}x{}, col is {}x{}",
                row.rows(),
                row.cols(),
                col.rows(),
                col.cols()
            )));
        }
        for l in e.alphabet_letters() {
            match rho.image(&l) {
                Some(m) if m.rows() == rank && m.cols() == rank => {}
                Some(m) => {
                    return Err(BfsError::Malformed(format!(
                        "image of {} is {}x{}, expected {}x{}",
                        e.letter_name(l),
                        m.rows(),
                        m.cols(),
                        rank,
                        rank
                    )))
                }
                None => return Err(BfsError::Malformed(format!("no image for {}", e.letter_name(l)))),
            }
        }
        Ok(BfsObject {
            name: name.into(),
            rank,
            rho,
            e,
            row,
            col,
            structure: Structure::Plain,
        })
    }

    pub fn with_structure(mut self, structure: Structure<B>) -> Self {
        self.structure = structure;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn e(&self) -> &B {
        &self.e
    }

    pub fn row(&self) -> &Matrix<A> {
        &self.row
    }

    pub fn col(&self) -> &Matrix<A> {
        &self.col
    }

    pub fn structure(&self) -> &Structure<B> {
        &self.structure
    }

    pub fn rho_table(&self) -> &Substitution<B, Matrix<A>> {
        &self.rho
    }

    pub fn rho(&self, b: &B) -> Result<Matrix<A>, AlgebraError> {
        self.rho.apply(b)
    }

    fn unit_a(&self) -> A {
        self.row.get(0, 0).one_like()
    }

    /// `Δ(b) = row·ρ(b)·col`.
    pub fn delta(&self, b: &B) -> Result<A, AlgebraError> {
        let m = self.row.checked_mul(&self.rho(b)?)?.checked_mul(&self.col)?;
        Ok(m.scalar().expect("1x1 product").clone())
    }

    /// Δ on `K ⊕ (B, ·ₑ)`: the unit goes to `1_A`.
    pub fn delta_augmented(&self, x: &Augmented<B>) -> Result<A, AlgebraError> {
        Ok(self.unit_a().scaled(&x.scalar).plus(&self.delta(&x.body)?))
    }

    /// `(λ, b) ·ₑ (λ′, b′) = (λλ′, λb′ + λ′b + b e b′)`.
    pub fn dot_e(&self, x: &Augmented<B>, y: &Augmented<B>) -> Augmented<B> {
        let body = y
            .body
            .scaled(&x.scalar)
            .plus(&x.body.scaled(&y.scalar))
            .plus(&x.body.times(&self.e).times(&y.body));
        Augmented {
            scalar: &x.scalar * &y.scalar,
            body,
        }
    }

    /// `Δ(b ·ₑ b′) − Δ(b)Δ(b′)`, which vanishes when the factorization holds.
    pub fn delta_morphism_defect(&self, x: &Augmented<B>, y: &Augmented<B>) -> Result<A, AlgebraError> {
        let lhs = self.delta_augmented(&self.dot_e(x, y))?;
        let rhs = self.delta_augmented(x)?.times(&self.delta_augmented(y)?);
        Ok(lhs.minus(&rhs))
    }
}

/// `ρ(e) = col·row`, entry by entry.
pub fn check_factorization<B: WordAlgebra, A: Ring>(o: &BfsObject<B, A>) -> CheckOutcome {
    let lhs = match o.rho(&o.e) {
        Ok(m) => m,
        Err(err) => return CheckOutcome::fail(err.to_string()),
    };
    let rhs = o.col.checked_mul(&o.row).expect("n x 1 times 1 x n");
    let diffs: Vec<String> = lhs
        .differing_entries(&rhs)
        .into_iter()
        .map(|(i, j)| {
            format!(
                "{} entry ({},{}): rho(e) = {} but col*row = {}",
                o.name,
                i,
                j,
                lhs.get(i, j),
                rhs.get(i, j)
            )
        })
        .collect();
    CheckOutcome::from_failures(diffs)
}

/// `ρ(bb′) = ρ(b)ρ(b′)` on the given pairs.
pub fn check_rho_multiplicative<B: WordAlgebra, A: Ring>(o: &BfsObject<B, A>, pairs: &[(B, B)]) -> CheckOutcome {
    let mut failures = Vec::new();
    for (b, c) in pairs {
        let lhs = o.rho(&b.times(c));
        let rhs = o.rho(b).and_then(|x| Ok(x.times(&o.rho(c)?)));
        match (lhs, rhs) {
            (Ok(l), Ok(r)) if l == r => {}
            _ => failures.push(format!("rho({} * {})", b, c)),
        }
    }
    CheckOutcome::from_failures(failures)
}

/// `Δ(x ·ₑ y) = Δ(x)Δ(y)` on the given pairs.
pub fn check_delta_morphism<B: WordAlgebra, A: Ring>(
    o: &BfsObject<B, A>,
    pairs: &[(Augmented<B>, Augmented<B>)],
) -> CheckOutcome {
    let mut failures = Vec::new();
    for (x, y) in pairs {
        match o.delta_morphism_defect(x, y) {
            Ok(d) if d.is_zero() => {}
            Ok(d) => failures.push(format!("x = {}, y = {}: defect {}", x, y, d)),
            Err(err) => failures.push(err.to_string()),
        }
    }
    CheckOutcome::from_failures(failures)
}

/// An isomorphism of bimodules `(g, φ, f)`: algebra isomorphisms `g: B → B′`
/// and `f: A → A′` given with their inverses, and the module map
/// `φ(m) = Φ·f(m)` on coordinate columns.
#[derive(Clone, Debug)]
pub struct BimoduleIso<B, B2, A, A2>
where
    B: WordAlgebra,
    B2: WordAlgebra,
    A: WordAlgebra,
    A2: WordAlgebra,
{
    pub g: Substitution<B, B2>,
    pub g_inv: Substitution<B2, B>,
    pub f: Substitution<A, A2>,
    pub f_inv: Substitution<A2, A>,
    pub phi: Matrix<A2>,
    pub phi_inv: Matrix<A2>,
}

fn round_trip<S: WordAlgebra, T: WordAlgebra>(
    label: &str,
    sample: &S,
    there: &Substitution<S, T>,
    back: &Substitution<T, S>,
) -> Result<(), BfsError> {
    for l in sample.alphabet_letters() {
        let x = sample.letter_element(l);
        let y = back.apply(&there.apply(&x)?)?;
        if y != x {
            return Err(BfsError::InvalidIso(format!(
                "{} does not invert on {}",
                label,
                sample.letter_name(l)
            )));
        }
    }
    Ok(())
}

/// Transports a factorization structure along a bimodule isomorphism onto the
/// target bimodule `(B′, A′^⊕n, A′, ρ′)`:
/// `e′ = g(e)`, `row′ = f(row)·Φ⁻¹`, `col′ = Φ·f(col)`.
pub fn pullback<B, B2, A, A2>(
    o: &BfsObject<B, A>,
    iso: &BimoduleIso<B, B2, A, A2>,
    target_rho: Substitution<B2, Matrix<A2>>,
    name: impl Into<String>,
) -> Result<BfsObject<B2, A2>, BfsError>
where
    B: WordAlgebra,
    B2: WordAlgebra,
    A: WordAlgebra,
    A2: WordAlgebra,
{
    let b2_sample = iso.g.one().clone();
    let a_sample = o.row.get(0, 0).clone();
    let a2_sample = iso.f.one().clone();
    round_trip("g", &o.e, &iso.g, &iso.g_inv)?;
    round_trip("g^-1", &b2_sample, &iso.g_inv, &iso.g)?;
    round_trip("f", &a_sample, &iso.f, &iso.f_inv)?;
    round_trip("f^-1", &a2_sample, &iso.f_inv, &iso.f)?;

    let id = Matrix::identity(o.rank, &a2_sample.one_like());
    if iso.phi.checked_mul(&iso.phi_inv)? != id || iso.phi_inv.checked_mul(&iso.phi)? != id {
        return Err(BfsError::InvalidIso("phi and phi_inv are not inverse".into()));
    }
    let f_mat = |m: &Matrix<A>| m.try_map(|x| iso.f.apply(x));
    for l in o.e.alphabet_letters() {
        let b = o.e.letter_element(l);
        let expected = iso.phi.checked_mul(&f_mat(&o.rho(&b)?)?)?.checked_mul(&iso.phi_inv)?;
        if target_rho.apply(&iso.g.apply(&b)?)? != expected {
            return Err(BfsError::InvalidIso(format!(
                "target rho(g({})) differs from phi f(rho) phi^-1",
                o.e.letter_name(l)
            )));
        }
    }

    let e2 = iso.g.apply(&o.e)?;
    let row2 = f_mat(&o.row)?.checked_mul(&iso.phi_inv)?;
    let col2 = iso.phi.checked_mul(&f_mat(&o.col)?)?;
    let map_gens = |gens: &Vec<(B, usize)>| -> Result<Vec<(B2, usize)>, BfsError> {
        gens.iter().map(|(b, d)| Ok((iso.g.apply(b)?, *d))).collect()
    };
    let structure = match &o.structure {
        Structure::Plain => Structure::Plain,
        Structure::Filtered { generators } => Structure::Filtered {
            generators: map_gens(generators)?,
        },
        Structure::Graded { generators } => Structure::Graded {
            generators: map_gens(generators)?,
        },
    };
    let out = BfsObject::new(name, target_rho, e2, row2, col2)?.with_structure(structure);
    let verdict = check_factorization(&out);
    if !verdict.passed {
        return Err(BfsError::Factorization(verdict.witness.unwrap_or_default()));
    }
    Ok(out)
}

fn entry_degrees_at_least<A: Filtered + Ring>(
    label: &str,
    m: &Matrix<A>,
    d: usize,
    n: usize,
    failures: &mut Vec<String>,
) {
    for (i, j, x) in m.indexed() {
        let deg = degree_or_exceeds(x, n);
        if !deg.at_least(d.min(n + 1)) {
            failures.push(format!(
                "{} entry ({},{}) = {} has degree {} < {}",
                label, i, j, x, deg, d
            ));
        }
    }
}

/// Filtered conditions through truncation `n`: `e ∈ F¹B`, row entries in
/// `F⁰`, col entries in `F¹`, and `ρ(b)` entries in `F^d` for every declared
/// generator `b` of degree `d`.
pub fn filtration_compliance<B, A>(o: &BfsObject<B, A>, n: usize) -> CheckOutcome
where
    B: WordAlgebra + Filtered,
    A: Ring + Filtered,
{
    let mut failures = Vec::new();
    let e_deg = degree_or_exceeds(&o.e, n);
    if !e_deg.at_least(1) {
        failures.push(format!("e = {} has degree {} < 1", o.e, e_deg));
    }
    entry_degrees_at_least("row", &o.row, 0, n, &mut failures);
    entry_degrees_at_least("col", &o.col, 1, n, &mut failures);
    match &o.structure {
        Structure::Filtered { generators } => {
            for (b, d) in generators {
                let b_deg = degree_or_exceeds(b, n);
                if !b_deg.at_least(*d) {
                    failures.push(format!("generator {} has degree {} < {}", b, b_deg, d));
                }
                match o.rho(b) {
                    Ok(m) => entry_degrees_at_least(&format!("rho({})", b), &m, *d, n, &mut failures),
                    Err(err) => failures.push(err.to_string()),
                }
            }
        }
        _ => failures.push(format!("{} carries no filtration data", o.name)),
    }
    CheckOutcome::from_failures(failures)
}

/// Graded conditions: `e ∈ B₁`, row homogeneous of degree 0, col of degree
/// 1, and `ρ(b)` homogeneous of degree `d` for each declared generator.
pub fn grading_compliance(o: &BfsObject<TensorElement, TensorElement>) -> CheckOutcome {
    let mut failures = Vec::new();
    if !o.e.is_homogeneous_of(1) {
        failures.push(format!("e = {} is not homogeneous of degree 1", o.e));
    }
    let homogeneous = |label: &str, m: &Matrix<TensorElement>, d: usize, failures: &mut Vec<String>| {
        for (i, j, x) in m.indexed() {
            if !x.is_homogeneous_of(d) {
                failures.push(format!("{} entry ({},{}) = {} is not of degree {}", label, i, j, x, d));
            }
        }
    };
    homogeneous("row", &o.row, 0, &mut failures);
    homogeneous("col", &o.col, 1, &mut failures);
    match &o.structure {
        Structure::Graded { generators } => {
            for (b, d) in generators {
                if !b.is_homogeneous_of(*d) {
                    failures.push(format!("generator {} is not of degree {}", b, d));
                }
                match o.rho(b) {
                    Ok(m) => homogeneous(&format!("rho({})", b), &m, *d, &mut failures),
                    Err(err) => failures.push(err.to_string()),
                }
            }
        }
        _ => failures.push(format!("{} carries no grading data", o.name)),
    }
    CheckOutcome::from_failures(failures)
}

/// With the shifted filtration `Fⁿ(K ⊕ (B, ·ₑ)) = F^{n−1}B`, a filtered Δ
/// sends `b ∈ F^d B` into `F^{d+1}A`; checked through truncation `n`.
pub fn delta_filtration_defect<B, A>(o: &BfsObject<B, A>, b: &B, n: usize) -> Option<String>
where
    B: WordAlgebra + Filtered,
    A: Ring + Filtered,
{
    let d = degree_or_exceeds(b, n);
    let delta = match o.delta(b) {
        Ok(x) => x,
        Err(err) => return Some(err.to_string()),
    };
    let dd = degree_or_exceeds(&delta, n);
    match d {
        crate::magnus_gr::FiltrationDegree::Degree(k) if !dd.at_least(k + 1) => {
            Some(format!("b = {} has degree {} but delta(b) has degree {}", b, k, dd))
        }
        _ => None,
    }
}
