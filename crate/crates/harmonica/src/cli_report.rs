//! Element parsing by algebra, the verification suites and their JSON report.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use clap::ValueEnum;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra_core::expr::{parse_group, parse_tensor, ParseError};
use crate::algebra_core::random::{self, SampleRng};
use crate::algebra_core::{
    int, GroupAlgebraElement, GroupAlphabet, GroupWord, Matrix, Ring, TensorAlphabet, TensorElement,
};
use crate::betti_matrix::{self, betti_object, delta_ob, delta_wb_generator, WbGenerator};
use crate::bfs_framework::{
    check_delta_morphism, check_factorization, check_rho_multiplicative, filtration_compliance, grading_compliance,
    Augmented, CheckOutcome,
};
use crate::braid_betti::{self as bb, P5Element};
use crate::braid_derham::{self as bd, MDRElement, UP5Element};
use crate::derham_matrix::{self, delta_odr, delta_wdr, derham_object};

type G = GroupAlgebraElement;
type T = TensorElement;

/// The algebras an expression can be read in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgebraId {
    /// `V^B = kF₂` over `X0 X1`.
    Vb,
    /// `V^B ⊗ V^B` over `X0 X1 Y0 Y1`.
    Vb2,
    /// `V^DR` over `e0 e1`.
    Vdr,
    /// `V^DR ⊗ V^DR` over `e0 e1 f0 f1`.
    Vdr2,
    /// `kF₃` over `x15 x25 x35`.
    F3,
    /// `U(f₃)` over `t15 t25 t35`.
    F3lie,
    /// `kP₅*` in normal form.
    P5,
    /// `U(p₅)` in normal form.
    Up5,
}

impl AlgebraId {
    pub const ALL: [AlgebraId; 8] = [
        AlgebraId::Vb,
        AlgebraId::Vb2,
        AlgebraId::Vdr,
        AlgebraId::Vdr2,
        AlgebraId::F3,
        AlgebraId::F3lie,
        AlgebraId::P5,
        AlgebraId::Up5,
    ];
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.to_possible_value().expect("no skipped variants");
        f.write_str(v.get_name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Element {
    Group(G),
    Tensor(T),
    P5(P5Element),
    Up5(UP5Element),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Group(x) => x.fmt(f),
            Element::Tensor(x) => x.fmt(f),
            Element::P5(x) => x.fmt(f),
            Element::Up5(x) => x.fmt(f),
        }
    }
}

pub fn parse(text: &str, algebra: AlgebraId) -> Result<Element, ParseError> {
    Ok(match algebra {
        AlgebraId::Vb => Element::Group(parse_group(GroupAlphabet::F2, text)?),
        AlgebraId::Vb2 => Element::Group(parse_group(GroupAlphabet::F2Sq, text)?),
        AlgebraId::F3 => Element::Group(parse_group(GroupAlphabet::F3, text)?),
        AlgebraId::Vdr => Element::Tensor(parse_tensor(TensorAlphabet::V, text)?),
        AlgebraId::Vdr2 => Element::Tensor(parse_tensor(TensorAlphabet::VSq, text)?),
        AlgebraId::F3lie => Element::Tensor(parse_tensor(TensorAlphabet::F3Lie, text)?),
        AlgebraId::P5 => Element::P5(bb::parse_p5(text)?),
        AlgebraId::Up5 => Element::Up5(bd::parse_up5(text)?),
    })
}

/// Reads `text` in the first algebra (in [`AlgebraId::ALL`] order) whose
/// generators cover it.
pub fn parse_any(text: &str) -> Result<(AlgebraId, Element), ParseError> {
    let mut first_error = None;
    for a in AlgebraId::ALL {
        match parse(text, a) {
            Ok(e) => return Ok((a, e)),
            Err(err) => {
                first_error.get_or_insert(err);
            }
        }
    }
    Err(first_error.expect("at least one algebra"))
}

pub fn matrix_strings<R: Ring + fmt::Display>(m: &Matrix<R>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Factorization,
    Betti,
    Derham,
    Gr,
    Braid,
    BraidDerham,
    Appendix,
    All,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.to_possible_value().expect("no skipped variants");
        f.write_str(v.get_name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Config {
    pub truncation: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            truncation: 4,
            samples: 100,
            seed: 0,
        }
    }
}

impl Config {
    pub fn rng(&self) -> SampleRng {
        random::rng_from_seed(self.seed)
    }
}

pub struct CheckSpec {
    pub id: &'static str,
    pub suite: Suite,
    pub reference: &'static str,
    pub run: fn(&Config) -> CheckOutcome,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub reference: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub seed: u64,
    pub truncation: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub suites: Vec<Suite>,
    pub seed: u64,
    pub truncation: usize,
    pub samples: usize,
    pub passed: bool,
    pub checks: Vec<CheckRecord>,
    /// Wall-clock milliseconds per check; the only nondeterministic field.
    pub timing_ms: BTreeMap<String, f64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            let ms = self.timing_ms.get(&c.check_id).copied().unwrap_or(0.0);
            writeln!(f, "{} {:<36} {:>9.1} ms  {}", status, c.check_id, ms, c.reference)?;
            if let Some(w) = &c.witness {
                writeln!(f, "     {}", w)?;
            }
        }
        let failed = self.failures().count();
        write!(
            f,
            "{} of {} checks passed (seed {}, truncation {})",
            self.checks.len() - failed,
            self.checks.len(),
            self.seed,
            self.truncation
        )
    }
}

fn selected(suites: &[Suite]) -> Vec<&'static CheckSpec> {
    let all = suites.contains(&Suite::All);
    CHECKS.iter().filter(|c| all || suites.contains(&c.suite)).collect()
}

/// Runs the checks of the named suites concurrently; records are ordered by
/// check id.
pub fn run_suite(suites: &[Suite], config: &Config) -> Report {
    let mut results: Vec<(CheckRecord, f64)> = selected(suites)
        .par_iter()
        .map(|spec| {
            let start = Instant::now();
            let outcome = (spec.run)(config);
            let ms = start.elapsed().as_secs_f64() * 1000.0;
            let record = CheckRecord {
                check_id: spec.id.to_string(),
                reference: spec.reference.to_string(),
                status: if outcome.passed { Status::Pass } else { Status::Fail },
                witness: outcome.witness,
                seed: config.seed,
                truncation: config.truncation,
            };
            (record, ms)
        })
        .collect();
    results.sort_by(|a, b| a.0.check_id.cmp(&b.0.check_id));
    let mut suites = suites.to_vec();
    suites.sort();
    suites.dedup();
    Report {
        suites,
        seed: config.seed,
        truncation: config.truncation,
        samples: config.samples,
        passed: results.iter().all(|(r, _)| r.status == Status::Pass),
        timing_ms: results.iter().map(|(r, ms)| (r.check_id.clone(), *ms)).collect(),
        checks: results.into_iter().map(|(r, _)| r).collect(),
    }
}

pub fn check_ids(suite: Suite) -> Vec<&'static str> {
    selected(&[suite]).iter().map(|c| c.id).collect()
}

fn f2_word(powers: &[(u8, i64)]) -> G {
    G::from_word(GroupWord::from_powers(GroupAlphabet::F2, powers).expect("F2 word"))
}

fn random_augmented_group(rng: &mut SampleRng) -> Augmented<G> {
    let scalar = if rng.gen_bool(0.3) {
        int(random::coefficient(rng))
    } else {
        int(0)
    };
    Augmented {
        scalar,
        body: random::group_element(rng, GroupAlphabet::F2, 3, 3),
    }
}

fn random_augmented_tensor(rng: &mut SampleRng) -> Augmented<T> {
    let scalar = if rng.gen_bool(0.3) {
        int(random::coefficient(rng))
    } else {
        int(0)
    };
    Augmented {
        scalar,
        body: random::tensor_element(rng, TensorAlphabet::V, 3, 3),
    }
}

fn betti_closed_form(_: &Config) -> CheckOutcome {
    let mut failures = Vec::new();
    for n in -5..=5 {
        match delta_ob(&f2_word(&[(0, n)])) {
            Ok(d) if d == delta_wb_generator(WbGenerator::X0Power(n)) => {}
            Ok(d) => failures.push(format!("n = {}: Delta_OB(X0^n) = {}", n, d)),
            Err(e) => failures.push(e.to_string()),
        }
    }
    match delta_ob(&f2_word(&[(1, -1)])) {
        Ok(d) => {
            let lhs = &G::one(GroupAlphabet::F2Sq) - &d;
            if lhs != delta_wb_generator(WbGenerator::InvX1) {
                failures.push(format!("1 - Delta_OB(X1^-1) = {}", lhs));
            }
        }
        Err(e) => failures.push(e.to_string()),
    }
    CheckOutcome::from_failures(failures)
}

fn betti_delta_morphism(c: &Config) -> CheckOutcome {
    let mut rng = c.rng();
    let pairs: Vec<_> = (0..c.samples)
        .map(|_| (random_augmented_group(&mut rng), random_augmented_group(&mut rng)))
        .collect();
    check_delta_morphism(betti_object(), &pairs)
}

fn betti_rho_multiplicative(c: &Config) -> CheckOutcome {
    let mut rng = c.rng();
    let pairs: Vec<_> = (0..c.samples)
        .map(|_| {
            (
                random::group_element(&mut rng, GroupAlphabet::F2, 3, 3),
                random::group_element(&mut rng, GroupAlphabet::F2, 3, 3),
            )
        })
        .collect();
    check_rho_multiplicative(betti_object(), &pairs)
}

fn betti_coassociativity(_: &Config) -> CheckOutcome {
    let mut failures = Vec::new();
    let mut gens: Vec<WbGenerator> = (-3..=3).map(WbGenerator::X0Power).collect();
    gens.push(WbGenerator::InvX1);
    for g in gens {
        match betti_matrix::coassociativity_defect(&g.element()) {
            Ok(d) if d.is_zero() => {}
            Ok(d) => failures.push(format!("{:?}: defect {}", g, d)),
            Err(e) => failures.push(e.to_string()),
        }
    }
    CheckOutcome::from_failures(failures)
}

fn derham_closed_form(_: &Config) -> CheckOutcome {
    let mut failures = Vec::new();
    for n in 0..=8usize {
        let e0n =
            T::from_monomial(crate::algebra_core::TensorMonomial::new(TensorAlphabet::V, vec![0; n]).expect("e0^n"));
        match (delta_odr(&e0n), delta_wdr(n as i64)) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(a), Ok(b)) => failures.push(format!("n = {}: {} but the closed form is {}", n, a, b)),
            (Err(e), _) | (_, Err(e)) => failures.push(e.to_string()),
        }
    }
    CheckOutcome::from_failures(failures)
}

fn derham_delta_morphism(c: &Config) -> CheckOutcome {
    let mut rng = c.rng();
    let pairs: Vec<_> = (0..c.samples)
        .map(|_| (random_augmented_tensor(&mut rng), random_augmented_tensor(&mut rng)))
        .collect();
    check_delta_morphism(derham_object(), &pairs)
}

fn derham_rho_multiplicative(c: &Config) -> CheckOutcome {
    let mut rng = c.rng();
    let pairs: Vec<_> = (0..c.samples)
        .map(|_| {
            (
                random::tensor_element(&mut rng, TensorAlphabet::V, 3, 3),
                random::tensor_element(&mut rng, TensorAlphabet::V, 3, 3),
            )
        })
        .collect();
    check_rho_multiplicative(derham_object(), &pairs)
}

fn derham_coassociativity(_: &Config) -> CheckOutcome {
    let mut failures = Vec::new();
    for n in 0..=4usize {
        let mut letters = vec![0; n];
        letters.push(1);
        let w =
            T::from_monomial(crate::algebra_core::TensorMonomial::new(TensorAlphabet::V, letters).expect("e0^n e1"));
        match derham_matrix::coassociativity_defect(&w) {
            Ok(d) if d.is_zero() => {}
            Ok(d) => failures.push(format!("n = {}: defect {}", n, d)),
            Err(e) => failures.push(e.to_string()),
        }
    }
    CheckOutcome::from_failures(failures)
}

/// The literal degree-`(n+1)` reading agrees with the closed form at `n = 0`
/// only; this keeps the graded-lift substitution visible in the report.
fn gr_delta_literal(c: &Config) -> CheckOutcome {
    let n = c.truncation;
    let at = |k: usize| -> Result<bool, String> {
        let lit = derham_matrix::literal_gr_delta_wb(k, n).map_err(|e| e.to_string())?;
        let closed = delta_wdr(k as i64).map_err(|e| e.to_string())?;
        Ok(lit == closed)
    };
    match (at(0), at(1)) {
        (Ok(true), Ok(false)) => CheckOutcome::pass(),
        (Ok(a), Ok(b)) => CheckOutcome::fail(format!("literal reading agrees at n = 0: {}, at n = 1: {}", a, b)),
        (Err(e), _) | (_, Err(e)) => CheckOutcome::fail(e),
    }
}

fn braid_projections(_: &Config) -> CheckOutcome {
    bb::check_projection_tables().and(bb::check_pr12_witnesses())
}

fn outcome<E: fmt::Display>(r: Result<CheckOutcome, E>) -> CheckOutcome {
    r.unwrap_or_else(|e| CheckOutcome::fail(e.to_string()))
}

fn braid_geometric(c: &Config) -> CheckOutcome {
    let mut rng = c.rng();
    let mut words = vec![f2_word(&[(0, 1)]), f2_word(&[(1, 1)])];
    for _ in 0..20 {
        words.push(G::from_word(random::group_word(&mut rng, GroupAlphabet::F2, 4)));
    }
    words.iter().fold(CheckOutcome::pass(), |acc, w| {
        acc.and(outcome(bb::check_geometric_rurho(w)))
    })
}

fn braid_fox_roundtrip(c: &Config) -> CheckOutcome {
    let mut rng = c.rng();
    let mut failures = Vec::new();
    for _ in 0..c.samples {
        let k = bb::random_kernel_element(&mut rng, 3, 3);
        match (bb::fox_decompose(&k), bb::right_fox_decompose(&k)) {
            (Ok(q), Ok(a)) => {
                if bb::recompose(&q) != k {
                    failures.push(format!("left Fox does not recompose {}", k));
                }
                if bb::right_recompose(&a) != k {
                    failures.push(format!("right Fox does not recompose {}", k));
                }
            }
            (Err(e), _) | (_, Err(e)) => failures.push(e.to_string()),
        }
    }
    CheckOutcome::from_failures(failures)
}

fn braid_rvarpi(c: &Config) -> CheckOutcome {
    let mut rng = c.rng();
    let mut failures = Vec::new();
    for _ in 0..c.samples.div_ceil(10) {
        let p = bb::random_element(&mut rng, 2, 2);
        let q = bb::random_element(&mut rng, 2, 2);
        if bb::rvarpi(&(&p * &q)) != bb::rvarpi(&p).times(&bb::rvarpi(&q)) {
            failures.push(format!("rvarpi is not multiplicative on {} and {}", p, q));
        }
        if bb::rvarpi(&p) != bb::rvarpi_from_varpi(&p) {
            failures.push(format!("rvarpi and varpi disagree on {}", p));
        }
    }
    CheckOutcome::from_failures(failures)
}

fn braid_mb_action(c: &Config) -> CheckOutcome {
    let mut rng = c.rng();
    let mut failures = Vec::new();
    for _ in 0..c.samples.div_ceil(10) {
        let v = random::group_element(&mut rng, GroupAlphabet::F2, 2, 2);
        let coords = std::array::from_fn(|_| random::group_element(&mut rng, GroupAlphabet::F2Sq, 2, 2));
        let m = bb::MBElement::new(coords).expect("F2Sq coordinates");
        match (bb::mb_left_action(&v, &m), bb::mb_left_action_geometric(&v, &m)) {
            (Ok(a), Ok(b)) if a == b => {}
            (Ok(a), Ok(b)) => failures.push(format!("{} on {}: {} explicitly, {} geometrically", v, m, a, b)),
            (Err(e), _) | (_, Err(e)) => failures.push(e.to_string()),
        }
    }
    CheckOutcome::from_failures(failures)
}

fn braid_filtration_shift(c: &Config) -> CheckOutcome {
    let max_a = c.truncation.min(4);
    bb::check_filtration_shift(&mut c.rng(), max_a, c.samples.div_ceil(max_a * 2).max(1))
}

fn lie_geometric(c: &Config) -> CheckOutcome {
    let mut rng = c.rng();
    let mut xs = vec![T::letter(TensorAlphabet::V, 0), T::letter(TensorAlphabet::V, 1)];
    for _ in 0..20 {
        let d = rng.gen_range(0..=3);
        xs.push(T::from_monomial(random::tensor_monomial(
            &mut rng,
            TensorAlphabet::V,
            d,
        )));
    }
    xs.iter().fold(CheckOutcome::pass(), |acc, x| {
        acc.and(outcome(bd::check_lie_geometric_rrho(x)))
    })
}

fn lie_decompositions(c: &Config) -> CheckOutcome {
    let mut rng = c.rng();
    let mut failures = Vec::new();
    for _ in 0..c.samples {
        let k = bd::random_kernel_element(&mut rng, 3, 3);
        match (bd::lie_decompose(&k), bd::lie_right_decompose(&k)) {
            (Ok(q), Ok(a)) => {
                if bd::lie_recompose(&q) != k || bd::lie_right_recompose(&a) != k {
                    failures.push(format!("decompositions do not recompose {}", k));
                }
            }
            (Err(e), _) | (_, Err(e)) => failures.push(e.to_string()),
        }
    }
    for _ in 0..c.samples.div_ceil(10) {
        let p = bd::random_element(&mut rng, 2, 2);
        let q = bd::random_element(&mut rng, 2, 2);
        if bd::lie_rvarpi(&(&p * &q)) != bd::lie_rvarpi(&p).times(&bd::lie_rvarpi(&q)) {
            failures.push(format!("lie rvarpi is not multiplicative on {} and {}", p, q));
        }
        if bd::lie_rvarpi(&p) != bd::lie_rvarpi_from_varpi(&p) {
            failures.push(format!("lie rvarpi and varpi disagree on {}", p));
        }
    }
    CheckOutcome::from_failures(failures)
}

/// Random elements for the comparison square: homogeneous kernel elements
/// of degree `1..=N` and `M^DR` elements acted on from both sides.
fn lie_square(c: &Config) -> CheckOutcome {
    let n = c.truncation;
    let mut rng = c.rng();
    let mut out = outcome(bd::check_generators_square(n));
    for _ in 0..20 {
        let d = rng.gen_range(1..=n.min(4));
        let k = bd::random_homogeneous_kernel(&mut rng, 2, d);
        out = out.and(outcome(bd::check_square_on_kernel(&k, n)));
    }
    for _ in 0..20 {
        let d = rng.gen_range(0..=n.saturating_sub(2).min(2));
        let coords = std::array::from_fn(|_| {
            if rng.gen_bool(0.3) {
                T::zero(TensorAlphabet::VSq)
            } else {
                random::homogeneous_tensor(&mut rng, TensorAlphabet::VSq, 2, d)
            }
        });
        let m = MDRElement::new(coords).expect("VSq coordinates");
        let i = rng.gen_range(0..2u8);
        out = out.and(outcome(bd::check_left_action_square(i, &m, n)));
        let w = random::homogeneous_tensor(&mut rng, TensorAlphabet::VSq, 2, 1);
        out = out.and(outcome(bd::check_right_action_square(&m, &w, n)));
    }
    out
}

fn lie_gr_product(c: &Config) -> CheckOutcome {
    let n = c.truncation;
    let mut rng = c.rng();
    let mut out = CheckOutcome::pass();
    let factor_product = |rng: &mut SampleRng, k: usize| {
        (0..k).fold(P5Element::one(), |acc, _| {
            &acc * &bb::random_augmentation_generator(rng, 2)
        })
    };
    for _ in 0..c.samples.div_ceil(10) {
        let a = rng.gen_range(1..=2);
        let b = rng.gen_range(1..=2);
        let p = factor_product(&mut rng, a);
        let q = factor_product(&mut rng, b);
        out = out.and(bd::check_gr_product(&p, &q, n));
    }
    out
}

fn appendix_augmentation(c: &Config) -> CheckOutcome {
    bb::check_semidirect_augmentation(&mut c.rng(), c.truncation.min(3), c.samples.div_ceil(20), c.truncation)
}

pub static CHECKS: &[CheckSpec] = &[
    CheckSpec {
        id: "factorization.betti",
        suite: Suite::Factorization,
        reference: "rho_B(X1 - 1) = rucol * rurow",
        run: |_| check_factorization(betti_object()),
    },
    CheckSpec {
        id: "factorization.derham",
        suite: Suite::Factorization,
        reference: "rho_DR(e1) = rcol * rrow",
        run: |_| check_factorization(derham_object()),
    },
    CheckSpec {
        id: "betti.closed_form",
        suite: Suite::Betti,
        reference: "Delta_OB(X0^n) = Delta_WB(X0^n (X1 - 1)) for -5 <= n <= 5; 1 - Delta_OB(X1^-1) = X1^-1 Y1^-1",
        run: betti_closed_form,
    },
    CheckSpec {
        id: "betti.delta_morphism",
        suite: Suite::Betti,
        reference: "Delta(x ._e y) = Delta(x) Delta(y) on O^B_mat",
        run: betti_delta_morphism,
    },
    CheckSpec {
        id: "betti.rho_multiplicative",
        suite: Suite::Betti,
        reference: "rho(b b') = rho(b) rho(b') on O^B_mat",
        run: betti_rho_multiplicative,
    },
    CheckSpec {
        id: "betti.filtration",
        suite: Suite::Betti,
        reference: "O^B_mat is a filtered object: e, row, col and rho(X_i - 1) in the right degrees",
        run: |c| filtration_compliance(betti_object(), c.truncation),
    },
    CheckSpec {
        id: "betti.coassociativity",
        suite: Suite::Betti,
        reference: "Delta_WB is coassociative on X0^n (X1 - 1), |n| <= 3, and X1^-1",
        run: betti_coassociativity,
    },
    CheckSpec {
        id: "derham.closed_form",
        suite: Suite::Derham,
        reference: "Delta_ODR(e0^n) = Delta_WDR(e0^n e1) for 0 <= n <= 8",
        run: derham_closed_form,
    },
    CheckSpec {
        id: "derham.delta_morphism",
        suite: Suite::Derham,
        reference: "Delta(x ._e y) = Delta(x) Delta(y) on O^DR_mat",
        run: derham_delta_morphism,
    },
    CheckSpec {
        id: "derham.rho_multiplicative",
        suite: Suite::Derham,
        reference: "rho(x y) = rho(x) rho(y) on O^DR_mat",
        run: derham_rho_multiplicative,
    },
    CheckSpec {
        id: "derham.grading",
        suite: Suite::Derham,
        reference: "O^DR_mat is a graded object",
        run: |_| grading_compliance(derham_object()),
    },
    CheckSpec {
        id: "derham.coassociativity",
        suite: Suite::Derham,
        reference: "Delta_WDR is coassociative on e0^n e1, n <= 4",
        run: derham_coassociativity,
    },
    CheckSpec {
        id: "gr.objects",
        suite: Suite::Gr,
        reference: "gr0(rurow) = rrow, gr1(rucol) = rcol, gr1(rho_B(X_i - 1)) = rho_DR(e_i)",
        run: |c| derham_matrix::gr_compare_betti(c.truncation),
    },
    CheckSpec {
        id: "gr.delta",
        suite: Suite::Gr,
        reference: "gr_{n+1} Delta_WB((X0 - 1)^n (X1 - 1)) = Delta_WDR(e0^n e1) for n < N",
        run: |c| derham_matrix::gr_delta_compare(c.truncation),
    },
    CheckSpec {
        id: "gr.delta_literal",
        suite: Suite::Gr,
        reference: "gr_{n+1} Delta_WB(X0^n (X1 - 1)) matches Delta_WDR(e0^n e1) at n = 0 only",
        run: gr_delta_literal,
    },
    CheckSpec {
        id: "braid.theta",
        suite: Suite::Braid,
        reference: "Theta_h Theta_h^-1 = id and abelianized Theta = id",
        run: |_| bb::check_theta_integrity(),
    },
    CheckSpec {
        id: "braid.k4_relators",
        suite: Suite::Braid,
        reference: "K4 relators and omega_4 reduce to 1 in the normal form",
        run: |_| bb::check_k4_relators(),
    },
    CheckSpec {
        id: "braid.projections",
        suite: Suite::Braid,
        reference: "pr1, pr2, pr5 respect the relators; pr5 l = id; pr12 witnesses",
        run: braid_projections,
    },
    CheckSpec {
        id: "braid.geometric_rurho",
        suite: Suite::Braid,
        reference: "M3(pr12) rvarpi_B l = rho_B on X0, X1 and 20 random words",
        run: braid_geometric,
    },
    CheckSpec {
        id: "braid.fox_roundtrip",
        suite: Suite::Braid,
        reference: "left and right Fox decompositions recompose on ker(k pr5)",
        run: braid_fox_roundtrip,
    },
    CheckSpec {
        id: "braid.rvarpi",
        suite: Suite::Braid,
        reference: "rvarpi_B is multiplicative and equals Ad M3(op) t varpi_B op",
        run: braid_rvarpi,
    },
    CheckSpec {
        id: "braid.mb_action",
        suite: Suite::Braid,
        reference: "left action on M^B: rho_B(v) a agrees with Fox calculus on l(v)(x_i5 - 1)",
        run: braid_mb_action,
    },
    CheckSpec {
        id: "braid.filtration_shift",
        suite: Suite::Braid,
        reference: "F^{a-1}(V^B (x) V^B)^3 = F^a M^B for a <= min(N, 4)",
        run: braid_filtration_shift,
    },
    CheckSpec {
        id: "braid_derham.derivations",
        suite: Suite::BraidDerham,
        reference: "delta_{e_i}(t_j5) from Theta matches the bracket table",
        run: |_| bd::check_derivation_table(),
    },
    CheckSpec {
        id: "braid_derham.relators",
        suite: Suite::BraidDerham,
        reference: "infinitesimal braid relators and z4 vanish in U(p5)",
        run: |_| bd::check_infinitesimal_relators(),
    },
    CheckSpec {
        id: "braid_derham.projections",
        suite: Suite::BraidDerham,
        reference: "U(pr_j) respects the twist; pr5 l = id; pr5(t_i5) = 0",
        run: |_| bd::check_lie_projections(),
    },
    CheckSpec {
        id: "braid_derham.geometric_rrho",
        suite: Suite::BraidDerham,
        reference: "M3(U(pr12)) rvarpi U(l) = rho_DR on e0, e1 and 20 random monomials",
        run: lie_geometric,
    },
    CheckSpec {
        id: "braid_derham.decompositions",
        suite: Suite::BraidDerham,
        reference: "kernel decompositions recompose; rvarpi multiplicative and equal to S t varpi S",
        run: lie_decompositions,
    },
    CheckSpec {
        id: "braid_derham.square",
        suite: Suite::BraidDerham,
        reference: "M^DR -> gr M^B commutes with both routes and both actions",
        run: lie_square,
    },
    CheckSpec {
        id: "braid_derham.gr_product",
        suite: Suite::BraidDerham,
        reference: "gr of kP5* products is the twisted product in U(p5)",
        run: lie_gr_product,
    },
    CheckSpec {
        id: "appendix.semidirect_augmentation",
        suite: Suite::Appendix,
        reference: "iota(I_F^a) sigma(I_H^b) in I_G^(a+b) with leading part gr_a (x) gr_b, n <= 3",
        run: appendix_augmentation,
    },
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let x = parse("X0^2 (X1 - 1)", AlgebraId::Vb).unwrap();
        match &x {
            Element::Group(g) => assert_eq!(g.len(), 2),
            _ => panic!("wrong algebra"),
        }
        let y = parse("e0 e1 - e1 e0", AlgebraId::Vdr).unwrap();
        match &y {
            Element::Tensor(t) => assert!(t.is_homogeneous_of(2)),
            _ => panic!("wrong algebra"),
        }
        let z = parse("x15 X0", AlgebraId::P5).unwrap();
        assert_eq!(z.to_string(), "x15 X0");
        assert!(matches!(
            parse("e0 + X0", AlgebraId::Vb),
            Err(ParseError::UnknownGenerator { .. })
        ));
        assert!(matches!(parse("X0 +", AlgebraId::Vb), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn parse_print_parse_is_stable() {
        for (s, a) in [
            ("X0^2 (X1 - 1) - 1/2 X1^-1", AlgebraId::Vb),
            ("e0 e1 - 3/4 e1 e0 + 2", AlgebraId::Vdr),
            ("x15 X0 - x23 x35", AlgebraId::P5),
            ("e0 t25 + t15", AlgebraId::Up5),
        ] {
            let x = parse(s, a).unwrap();
            assert_eq!(parse(&x.to_string(), a).unwrap(), x);
        }
        assert_eq!(parse_any("e0 e1").unwrap().0, AlgebraId::Vdr);
    }

    #[test]
    fn ids_are_unique_and_every_suite_is_populated() {
        let mut ids: Vec<_> = CHECKS.iter().map(|c| c.id).collect();
        ids.sort();
        let n = ids.len();
        ids.dedup();
        assert_eq!(ids.len(), n);
        for s in Suite::value_variants() {
            assert!(!check_ids(*s).is_empty(), "{}", s);
        }
        assert_eq!(check_ids(Suite::Factorization).len(), 2);
    }

    #[test]
    fn factorization_suite_passes() {
        let r = run_suite(&[Suite::Factorization], &Config::default());
        assert!(r.passed, "{}", r);
        assert_eq!(r.checks.len(), 2);
    }

    #[test]
    fn reports_are_deterministic_apart_from_timing() {
        let c = Config {
            truncation: 4,
            samples: 10,
            seed: 7,
        };
        let mut a = run_suite(&[Suite::Braid], &c);
        let mut b = run_suite(&[Suite::Braid], &c);
        a.timing_ms.clear();
        b.timing_ms.clear();
        assert_eq!(a.to_json(), b.to_json());
    }
}
