//! Acceptance suite: one line per criterion, exit status 1 if any fails.
//! All comparisons are exact equalities of normalized elements; sampled
//! criteria use seed 0 and Magnus truncation 4.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;

use harmonica::algebra_core::random::{self, rng_from_seed};
use harmonica::algebra_core::{
    int, GroupAlgebraElement, GroupAlphabet, GroupWord, Rational, TensorAlphabet, TensorElement, TensorMonomial,
};
use harmonica::betti_matrix::{betti_object, delta_ob, delta_wb_generator, WbGenerator};
use harmonica::bfs_framework::{check_delta_morphism, check_factorization, Augmented, CheckOutcome};
use harmonica::braid_betti as bb;
use harmonica::braid_derham as bd;
use harmonica::derham_matrix::{self, delta_odr, delta_wdr, derham_object};

type G = GroupAlgebraElement;
type T = TensorElement;

const SEED: u64 = 0;
const TRUNCATION: usize = 4;

struct Criterion {
    number: usize,
    title: &'static str,
    bound: Duration,
    run: fn() -> CheckOutcome,
}

fn outcome<E: std::fmt::Display>(r: Result<CheckOutcome, E>) -> CheckOutcome {
    r.unwrap_or_else(|e| CheckOutcome::fail(e.to_string()))
}

fn x0_power(n: i64) -> G {
    G::from_word(GroupWord::from_powers(GroupAlphabet::F2, &[(0, n)]).unwrap())
}

fn e0_power(n: usize) -> T {
    T::from_monomial(TensorMonomial::new(TensorAlphabet::V, vec![0; n]).unwrap())
}

fn factorization() -> CheckOutcome {
    check_factorization(betti_object()).and(check_factorization(derham_object()))
}

fn betti_coproduct() -> CheckOutcome {
    let mut out = CheckOutcome::pass();
    for n in -5..=5 {
        let lhs = delta_ob(&x0_power(n)).unwrap();
        let rhs = delta_wb_generator(WbGenerator::X0Power(n));
        out = out.and(CheckOutcome::check(lhs == rhs, || {
            format!("n = {}: {} vs {}", n, lhs, rhs)
        }));
    }
    let inv = G::from_word(GroupWord::from_powers(GroupAlphabet::F2, &[(1, -1)]).unwrap());
    let lhs = &G::one(GroupAlphabet::F2Sq) - &delta_ob(&inv).unwrap();
    let expected = delta_wb_generator(WbGenerator::InvX1);
    out.and(CheckOutcome::check(lhs == expected, || {
        format!("1 - Delta(X1^-1) = {}", lhs)
    }))
}

fn derham_coproduct() -> CheckOutcome {
    let mut out = CheckOutcome::pass();
    for n in 0..=8usize {
        let lhs = delta_odr(&e0_power(n)).unwrap();
        let rhs = delta_wdr(n as i64).unwrap();
        out = out.and(CheckOutcome::check(lhs == rhs, || {
            format!("n = {}: {} vs {}", n, lhs, rhs)
        }));
    }
    out
}

fn scalar(rng: &mut impl Rng) -> Rational {
    if rng.gen_bool(0.3) {
        int(random::coefficient(rng))
    } else {
        int(0)
    }
}

fn delta_morphism() -> CheckOutcome {
    let mut rng = rng_from_seed(SEED);
    let mut group_pairs = Vec::new();
    let mut tensor_pairs = Vec::new();
    for _ in 0..100 {
        let mut g = || Augmented {
            scalar: scalar(&mut rng),
            body: random::group_element(&mut rng, GroupAlphabet::F2, 3, 3),
        };
        group_pairs.push((g(), g()));
    }
    for _ in 0..100 {
        let mut t = || Augmented {
            scalar: scalar(&mut rng),
            body: random::tensor_element(&mut rng, TensorAlphabet::V, 3, 3),
        };
        tensor_pairs.push((t(), t()));
    }
    check_delta_morphism(betti_object(), &group_pairs).and(check_delta_morphism(derham_object(), &tensor_pairs))
}

fn gr_objects() -> CheckOutcome {
    derham_matrix::gr_compare_betti(TRUNCATION)
}

/// Checked on the graded lift `(X₀−1)ⁿ(X₁−1)` of `e₀ⁿe₁`; the literal
/// element `X₀ⁿ(X₁−1)` sits in filtration degree 1 and matches only at
/// `n = 0`, which is asserted too.
fn gr_coproduct() -> CheckOutcome {
    let mut out = derham_matrix::gr_delta_compare(TRUNCATION);
    let literal = |n: usize| derham_matrix::literal_gr_delta_wb(n, TRUNCATION).unwrap() == delta_wdr(n as i64).unwrap();
    out = out.and(CheckOutcome::check(literal(0), || {
        "literal reading fails at n = 0".into()
    }));
    out.and(CheckOutcome::check(!literal(1), || {
        "literal reading unexpectedly holds at n = 1".into()
    }))
}

fn geometric_betti() -> CheckOutcome {
    let mut rng = rng_from_seed(SEED);
    let mut words: Vec<G> = ["X0", "X1"]
        .iter()
        .map(|s| harmonica::algebra_core::expr::parse_group(GroupAlphabet::F2, s).unwrap())
        .collect();
    for _ in 0..20 {
        words.push(G::from_word(random::group_word(&mut rng, GroupAlphabet::F2, 4)));
    }
    let mut out = CheckOutcome::pass();
    for w in &words {
        out = out.and(outcome(bb::check_geometric_rurho(w)));
    }
    for _ in 0..100 {
        let k = bb::random_kernel_element(&mut rng, 3, 3);
        let q = bb::fox_decompose(&k).unwrap();
        out = out.and(CheckOutcome::check(bb::recompose(&q) == k, || {
            format!("Fox roundtrip fails on {}", k)
        }));
    }
    out
}

fn geometric_derham() -> CheckOutcome {
    let mut rng = rng_from_seed(SEED);
    let mut xs = vec![T::letter(TensorAlphabet::V, 0), T::letter(TensorAlphabet::V, 1)];
    for _ in 0..20 {
        let d = rng.gen_range(0..=3);
        xs.push(T::from_monomial(random::tensor_monomial(
            &mut rng,
            TensorAlphabet::V,
            d,
        )));
    }
    let mut out = bd::check_infinitesimal_relators();
    for x in &xs {
        out = out.and(outcome(bd::check_lie_geometric_rrho(x)));
    }
    out
}

fn filtration_shift() -> CheckOutcome {
    // 13 samples for each a in 1..=4: 52 elements.
    bb::check_filtration_shift(&mut rng_from_seed(SEED), 4, 13)
}

fn gr_bimodule() -> CheckOutcome {
    let mut rng = rng_from_seed(SEED);
    let mut out = outcome(bd::check_generators_square(TRUNCATION));
    for _ in 0..20 {
        let d = rng.gen_range(1..=TRUNCATION);
        let k = bd::random_homogeneous_kernel(&mut rng, 2, d);
        out = out.and(outcome(bd::check_square_on_kernel(&k, TRUNCATION)));
    }
    for _ in 0..20 {
        let d = rng.gen_range(0..=2);
        let coords = std::array::from_fn(|_| random::homogeneous_tensor(&mut rng, TensorAlphabet::VSq, 2, d));
        let m = bd::MDRElement::new(coords).unwrap();
        let i = rng.gen_range(0..2u8);
        out = out.and(outcome(bd::check_left_action_square(i, &m, TRUNCATION)));
        let w = random::homogeneous_tensor(&mut rng, TensorAlphabet::VSq, 2, 1);
        out = out.and(outcome(bd::check_right_action_square(&m, &w, TRUNCATION)));
    }
    out
}

fn theta_integrity() -> CheckOutcome {
    bb::check_theta_integrity()
        .and(bb::check_k4_relators())
        .and(bd::check_derivation_table())
}

fn appendix() -> CheckOutcome {
    let mut rng = rng_from_seed(SEED);
    let mut out = bb::check_semidirect_augmentation(&mut rng, 3, 5, TRUNCATION);
    for _ in 0..20 {
        let a = rng.gen_range(1..=2);
        let b = rng.gen_range(1..=2);
        let p = (0..a).fold(bb::P5Element::one(), |acc, _| {
            &acc * &bb::random_augmentation_generator(&mut rng, 2)
        });
        let q = (0..b).fold(bb::P5Element::one(), |acc, _| {
            &acc * &bb::random_augmentation_generator(&mut rng, 2)
        });
        let (dp, dq, dpq) = (
            bb::p5_filtration_degree(&p, TRUNCATION),
            bb::p5_filtration_degree(&q, TRUNCATION),
            bb::p5_filtration_degree(&(&p * &q), TRUNCATION),
        );
        if let (Some(x), Some(y)) = (dp.value(), dq.value()) {
            out = out.and(CheckOutcome::check(dpq.at_least(x + y), || {
                format!("deg({} * {}) = {} < {} + {}", p, q, dpq, x, y)
            }));
        }
        out = out.and(bd::check_gr_product(&p, &q, TRUNCATION));
    }
    out
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        number: 1,
        title: "factorization identities",
        bound: Duration::from_secs(1),
        run: factorization,
    },
    Criterion {
        number: 2,
        title: "Betti coproduct closed form, n in [-5, 5] and X1^-1",
        bound: Duration::from_secs(5),
        run: betti_coproduct,
    },
    Criterion {
        number: 3,
        title: "de Rham coproduct closed form, n in [0, 8]",
        bound: Duration::from_secs(5),
        run: derham_coproduct,
    },
    Criterion {
        number: 4,
        title: "Delta morphism law, 100 pairs per object",
        bound: Duration::from_secs(60),
        run: delta_morphism,
    },
    Criterion {
        number: 5,
        title: "gr of the explicit objects, N = 4",
        bound: Duration::from_secs(60),
        run: gr_objects,
    },
    Criterion {
        number: 6,
        title: "gr of the coproduct, n <= 3, N = 4",
        bound: Duration::from_secs(60),
        run: gr_coproduct,
    },
    Criterion {
        number: 7,
        title: "geometric = explicit (Betti) and Fox roundtrip",
        bound: Duration::from_secs(30),
        run: geometric_betti,
    },
    Criterion {
        number: 8,
        title: "geometric = explicit (de Rham) and infinitesimal relators",
        bound: Duration::from_secs(60),
        run: geometric_derham,
    },
    Criterion {
        number: 9,
        title: "filtration shift for a <= 4",
        bound: Duration::from_secs(60),
        run: filtration_shift,
    },
    Criterion {
        number: 10,
        title: "M^DR -> gr M^B square through degree 4",
        bound: Duration::from_secs(60),
        run: gr_bimodule,
    },
    Criterion {
        number: 11,
        title: "Theta and presentation integrity",
        bound: Duration::from_secs(60),
        run: theta_integrity,
    },
    Criterion {
        number: 12,
        title: "augmentation ideal decomposition, n <= 3",
        bound: Duration::from_secs(60),
        run: appendix,
    },
];

fn main() -> ExitCode {
    let mut failed = 0;
    for c in CRITERIA {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.bound;
        let pass = result.passed && in_time;
        println!(
            "{} criterion {:>2}: {} [exact; {:.3} s, bound {} s]",
            if pass { "PASS" } else { "FAIL" },
            c.number,
            c.title,
            elapsed.as_secs_f64(),
            c.bound.as_secs()
        );
        if let Some(w) = result.witness {
            println!("     witness: {}", w);
        }
        if !in_time {
            println!("     runtime bound exceeded");
        }
        if !pass {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
