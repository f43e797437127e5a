mod common;

use proptest::prelude::*;

use common::*;
use harmonica::algebra_core::{Ring, TensorAlphabet};
use harmonica::braid_betti::{random_augmentation_generator, P5Element, Projection};
use harmonica::braid_derham::{
    check_gr_product, check_lie_geometric_rrho, lie_decompose, lie_recompose, lie_right_decompose, lie_right_recompose,
    lie_rvarpi, lie_rvarpi_from_varpi, u_project, UP5Element,
};

const PROJECTIONS: [Projection; 4] = [Projection::Pr1, Projection::Pr2, Projection::Pr5, Projection::Pr12];

/// A product of `k` random factors `g − 1` in `kP₅*`, drawn from a seed.
fn factor_product(k: usize) -> impl Strategy<Value = P5Element> {
    any::<u64>().prop_map(move |seed| {
        let mut rng = harmonica::algebra_core::random::rng_from_seed(seed);
        (0..k).fold(P5Element::one(), |acc, _| {
            &acc * &random_augmentation_generator(&mut rng, 2)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn twisted_product_is_associative(a in up5_element(2, 2), b in up5_element(2, 2), c in up5_element(2, 2)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn antipode_is_an_involutive_antimorphism(a in up5_element(2, 2), b in up5_element(2, 2)) {
        prop_assert_eq!((&a * &b).antipode(), &b.antipode() * &a.antipode());
        prop_assert_eq!(a.antipode().antipode(), a);
    }

    #[test]
    fn projections_are_multiplicative(a in up5_element(2, 2), b in up5_element(2, 2)) {
        for pr in PROJECTIONS {
            prop_assert_eq!(u_project(pr, &(&a * &b)), &u_project(pr, &a) * &u_project(pr, &b));
        }
    }

    #[test]
    fn kernel_decompositions_recompose(k in up5_kernel_element(3, 3)) {
        prop_assert_eq!(lie_recompose(&lie_decompose(&k).unwrap()), k.clone());
        prop_assert_eq!(lie_right_recompose(&lie_right_decompose(&k).unwrap()), k.clone());
        prop_assert!(u_project(Projection::Pr5, &k).is_zero());
    }

    #[test]
    fn kernel_coordinates_are_unique(q in [up5_element(2, 2), up5_element(2, 2), up5_element(2, 2)]) {
        prop_assert_eq!(lie_decompose(&lie_recompose(&q)).unwrap(), q.clone());
        prop_assert_eq!(lie_right_decompose(&lie_right_recompose(&q)).unwrap(), q);
    }

    #[test]
    fn lie_rvarpi_is_multiplicative(a in up5_element(2, 2), b in up5_element(2, 2)) {
        prop_assert_eq!(lie_rvarpi(&(&a * &b)), lie_rvarpi(&a).times(&lie_rvarpi(&b)));
    }

    #[test]
    fn geometric_route_gives_rrho(m in tensor_monomial(TensorAlphabet::V, 4)) {
        let x = harmonica::algebra_core::TensorElement::from_monomial(m);
        let outcome = check_lie_geometric_rrho(&x).unwrap();
        prop_assert!(outcome.passed, "{:?}", outcome.witness);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn lie_rvarpi_matches_varpi(a in up5_element(3, 3)) {
        prop_assert_eq!(lie_rvarpi(&a), lie_rvarpi_from_varpi(&a));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn gr_of_products_is_the_twisted_product(
        (p, q) in (1usize..=2, 1usize..=2).prop_flat_map(|(a, b)| (factor_product(a), factor_product(b))),
    ) {
        let outcome = check_gr_product(&p, &q, 4);
        prop_assert!(outcome.passed, "{:?}", outcome.witness);
    }
}

#[test]
fn unit_is_neutral() {
    let x = harmonica::braid_derham::parse_up5("e0 t25 - 2 t15 e1").unwrap();
    assert_eq!(&UP5Element::one() * &x, x);
    assert_eq!(&x * &UP5Element::one(), x);
}
