mod common;

use proptest::prelude::*;

use common::*;
use harmonica::algebra_core::{int, GroupAlphabet, Ring, TensorAlphabet};
use harmonica::betti_matrix::{betti_object, delta_ob, rurho, rurho_composite, wb_tensor_membership};
use harmonica::bfs_framework::{delta_filtration_defect, Augmented};
use harmonica::derham_matrix::{delta_odr, derham_object, rrho, rrho_composite};

const N: usize = 4;

fn augmented<B: harmonica::algebra_core::Ring + std::fmt::Debug>(
    body: impl Strategy<Value = B>,
) -> impl Strategy<Value = Augmented<B>> {
    (prop_oneof![3 => Just(0i64), 1 => coefficient()], body).prop_map(|(c, body)| Augmented { scalar: int(c), body })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn betti_delta_is_multiplicative(
        x in augmented(group_element(GroupAlphabet::F2, 3, 3)),
        y in augmented(group_element(GroupAlphabet::F2, 3, 3)),
    ) {
        let d = betti_object().delta_morphism_defect(&x, &y).unwrap();
        prop_assert!(d.is_empty(), "defect {}", d);
    }

    #[test]
    fn derham_delta_is_multiplicative(
        x in augmented(tensor_element(TensorAlphabet::V, 3, 3)),
        y in augmented(tensor_element(TensorAlphabet::V, 3, 3)),
    ) {
        let d = derham_object().delta_morphism_defect(&x, &y).unwrap();
        prop_assert!(d.is_zero(), "defect {}", d);
    }

    #[test]
    fn betti_rho_is_multiplicative(
        a in group_word(GroupAlphabet::F2, 5),
        b in group_word(GroupAlphabet::F2, 5),
    ) {
        let (a, b) = (
            harmonica::algebra_core::GroupAlgebraElement::from_word(a),
            harmonica::algebra_core::GroupAlgebraElement::from_word(b),
        );
        let o = betti_object();
        prop_assert_eq!(o.rho(&(&a * &b)).unwrap(), o.rho(&a).unwrap().times(&o.rho(&b).unwrap()));
    }

    #[test]
    fn betti_rurho_two_paths_agree(a in group_word(GroupAlphabet::F2, 5)) {
        let v = harmonica::algebra_core::GroupAlgebraElement::from_word(a);
        prop_assert_eq!(rurho(&v).unwrap(), rurho_composite(&v).unwrap());
    }

    #[test]
    fn derham_rrho_two_paths_agree(m in tensor_monomial(TensorAlphabet::V, 5)) {
        let x = harmonica::algebra_core::TensorElement::from_monomial(m);
        prop_assert_eq!(rrho(&x).unwrap(), rrho_composite(&x).unwrap());
    }

    #[test]
    fn betti_delta_lands_in_w_tensor_w(b in group_element(GroupAlphabet::F2, 3, 3)) {
        let d = delta_ob(&b).unwrap();
        let w = wb_tensor_membership(&d);
        prop_assert!(w.is_some(), "{} is not in W (x) W", d);
        prop_assert_eq!(w.unwrap().recompose(), d);
    }

    #[test]
    fn betti_delta_is_filtered(b in group_element(GroupAlphabet::F2, 3, 3)) {
        let defect = delta_filtration_defect(betti_object(), &b, N);
        prop_assert!(defect.is_none(), "{:?}", defect);
    }

    #[test]
    fn derham_delta_raises_degree_by_one(
        (x, d) in (0usize..=4).prop_flat_map(|d| (homogeneous_tensor(TensorAlphabet::V, 3, d), Just(d))),
    ) {
        let y = delta_odr(&x).unwrap();
        prop_assert!(y.is_homogeneous_of(d + 1), "{} is not of degree {}", y, d + 1);
    }
}

#[test]
fn unit_of_the_augmented_algebra_maps_to_one() {
    let one = Augmented {
        scalar: int(1),
        body: harmonica::algebra_core::GroupAlgebraElement::zero(GroupAlphabet::F2),
    };
    let d = betti_object().delta_augmented(&one).unwrap();
    assert_eq!(
        d,
        harmonica::algebra_core::GroupAlgebraElement::one(GroupAlphabet::F2Sq)
    );
}
