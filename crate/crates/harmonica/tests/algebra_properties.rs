mod common;

use proptest::prelude::*;

use common::*;
use harmonica::algebra_core::{
    antipode, augmentation, op, GroupAlgebraElement, GroupAlphabet, Matrix, Ring, TensorAlphabet, TensorElement,
};
use harmonica::cli_report::{parse, AlgebraId};

fn transpose_map<R: Ring>(m: &Matrix<R>, f: impl Fn(&R) -> R) -> Matrix<R> {
    m.map(f).transpose()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn group_words_reduce_confluently(
        a in group_word(GroupAlphabet::F2Sq, 5),
        b in group_word(GroupAlphabet::F2Sq, 5),
        c in group_word(GroupAlphabet::F2Sq, 5),
    ) {
        let left = a.checked_mul(&b).unwrap().checked_mul(&c).unwrap();
        let right = a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert!(a.checked_mul(&a.inverse()).unwrap().is_identity());
    }

    #[test]
    fn group_algebra_is_associative(
        a in group_element(GroupAlphabet::F2, 3, 3),
        b in group_element(GroupAlphabet::F2, 3, 3),
        c in group_element(GroupAlphabet::F2, 3, 3),
    ) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn tensor_algebra_is_associative(
        a in tensor_element(TensorAlphabet::VSq, 3, 3),
        b in tensor_element(TensorAlphabet::VSq, 3, 3),
        c in tensor_element(TensorAlphabet::VSq, 3, 3),
    ) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn op_is_an_involutive_antimorphism(
        a in group_element(GroupAlphabet::F2Sq, 3, 4),
        b in group_element(GroupAlphabet::F2Sq, 3, 4),
    ) {
        prop_assert_eq!(op(&(&a * &b)), &op(&b) * &op(&a));
        prop_assert_eq!(op(&op(&a)), a);
    }

    #[test]
    fn antipode_is_an_involutive_antimorphism(
        a in tensor_element(TensorAlphabet::V, 3, 4),
        b in tensor_element(TensorAlphabet::V, 3, 4),
    ) {
        prop_assert_eq!(antipode(&(&a * &b)), &antipode(&b) * &antipode(&a));
        prop_assert_eq!(antipode(&antipode(&a)), a);
    }

    #[test]
    fn degrees_add_under_products(
        (a, b, d) in (0usize..4, 0usize..4).prop_flat_map(|(p, q)| (
            homogeneous_tensor(TensorAlphabet::VSq, 3, p),
            homogeneous_tensor(TensorAlphabet::VSq, 3, q),
            Just(p + q),
        )),
    ) {
        prop_assert!((&a * &b).is_homogeneous_of(d));
    }

    #[test]
    fn transpose_commutes_with_entrywise_maps(m in group_matrix(2, 3), t in tensor_matrix(3, 2)) {
        prop_assert_eq!(transpose_map(&m, op), m.transpose().map(op));
        prop_assert_eq!(transpose_map(&t, antipode), t.transpose().map(antipode));
    }

    #[test]
    fn antimorphisms_reverse_matrix_products(
        m in group_matrix(2, 3),
        n in group_matrix(3, 2),
        s in tensor_matrix(1, 3),
        t in tensor_matrix(3, 3),
    ) {
        let lhs = transpose_map(&m.times(&n), op);
        prop_assert_eq!(lhs, transpose_map(&n, op).times(&transpose_map(&m, op)));
        let lhs = transpose_map(&s.times(&t), antipode);
        prop_assert_eq!(lhs, transpose_map(&t, antipode).times(&transpose_map(&s, antipode)));
    }

    #[test]
    fn augmentation_is_a_ring_morphism(
        a in group_element(GroupAlphabet::F2, 3, 3),
        b in group_element(GroupAlphabet::F2, 3, 3),
        w in group_word(GroupAlphabet::F2, 6),
    ) {
        prop_assert_eq!(augmentation(&(&a * &b)), augmentation(&a) * augmentation(&b));
        prop_assert_eq!(augmentation(&(&a + &b)), augmentation(&a) + augmentation(&b));
        prop_assert_eq!(augmentation(&GroupAlgebraElement::from_word(w)), harmonica::algebra_core::int(1));
    }

    #[test]
    fn printed_elements_parse_back(
        a in group_element(GroupAlphabet::F2Sq, 4, 4),
        t in tensor_element(TensorAlphabet::VSq, 4, 4),
        p in p5_element(3, 3),
        u in up5_element(3, 3),
    ) {
        prop_assert_eq!(parse(&a.to_string(), AlgebraId::Vb2).unwrap().to_string(), a.to_string());
        prop_assert_eq!(parse(&t.to_string(), AlgebraId::Vdr2).unwrap().to_string(), t.to_string());
        prop_assert_eq!(parse(&p.to_string(), AlgebraId::P5).unwrap().to_string(), p.to_string());
        prop_assert_eq!(parse(&u.to_string(), AlgebraId::Up5).unwrap().to_string(), u.to_string());
    }
}

#[test]
fn zero_tensor_is_homogeneous_of_every_degree() {
    let z = TensorElement::zero(TensorAlphabet::V);
    assert!(z.is_homogeneous_of(0) && z.is_homogeneous_of(5));
}
