//! Property tests for the algebraic invariants that hold on arbitrary
//! inputs: ring axioms of the ground scalars, involutivity of the bar map,
//! q-ratio round trips, and wire-format round trips.

use std::sync::Arc;

use proptest::prelude::*;
use skein_core::scalar::{GroundScalar, ScalarKey, VarSet};
use skein_core::torus::{AntisymForm, ExpVec, TorusElement};

fn vars2() -> VarSet {
    VarSet::new(vec!["v1", "v2"]).expect("distinct")
}

fn arb_scalar() -> impl Strategy<Value = GroundScalar> {
    let term = (-6i64..=6, -4i64..=4, -4i64..=4, -9i64..=9).prop_map(|(q2, a, b, c)| {
        GroundScalar::term(
            &vars2(),
            ScalarKey { q2, v2: vec![a, b] },
            num_bigint::BigInt::from(c),
        )
    });
    prop::collection::vec(term, 0..5).prop_map(|terms| {
        terms
            .into_iter()
            .fold(GroundScalar::zero(&vars2()), |acc, t| acc + t)
    })
}

proptest! {
    #[test]
    fn scalar_ring_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
        // Commutativity, associativity, distributivity.
        prop_assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap());
        prop_assert_eq!(
            a.try_mul(&b).unwrap().try_mul(&c).unwrap(),
            a.try_mul(&b.try_mul(&c).unwrap()).unwrap()
        );
        let lhs = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        let rhs = a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bar_is_involution(a in arb_scalar()) {
        prop_assert_eq!(a.bar().bar(), a);
    }

    #[test]
    fn bar_is_ring_map(a in arb_scalar(), b in arb_scalar()) {
        prop_assert_eq!(
            a.try_mul(&b).unwrap().bar(),
            a.bar().try_mul(&b.bar()).unwrap()
        );
    }

    #[test]
    fn q_ratio_round_trip(a in arb_scalar(), k2 in -9i64..=9) {
        prop_assume!(!a.is_zero());
        let shifted = a.mul_q_half(k2);
        prop_assert_eq!(shifted.q_ratio2(&a), Some(k2));
        if let Some(r) = shifted.q_ratio2(&a) {
            prop_assert_eq!(a.mul_q_half(r), shifted);
        }
    }

    #[test]
    fn scalar_json_round_trip(a in arb_scalar()) {
        let j = a.to_json();
        prop_assert_eq!(GroundScalar::from_json(&vars2(), &j).unwrap(), a);
    }
}

fn small_form() -> Arc<AntisymForm> {
    Arc::new(
        AntisymForm::new(
            vec!["x1", "x2", "x3"],
            vec![vec![0, 2, -1], vec![-2, 0, 3], vec![1, -3, 0]],
        )
        .expect("antisymmetric"),
    )
}

fn arb_element() -> impl Strategy<Value = TorusElement> {
    let term = (
        prop::collection::vec(-3i64..=3, 3),
        -4i64..=4,
        -5i64..=5,
    )
        .prop_map(|(exp, q2, c)| {
            let vars = VarSet::empty();
            TorusElement::monomial(
                small_form(),
                ExpVec(exp),
                GroundScalar::term(
                    &vars,
                    ScalarKey { q2, v2: vec![] },
                    num_bigint::BigInt::from(c),
                ),
            )
        });
    prop::collection::vec(term, 0..4).prop_map(|terms| {
        terms
            .into_iter()
            .fold(TorusElement::zero(small_form(), &VarSet::empty()), |acc, t| {
                acc.add(&t).expect("same form")
            })
    })
}

proptest! {
    #[test]
    fn torus_distributive(a in arb_element(), b in arb_element(), c in arb_element()) {
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reflection_anti_automorphism(a in arb_element(), b in arb_element()) {
        prop_assert_eq!(
            a.mul(&b).unwrap().reflection(),
            b.reflection().mul(&a.reflection()).unwrap()
        );
    }

    #[test]
    fn element_json_round_trip(a in arb_element()) {
        let j = a.to_json();
        prop_assert_eq!(TorusElement::from_json(&j).unwrap(), a);
    }

    #[test]
    fn latex_emission_stable(a in arb_element()) {
        prop_assert_eq!(
            skein_core::latex::torus_to_latex(&a),
            skein_core::latex::torus_to_latex(&a)
        );
    }
}
