use std::collections::BTreeMap;

use proptest::prelude::*;
use thompson_kms::algebra::{AlgebraElement, AlgebraMode, Phi};
use thompson_kms::scalar::rat;
use thompson_kms::words::Word;
use thompson_kms::Scalar;

fn word(n: u8) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=n, 0..4).prop_map(Word::new)
}

fn element(mode: AlgebraMode) -> impl Strategy<Value = AlgebraElement> {
    let n = mode.n();
    prop::collection::vec((word(n), word(n), -3i64..=3), 1..4).prop_map(move |terms| {
        terms.into_iter().fold(AlgebraElement::zero(mode), |acc, (mu, nu, c)| {
            let m = AlgebraElement::monomial(mode, mu, nu).unwrap().scale(&Scalar::int(c));
            acc.add(&m).unwrap()
        })
    })
}

fn modes() -> impl Strategy<Value = AlgebraMode> {
    prop_oneof![
        (2u8..=3).prop_map(AlgebraMode::Toeplitz),
        (2u8..=3).prop_map(AlgebraMode::Cuntz),
        (2u8..=3).prop_map(AlgebraMode::InfiniteCuntz),
    ]
}

fn apply(a: &AlgebraElement, v: &BTreeMap<Word, Scalar>) -> BTreeMap<Word, Scalar> {
    let mut out: BTreeMap<Word, Scalar> = BTreeMap::new();
    for (w, c) in v {
        for (u, d) in a.fock_apply(w).unwrap() {
            *out.entry(u).or_insert_with(Scalar::zero) += &(c * &d);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative(
        (a, b, c) in modes().prop_flat_map(|m| (element(m), element(m), element(m)))
    ) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(left.equals(&right).unwrap());
    }

    #[test]
    fn adjoint_reverses_products((a, b) in modes().prop_flat_map(|m| (element(m), element(m)))) {
        let lhs = a.mul(&b).unwrap().adjoint();
        let rhs = b.adjoint().mul(&a.adjoint()).unwrap();
        prop_assert!(lhs.equals(&rhs).unwrap());
        prop_assert!(a.adjoint().adjoint().equals(&a).unwrap());
    }

    #[test]
    fn grading_sums_back(a in modes().prop_flat_map(element)) {
        let parts = a.grade_decompose();
        let total = parts.values().fold(AlgebraElement::zero(a.mode()), |acc, p| acc.add(p).unwrap());
        prop_assert!(total.equals(&a).unwrap());
        prop_assert!(parts.values().all(AlgebraElement::is_homogeneous));
    }

    #[test]
    fn fock_space_is_a_representation(
        (a, b) in (2u8..=3).prop_flat_map(|n| (element(AlgebraMode::Toeplitz(n)), element(AlgebraMode::Toeplitz(n)))),
        w in word(2),
    ) {
        let start = BTreeMap::from([(w, Scalar::one())]);
        prop_assert_eq!(apply(&a.mul(&b).unwrap(), &start), apply(&a, &apply(&b, &start)));
    }

    #[test]
    fn kms_states_are_positive(a in (2u8..=3).prop_flat_map(|n| element(AlgebraMode::Toeplitz(n)))) {
        let n = a.mode().n() as i64;
        let x = a.adjoint().mul(&a).unwrap();
        let value = x.phi(Phi::ToeplitzKms).unwrap().eval(&rat(1, n + 1)).unwrap();
        prop_assert!(value >= rat(0, 1));
        prop_assert!(x.phi(Phi::Ground).unwrap().as_constant().unwrap() >= rat(0, 1));
    }

    #[test]
    fn cuntz_state_is_positive(a in (2u8..=3).prop_flat_map(|n| element(AlgebraMode::Cuntz(n)))) {
        let x = a.adjoint().mul(&a).unwrap();
        prop_assert!(x.phi(Phi::CuntzKms).unwrap().as_constant().unwrap() >= rat(0, 1));
    }
}
