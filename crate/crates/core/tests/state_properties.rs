use proptest::prelude::*;
use thompson_kms::crossed::{GammaElement, VnElement};
use thompson_kms::groups::{random_element, random_permutation, random_vn};
use thompson_kms::kms::{check_kms_condition, eval_state, StateSpec, TraceSpec};
use thompson_kms::scalar::rat;
use thompson_kms::words::{BasicSet, SimpleFunction, Space, Word};
use thompson_kms::Scalar;

fn word(n: u8) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=n, 0..3).prop_map(Word::new)
}

fn function(n: u8, space: Space) -> impl Strategy<Value = SimpleFunction> {
    let set = (word(n), 0u8..3).prop_map(move |(w, k)| match (space, k) {
        (Space::Boundary, _) => BasicSet::CylInf(w),
        (_, 0) => BasicSet::Point(w),
        _ => BasicSet::Cyl(w),
    });
    prop::collection::vec((set, -2i64..=2), 1..3).prop_map(move |terms| {
        terms.into_iter().fold(SimpleFunction::zero(space, n), |acc, (s, c)| {
            let f = SimpleFunction::indicator(space, n, s).unwrap().scale(&Scalar::int(c));
            acc.add(&f).unwrap()
        })
    })
}

fn gamma_element(n: u8) -> impl Strategy<Value = GammaElement> {
    prop::collection::vec((function(n, Space::Path), any::<u64>(), any::<bool>()), 1..3).prop_map(move |terms| {
        terms.into_iter().fold(GammaElement::zero(n), |acc, (f, seed, perm)| {
            let g = if perm {
                random_permutation(n, 2, seed).unwrap().to_gamma()
            } else {
                random_element(n, 1, seed).unwrap()
            };
            acc.add(&GammaElement::term(f, g).unwrap()).unwrap()
        })
    })
}

fn vn_element(n: u8) -> impl Strategy<Value = VnElement> {
    prop::collection::vec((function(n, Space::Boundary), any::<u64>()), 1..3).prop_map(move |terms| {
        terms.into_iter().fold(VnElement::zero(n), |acc, (f, seed)| {
            let g = random_vn(n, 1, seed).unwrap();
            acc.add(&VnElement::term(f, g).unwrap()).unwrap()
        })
    })
}

fn constant(spec: &StateSpec, x: &GammaElement) -> thompson_kms::Rational {
    eval_state(spec, x).unwrap().value.as_constant().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn crossed_products_are_associative_star_algebras(
        (a, b, c) in (2u8..=3).prop_flat_map(|n| (gamma_element(n), gamma_element(n), gamma_element(n)))
    ) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().adjoint(), b.adjoint().mul(&a.adjoint()).unwrap());
        let e = a.expectation();
        prop_assert_eq!(e.expectation(), e);
    }

    #[test]
    fn supercritical_states_are_kms((a, b) in (gamma_element(2), gamma_element(2))) {
        for trace in TraceSpec::builtin() {
            let spec = StateSpec::supercritical(2, trace, None, 16).unwrap();
            prop_assert!(check_kms_condition(&spec, &a, &b).unwrap().holds);
        }
    }

    #[test]
    fn critical_states_are_kms((a, b) in (3u8..=3).prop_flat_map(|n| (gamma_element(n), gamma_element(n)))) {
        let spec = StateSpec::critical(3, TraceSpec::sign()).unwrap();
        prop_assert!(check_kms_condition(&spec, &a, &b).unwrap().holds);
    }

    #[test]
    fn vn_state_is_kms((a, b) in (2u8..=3).prop_flat_map(|n| (vn_element(n), vn_element(n)))) {
        let spec = StateSpec::vn_kms(a.n()).unwrap();
        prop_assert!(check_kms_condition(&spec, &a, &b).unwrap().holds);
        let x = a.adjoint().mul(&a).unwrap();
        prop_assert!(eval_state(&spec, &x).unwrap().value.as_constant().unwrap() >= rat(0, 1));
    }

    #[test]
    fn states_are_linear((a, b) in (gamma_element(2), gamma_element(2)), c in -3i64..=3) {
        let spec = StateSpec::supercritical(2, TraceSpec::Canonical, None, 16).unwrap();
        let sum = a.add(&b.scale(&Scalar::int(c))).unwrap();
        let lhs = eval_state(&spec, &sum).unwrap().value;
        let rhs = &eval_state(&spec, &a).unwrap().value + &(&Scalar::int(c) * &eval_state(&spec, &b).unwrap().value);
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn supercritical_states_are_positive(x in gamma_element(2)) {
        let xx = x.adjoint().mul(&x).unwrap();
        for trace in TraceSpec::builtin() {
            let spec = StateSpec::supercritical(2, trace, Some(rat(1, 3)), 16).unwrap();
            prop_assert!(constant(&spec, &xx) >= rat(0, 1), "{} on {}", spec, xx);
        }
        let ground = StateSpec::ground(2, TraceSpec::sign()).unwrap();
        prop_assert!(constant(&ground, &xx) >= rat(0, 1));
    }
}
