use proptest::prelude::*;
use thompson_kms::groups::{
    abelianize_gamma, commutator, random_element, random_permutation, random_vn, sign_vn, GammaTable, VnTable,
};
use thompson_kms::words::{BoundaryPoint, Word};

fn word(n: u8) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=n, 0..6).prop_map(Word::new)
}

fn point(n: u8) -> impl Strategy<Value = BoundaryPoint> {
    prop_oneof![
        word(n).prop_map(BoundaryPoint::finite),
        (word(n), prop::collection::vec(1..=n, 1..4))
            .prop_map(|(p, c)| BoundaryPoint::periodic(p, Word::new(c)).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_group_laws(n in 2u8..=3, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let g = random_element(n, 2, a).unwrap();
        let h = random_element(n, 2, b).unwrap();
        let k = random_element(n, 2, c).unwrap();
        prop_assert_eq!(g.compose(&h).compose(&k), g.compose(&h.compose(&k)));
        prop_assert!(g.compose(&g.inverse()).is_identity());
        prop_assert!(g.inverse().compose(&g).is_identity());
        prop_assert_eq!(GammaTable::parse(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn vn_group_laws(n in 2u8..=3, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let g = random_vn(n, 2, a).unwrap();
        let h = random_vn(n, 2, b).unwrap();
        let k = random_vn(n, 2, c).unwrap();
        prop_assert_eq!(g.compose(&h).compose(&k), g.compose(&h.compose(&k)));
        prop_assert!(g.compose(&g.inverse()).is_identity());
        prop_assert_eq!(VnTable::parse(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn action_is_compatible_with_composition(n in 2u8..=3, a in any::<u64>(), b in any::<u64>(), x in point(3)) {
        prop_assume!(x.validate(n).is_ok());
        let g = random_element(n, 2, a).unwrap();
        let h = random_element(n, 2, b).unwrap();
        prop_assert_eq!(g.compose(&h).act(&x).unwrap(), g.act(&h.act(&x).unwrap()).unwrap());
        prop_assert_eq!(g.inverse().act(&g.act(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn cocycle_identity(n in 2u8..=3, a in any::<u64>(), b in any::<u64>(), x in point(3)) {
        prop_assume!(x.validate(n).is_ok());
        let g = random_element(n, 2, a).unwrap();
        let h = random_element(n, 2, b).unwrap();
        let lhs = g.compose(&h).cocycle_degree(&x).unwrap();
        let rhs = g.cocycle_degree(&h.act(&x).unwrap()).unwrap() + h.cocycle_degree(&x).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn projection_and_lift(n in 2u8..=3, a in any::<u64>(), b in any::<u64>()) {
        let g = random_element(n, 2, a).unwrap();
        let h = random_element(n, 2, b).unwrap();
        prop_assert_eq!(g.compose(&h).pi_project(), g.pi_project().compose(&h.pi_project()));
        let v = random_vn(n, 2, a).unwrap();
        prop_assert_eq!(v.lift().pi_project(), v);
    }

    #[test]
    fn abelian_quotients_kill_commutators(n in 2u8..=3, a in any::<u64>(), b in any::<u64>()) {
        let g = random_element(n, 2, a).unwrap();
        let h = random_element(n, 2, b).unwrap();
        prop_assert_eq!(abelianize_gamma(&commutator(&g, &h)).unwrap(), 0);
        let (x, y) = (abelianize_gamma(&g).unwrap(), abelianize_gamma(&h).unwrap());
        prop_assert_eq!(abelianize_gamma(&g.compose(&h)).unwrap(), (x + y) % 2);
    }

    #[test]
    fn sign_is_a_homomorphism_for_odd_n(a in any::<u64>(), b in any::<u64>()) {
        let v = random_vn(3, 2, a).unwrap();
        let w = random_vn(3, 2, b).unwrap();
        prop_assert_eq!(sign_vn(&v.compose(&w)), (sign_vn(&v) + sign_vn(&w)) % 2);
        let g = v.lift();
        prop_assert_eq!(abelianize_gamma(&g).unwrap(), sign_vn(&v));
    }

    #[test]
    fn permutations_sit_in_the_kernel(n in 2u8..=3, a in any::<u64>()) {
        let p = random_permutation(n, 3, a).unwrap();
        let g = p.to_gamma();
        prop_assert!(g.pi_project().is_identity());
        prop_assert_eq!(g.kernel_permutation(), Some(p.clone()));
        let expected = if n % 2 == 0 { p.parity() } else { 0 };
        prop_assert_eq!(abelianize_gamma(&g).unwrap(), expected);
    }
}
