use super::*;
use crate::groups::{random_element, random_vn};
use crate::words::{BoundaryPoint, Word};

const U0: &str = "G2[Z(1)->Z(2), Z(2)->Z(1); e->e]";

fn ge(s: &str) -> GammaElement {
    GammaElement::parse(s, 2).unwrap()
}

fn ve(s: &str) -> VnElement {
    VnElement::parse(s, 2).unwrap()
}

fn f(s: &str) -> SimpleFunction {
    SimpleFunction::parse(s, None, 2).unwrap()
}

#[test]
fn unitary_products() {
    let g = GammaTable::parse("G2[Z(11)->Z(1), Z(12)->Z(21), Z(2)->Z(22); e->e, 1->2]").unwrap();
    let x = GammaElement::unitary(g.clone());
    let y = GammaElement::unitary(g.inverse());
    assert_eq!(x.mul(&y).unwrap(), GammaElement::one(2));
    assert!(ge("Z(1)").mul(&ge("Z(2)")).unwrap().is_zero());
    let lhs = ge(&format!("Z(1) * L[{U0}]")).mul(&ge(&format!("Z(2) * L[{U0}]"))).unwrap();
    assert_eq!(lhs, ge("Z(1) * L[G2[identity]]"));
}

#[test]
fn adjoint_rule() {
    let x = ge(&format!("Z(1) * L[{U0}]"));
    assert_eq!(x.adjoint(), ge(&format!("Z(2) * L[{U0}]")));
    for seed in 0..10 {
        let g = random_element(2, 3, seed).unwrap();
        let h = random_element(2, 3, seed + 100).unwrap();
        let a = GammaElement::term(f("Z(1) + 2*P(e)"), g).unwrap();
        let b = GammaElement::term(f("t*Z(21) + P(2)"), h).unwrap();
        assert_eq!(a.adjoint().adjoint(), a);
        assert_eq!(a.mul(&b).unwrap().adjoint(), b.adjoint().mul(&a.adjoint()).unwrap());
    }
}

#[test]
fn expectations() {
    let swap = "V2[1->2, 2->1]";
    assert!(ve(&format!("Zinf(1) * L[{swap}]")).expectation().is_zero());
    assert_eq!(ve("Zinf(1)").expectation(), ve("Zinf(1)"));
    let tr = "G2[Z(11)->Z(11), Z(12)->Z(12), Z(21)->Z(21), Z(22)->Z(22); e->1, 1->e, 2->2]";
    let x = ge(&format!("Z(1) * L[{tr}] + P(e) * L[{U0}]"));
    assert_eq!(x.expectation_to_permutations(), ge(&format!("Z(1) * L[{tr}]")));
}

#[test]
fn homogeneous_parts() {
    let a = VnTable::parse("V2[11->1, 12->21, 2->22]").unwrap();
    let x = VnElement::unitary(a.clone());
    let parts = x.homogeneous_decompose().unwrap();
    assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![-1, 0, 1]);
    assert_eq!(parts[&-1], VnElement::term(f("Zinf(1)"), a.clone()).unwrap());
    assert_eq!(parts[&0], VnElement::term(f("Zinf(21)"), a.clone()).unwrap());
    assert_eq!(parts[&1], VnElement::term(f("Zinf(22)"), a.clone()).unwrap());
    let mut sum = VnElement::zero(2);
    for p in parts.values() {
        sum = sum.add(p).unwrap();
    }
    assert_eq!(sum, x);
    assert_eq!(parts[&1].gauge_scale().unwrap(), parts[&1].scale(&Scalar::t()));
    assert_eq!(ve("Zinf(1)").gauge_scale().unwrap(), ve("Zinf(1)"));
}

#[test]
fn gauge_is_multiplicative() {
    for seed in 0..10 {
        let g = random_vn(2, 3, seed).unwrap();
        let h = random_vn(2, 3, seed + 7).unwrap();
        let x = VnElement::term(f("Zinf(1) + 3*Zinf(22)"), g).unwrap();
        let y = VnElement::term(f("Zinf(2)"), h).unwrap();
        let lhs = x.mul(&y).unwrap().gauge_scale().unwrap();
        let rhs = x.gauge_scale().unwrap().mul(&y.gauge_scale().unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn cocycle_matches_components() {
    for seed in 0..10 {
        let g = random_element(2, 3, seed).unwrap();
        let parts = GammaElement::unitary(g.clone()).homogeneous_decompose().unwrap();
        for w in Word::all_up_to(2, 4) {
            let x = BoundaryPoint::Finite(w.clone());
            let k = g.cocycle_degree(&g.inverse().act(&x).unwrap()).unwrap();
            let part = &parts[&k];
            let val = part.coefficient(&g).unwrap().eval(&x).unwrap();
            assert!(val.is_one(), "seed {seed} word {w}");
        }
    }
}

#[test]
fn parse_print_round_trip() {
    for s in [
        "0",
        "Z(1) * L[G2[identity]]",
        "(Z(1) + 2*P(e)) * L[G2[Z(1)->Z(2), Z(2)->Z(1); e->e]] + t*Z(2) * L[G2[identity]]",
        "L[G2[Z(1)->Z(2), Z(2)->Z(1); e->e]]",
    ] {
        let x = ge(s);
        assert_eq!(ge(&x.to_string()), x, "{s}");
    }
    assert!(GammaElement::parse("Z(1) * L[G2[Z(1)->Z(1); e->e]]", 2).is_err());
    assert!(GammaElement::parse("Z(1) * L[V2[1->2, 2->1]]", 2).is_err());
    assert!(GammaElement::parse("Zinf(1)", 2).is_err());
}
