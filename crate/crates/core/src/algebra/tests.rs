use super::identities::{flip_identity, transposition_identity};
use super::*;
use crate::groups::{random_element, GammaTable, VnTable};

const T2: AlgebraMode = AlgebraMode::Toeplitz(2);
const O2: AlgebraMode = AlgebraMode::Cuntz(2);

fn a(s: &str) -> AlgebraElement {
    AlgebraElement::parse(s, T2).unwrap()
}

fn o(s: &str) -> AlgebraElement {
    AlgebraElement::parse(s, O2).unwrap()
}

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

#[test]
fn products() {
    assert_eq!(a("T[1]T*[2]").mul(&a("T[2]T*[1]")).unwrap(), a("T[1]T*[1]"));
    assert!(a("T*[1]").mul(&a("T[2]")).unwrap().is_zero());
    assert!(a("E").mul(&a("T[1]")).unwrap().is_zero());
    assert_eq!(a("E T[1]"), a("0"));
    assert_eq!(a("T*[1] T[1]"), a("1"));
}

#[test]
fn adjoints() {
    assert_eq!(a("T[1]T*[2]").adjoint(), a("T[2]T*[1]"));
    assert_eq!(a("E").adjoint(), a("E"));
    assert_eq!(a("3t*T[11]").adjoint(), a("3t*T*[11]"));
}

#[test]
fn equality_modes() {
    assert!(o("S[1]S*[1] + S[2]S*[2]").equals(&o("1")).unwrap());
    assert!(!a("T[1]T*[1] + T[2]T*[2]").equals(&a("1")).unwrap());
    assert!(o("S[1]").equals(&o("S[11]S*[1] + S[12]S*[2]")).unwrap());
    assert!(o("E").equals(&o("0")).unwrap());
    assert!(a("T[1]").equals(&o("S[1]")).is_err());
}

#[test]
fn group_elements() {
    let u0 = GammaTable::parse("G2[Z(1)->Z(2), Z(2)->Z(1); e->e]").unwrap();
    assert_eq!(AlgebraElement::from_gamma(&u0), a("(1 - T[1]T*[1] - T[2]T*[2]) + T[1]T*[2] + T[2]T*[1]"));
    assert_eq!(AlgebraElement::from_gamma(&GammaTable::identity(2)), a("1"));
    let g0 = VnTable::parse("V3[1->2, 2->1, 3->3]").unwrap();
    let o3 = AlgebraMode::Cuntz(3);
    assert_eq!(
        AlgebraElement::from_vn(&g0),
        AlgebraElement::parse("S[1]S*[2] + S[2]S*[1] + S[3]S*[3]", o3).unwrap()
    );
    assert!(AlgebraElement::from_gamma(&u0).is_unitary().unwrap());
    assert!(AlgebraElement::from_vn(&g0).is_unitary().unwrap());
    assert!(!a("T[1]").is_unitary().unwrap());
    assert!(!o("S[1]").is_unitary().unwrap());
}

#[test]
fn fock() {
    let out = a("T[1]T*[2]").fock_apply(&w("21")).unwrap();
    assert_eq!(out.into_iter().collect::<Vec<_>>(), vec![(w("11"), Scalar::one())]);
    assert_eq!(a("E").fock_apply(&w("e")).unwrap().len(), 1);
    assert!(a("E").fock_apply(&w("1")).unwrap().is_empty());
    for seed in 0..20 {
        let g = random_element(2, 3, seed).unwrap();
        let x = AlgebraElement::from_gamma(&g);
        for v in Word::all_up_to(2, 4) {
            let img = x.fock_apply(&v).unwrap();
            assert_eq!(img.into_iter().collect::<Vec<_>>(), vec![(g.act_word(&v), Scalar::one())]);
        }
    }
}

#[test]
fn grading_and_gauge() {
    let d = a("T[1] + T[2]T*[11]").grade_decompose();
    assert_eq!(d[&1], a("T[1]"));
    assert_eq!(d[&-1], a("T[2]T*[11]"));
    assert_eq!(a("T[1]T*[2]").grade_decompose().keys().copied().collect::<Vec<_>>(), vec![0]);
    assert_eq!(a("T[1]").gauge_scale(), a("t T[1]"));
    assert_eq!(a("T[1]").gauge_scale().gauge_scale(), a("t^2 T[1]"));
    assert_eq!(a("E + T[1]T*[2]").gauge_scale(), a("E + T[1]T*[2]"));
}

#[test]
fn functionals() {
    assert_eq!(a("T[1]T*[1]").phi(Phi::ToeplitzKms).unwrap(), "t".parse().unwrap());
    assert_eq!(a("E").phi(Phi::ToeplitzKms).unwrap(), "1 - 2t".parse().unwrap());
    assert!(a("T[1]T*[1]").phi(Phi::Ground).unwrap().is_zero());
    assert!(a("1").phi(Phi::Ground).unwrap().is_one());
    assert_eq!(o("S[1]S*[1]").phi(Phi::CuntzKms).unwrap(), "1/2".parse().unwrap());
    assert!(o("S[1]").phi(Phi::Ground).is_err());
}

#[test]
fn matrix_identities() {
    for n in [2, 3] {
        let [x, y, z, e] = flip_identity(n).unwrap();
        assert!(matrix_check(&x, &y, &z, &e).unwrap(), "flip n={n}");
        let [x, y, z, e] = transposition_identity(n).unwrap();
        assert!(matrix_check(&x, &y, &z, &e).unwrap(), "transposition n={n}");
        let id = AlgebraMatrix::identity(AlgebraMode::Toeplitz(n), 3).unwrap();
        assert!(matrix_check(&id, &id, &id, &id).unwrap());
    }
    let [x, y, _, e] = flip_identity(2).unwrap();
    assert!(!matrix_check(&x, &y, &y, &e).unwrap());
}

#[test]
fn display_round_trip() {
    for s in ["0", "1", "E", "T[1]T*[2] + 3/2*T*[11]", "(1 - t)*T[2] + t^-1"] {
        let x = a(s);
        assert_eq!(a(&x.to_string()), x, "{s} -> {x}");
    }
    let x = o("S[1]S*[2] - S[2]");
    assert_eq!(o(&x.to_string()), x);
}
