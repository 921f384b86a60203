use super::*;
use crate::crossed::{GammaElement, VnElement};
use crate::groups::FinitePermutation;

const U0: &str = "G2[Z(1)->Z(2), Z(2)->Z(1); e->e]";

fn ge(s: &str) -> GammaElement {
    GammaElement::parse(s, 2).unwrap()
}

fn f(s: &str) -> SimpleFunction {
    SimpleFunction::parse(s, Some(Space::Path), 2).unwrap()
}

fn sup(trace: TraceSpec, t: Option<Rational>) -> StateSpec {
    StateSpec::supercritical(2, trace, t, 8).unwrap()
}

fn value(spec: &StateSpec, x: &GammaElement) -> Scalar {
    eval_state(spec, x).unwrap().value
}

#[test]
fn measures() {
    let s = sup(TraceSpec::Canonical, None);
    assert_eq!(measure_eval(&s, &f("P(e)")).unwrap().value, "1 - 2t".parse().unwrap());
    assert_eq!(measure_eval(&s, &f("Z(1)")).unwrap().value, Scalar::t());
    let c = StateSpec::critical(2, TraceSpec::Canonical).unwrap();
    assert_eq!(measure_eval(&c, &f("Z(1)")).unwrap().value, Scalar::constant(rat(1, 2)));
    assert!(measure_eval(&c, &f("P(1)")).unwrap().value.is_zero());
    let v = StateSpec::vn_kms(2).unwrap();
    assert!(measure_eval(&v, &f("Z(1)")).is_err());
}

#[test]
fn point_masses_sum_to_cylinder() {
    let third = rat(1, 3);
    let s = sup(TraceSpec::Canonical, Some(third.clone()));
    let depth = 12;
    let mut total = Rational::zero();
    for w in Word::all_up_to(2, depth) {
        if Word::letter(1).is_prefix_of(&w) {
            let set = SimpleFunction::indicator(Space::Path, 2, BasicSet::Point(w)).unwrap();
            total += measure_eval(&s, &set).unwrap().value.as_constant().unwrap();
        }
    }
    let closed = measure_eval(&s, &f("Z(1)")).unwrap().value.as_constant().unwrap();
    assert_eq!(closed, third.clone());
    assert!(closed - total <= pow(&(rat(2, 1) * third), depth as i32 + 1));
}

#[test]
fn state_examples() {
    let v = StateSpec::vn_kms(2).unwrap();
    let x = VnElement::parse("Zinf(1)", 2).unwrap();
    assert_eq!(eval_state(&v, &x).unwrap().value, Scalar::constant(rat(1, 2)));
    let swap = VnElement::parse("L[V2[1->2, 2->1]]", 2).unwrap();
    assert!(eval_state(&v, &swap).unwrap().value.is_zero());

    let crit = StateSpec::critical(2, TraceSpec::sign()).unwrap();
    let tr = FinitePermutation::parse("(e 1)", 2).unwrap().to_gamma();
    assert_eq!(value(&crit, &GammaElement::unitary(tr)), Scalar::int(-1));

    let ground = StateSpec::ground(2, TraceSpec::Canonical).unwrap();
    assert!(value(&ground, &ge("P(e)")).is_one());
    assert!(value(&ground, &ge("Z(1)")).is_zero());
}

#[test]
fn states_are_unital() {
    let specs = [
        StateSpec::critical(2, TraceSpec::sign()).unwrap(),
        StateSpec::ground(2, TraceSpec::trivial()).unwrap(),
        sup(TraceSpec::Canonical, None),
        sup(TraceSpec::sign(), Some(rat(1, 5))),
    ];
    for s in &specs {
        assert!(value(s, &GammaElement::one(2)).is_one(), "{s}");
    }
    assert!(eval_state(&StateSpec::vn_kms(3).unwrap(), &VnElement::one(3)).unwrap().value.is_one());
}

#[test]
fn threshold() {
    assert!(StateSpec::supercritical(2, TraceSpec::Canonical, Some(rat(1, 2)), 16).is_err());
    assert!(StateSpec::supercritical(3, TraceSpec::Canonical, Some(rat(1, 3)), 16).is_err());
    assert!(StateSpec::supercritical(2, TraceSpec::Canonical, Some(rat(0, 1)), 16).is_err());
    let msg = StateSpec::parse("gamma-sup:n=2,t=1/2").unwrap_err().to_string();
    assert!(msg.contains("Kraft"), "{msg}");
}

#[test]
fn descriptor_strings() {
    for s in [
        "vn-kms:n=2",
        "gamma-sup:n=2,t=1/3,trace=canonical,L=16",
        "gamma-sup:n=3,t=t,trace=thoma[a=;b=1],L=4",
        "gamma-crit:n=2,trace=thoma[a=1/2,1/2;b=]",
        "gamma-ground:n=2,state=canonical",
    ] {
        assert_eq!(StateSpec::parse(s).unwrap().to_string(), s);
    }
    assert!(StateSpec::parse("gamma-warm:n=2").is_err());
    assert!(StateSpec::parse("gamma-crit:trace=sign").is_err());
}

#[test]
fn json_shape() {
    let r = EvalResult::exact("1 - 2t".parse().unwrap());
    assert_eq!(r.to_json(), serde_json::json!({"value": "1 - 2t", "error_bound": "0", "exact": true}));
}

#[test]
fn kms_examples() {
    let v = StateSpec::vn_kms(2).unwrap();
    let a = VnElement::parse("Zinf(1) * L[V2[1->2, 2->1]]", 2).unwrap();
    let r = check_kms_condition(&v, &a, &a.adjoint()).unwrap();
    assert!(r.holds);
    assert_eq!(r.lhs.value, Scalar::constant(rat(1, 2)));

    let one = GammaElement::one(2);
    let c = StateSpec::critical(2, TraceSpec::Canonical).unwrap();
    assert!(check_kms_condition(&c, &one, &one).unwrap().holds);
    let u = ge(&format!("Z(1) * L[{U0}]"));
    let b = ge("Z(2)");
    assert!(check_kms_condition(&c, &u, &b).unwrap().holds);
    assert!(check_kms_condition(&sup(TraceSpec::Canonical, None), &u, &u.adjoint()).unwrap().holds);
    let ground = StateSpec::ground(2, TraceSpec::Canonical).unwrap();
    assert!(check_kms_condition(&ground, &u, &b).is_err());
}

#[test]
fn invariant_trace_matches_black_box_sum() {
    struct Opaque(TraceSpec);
    impl StabilizerTrace for Opaque {
        fn eval(&self, g: &GammaTable) -> Result<Scalar> {
            self.0.eval(g)
        }
    }
    let t = rat(1, 5);
    let tr = FinitePermutation::parse("(11 12)", 2).unwrap().to_gamma();
    let x = ge(&format!("(Z(2) + 3*P(1)) * L[{tr}] + Z(21)"));
    for trace in TraceSpec::builtin() {
        let exact = eval_supercritical_with(2, &trace, Some(t.clone()), 8, &x).unwrap();
        assert!(exact.exact);
        let approx = eval_supercritical_with(2, &Opaque(trace.clone()), Some(t.clone()), 8, &x).unwrap();
        assert!(!approx.exact);
        let diff = (&exact.value - &approx.value).as_constant().unwrap();
        assert!(diff.abs() <= approx.error_bound, "{trace}: {exact} vs {approx}");
        assert!(eval_supercritical_with(2, &Opaque(trace), None, 8, &x).is_err());
    }
}

#[test]
fn ground_condition() {
    let ground = StateSpec::ground(2, TraceSpec::Canonical).unwrap();
    let a = GammaTable::parse("G2[Z(11)->Z(1), Z(12)->Z(21), Z(2)->Z(22); e->e, 1->2]").unwrap();
    let parts = GammaElement::unitary(a).homogeneous_decompose().unwrap();
    for (k, part) in &parts {
        let r = check_ground_condition(&ground, part, &part.adjoint()).unwrap();
        assert!(r.holds);
        assert_eq!(r.degree, Some(*k));
    }
    let mixed = GammaElement::unitary(GammaTable::parse("G2[Z(11)->Z(1), Z(12)->Z(21), Z(2)->Z(22); e->e, 1->2]").unwrap());
    assert!(check_ground_condition(&ground, &mixed, &mixed).is_err());
}

#[test]
fn trace_invariance() {
    let u0 = GammaTable::parse(U0).unwrap();
    let tr = FinitePermutation::parse("(e 1)", 2).unwrap().to_gamma();
    assert!(check_trace_invariance(&TraceSpec::sign(), &u0, &tr).unwrap());
    assert!(check_trace_invariance(&TraceSpec::Canonical, &tr, &u0).is_err());
    for seed in 0..10 {
        let g = crate::groups::random_element(2, 3, seed).unwrap();
        let h = crate::groups::random_permutation(2, 3, seed).unwrap().to_gamma();
        for t in TraceSpec::builtin() {
            assert!(check_trace_invariance(&t, &g, &h).unwrap());
        }
    }
}
