//! KMS states on the crossed products: the unique state for V_n and the
//! supercritical and critical families for Γ_n.

use thompson_kms::crossed::{GammaElement, VnElement};
use thompson_kms::groups::FinitePermutation;
use thompson_kms::kms::{check_kms_condition, eval_state, measure_eval, StateSpec, TraceSpec};
use thompson_kms::scalar::rat;
use thompson_kms::words::{SimpleFunction, Space};
use thompson_kms::Result;

fn main() -> Result<()> {
    let vn = StateSpec::vn_kms(2)?;
    let z = VnElement::parse("Zinf(12) * L[V2[1->2, 2->1]] + Zinf(1)", 2)?;
    println!("{vn}: ψ({z}) = {}", eval_state(&vn, &z)?);

    // Supercritical states take a trace on the finitary permutations and
    // 0 < t < 1/n; leaving t symbolic gives polynomials in t.
    let u0 = "G2[Z(1)->Z(2), Z(2)->Z(1); e->e]";
    let swap = FinitePermutation::parse("(e 1)", 2)?.to_gamma();
    let x = GammaElement::parse(&format!("P(e) + Z(1) * L[{u0}] + 3*P(11) * L[{swap}]"), 2)?;
    for trace in TraceSpec::builtin() {
        let symbolic = StateSpec::supercritical(2, trace.clone(), None, 16)?;
        let third = StateSpec::supercritical(2, trace, Some(rat(1, 3)), 16)?;
        println!("{symbolic}: {}  (t = 1/3: {})", eval_state(&symbolic, &x)?, eval_state(&third, &x)?);
    }
    let sup = StateSpec::parse("gamma-sup:n=2,t=t,trace=canonical,L=16")?;
    let f = SimpleFunction::parse("P(e) + Z(2)", Some(Space::Path), 2)?;
    println!("measure of P(e) + Z(2) = {}", measure_eval(&sup, &f)?);

    // At t = 1/n the state factors through the conditional expectation.
    let crit = StateSpec::critical(2, TraceSpec::sign())?;
    let y = GammaElement::parse(&format!("Z(1) * L[{}]", FinitePermutation::parse("(11 12)", 2)?.to_gamma()), 2)?;
    println!("{crit}: ψ(x) = {}, ψ({y}) = {}", eval_state(&crit, &x)?, eval_state(&crit, &y)?);

    // The KMS condition ψ(ab) = ψ(b γ(a)) holds identically in t.
    let a = GammaElement::parse(&format!("Z(1) * L[{u0}]"), 2)?;
    let report = check_kms_condition(&sup, &a, &a.adjoint())?;
    println!("KMS condition: {} ({} vs {})", report.holds, report.lhs, report.rhs);

    println!("t = 1/2 is rejected: {}", StateSpec::supercritical(2, TraceSpec::Canonical, Some(rat(1, 2)), 16).unwrap_err());
    Ok(())
}
