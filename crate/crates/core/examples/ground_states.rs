//! Ground states of C(∂E_n) ⋊ Γ_n: concentrated on the root and given by a
//! state of the stabilizer.

use thompson_kms::crossed::GammaElement;
use thompson_kms::groups::{FinitePermutation, GammaTable};
use thompson_kms::kms::{check_ground_condition, eval_state, StateSpec, TraceSpec};
use thompson_kms::Result;

fn main() -> Result<()> {
    let ground = StateSpec::ground(2, TraceSpec::sign())?;
    // λ_g only counts when g fixes the root; the sign then sees its cycles.
    let moves_root = FinitePermutation::parse("(e 1)", 2)?.to_gamma();
    let fixes_root = FinitePermutation::parse("(1 2)", 2)?.to_gamma();
    let u0 = "G2[Z(1)->Z(2), Z(2)->Z(1); e->e]";
    for src in ["P(e)".to_string(), "Z(1)".into(), format!("L[{moves_root}]"), format!("L[{fixes_root}]"), format!("P(e) * L[{u0}]")] {
        let x = GammaElement::parse(&src, 2)?;
        println!("{ground}: ψ({x}) = {}", eval_state(&ground, &x)?);
    }

    // ψ(b a) = 0 whenever a is homogeneous of negative degree.
    let g = GammaTable::parse("G2[Z(11)->Z(1), Z(12)->Z(21), Z(2)->Z(22); e->e, 1->2]")?;
    for (k, part) in GammaElement::unitary(g).homogeneous_decompose()? {
        let report = check_ground_condition(&ground, &part, &part.adjoint())?;
        println!("degree {k}: condition holds {}, ψ(a* a) = {}", report.holds, report.value);
    }
    Ok(())
}
