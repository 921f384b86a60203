//! Crossed products C(∂E_n) ⋊ Γ_n and C(∂O_n) ⋊ V_n: products, adjoints,
//! conditional expectations and the gauge grading.

use thompson_kms::crossed::{GammaElement, VnElement};
use thompson_kms::Result;

fn main() -> Result<()> {
    let u0 = "G2[Z(1)->Z(2), Z(2)->Z(1); e->e]";
    let x = GammaElement::parse(&format!("Z(1) * L[{u0}] + 2*P(e)"), 2)?;
    let y = GammaElement::parse("Z(2) + P(1)", 2)?;
    println!("x    = {x}");
    println!("x*   = {}", x.adjoint());
    println!("x y  = {}", x.mul(&y)?);
    println!("x*x  = {}", x.adjoint().mul(&x)?);
    println!("E(x) = {}", x.expectation());

    // λ_g for a length-changing g splits into homogeneous parts.
    let g = GammaElement::parse("L[G2[Z(11)->Z(1), Z(12)->Z(21), Z(2)->Z(22); e->e, 1->2]]", 2)?;
    for (k, part) in g.homogeneous_decompose()? {
        println!("degree {k}: {part}");
    }

    let z = VnElement::parse("Zinf(1) * L[V2[1->2, 2->1]]", 2)?;
    println!("in C(∂O_2) ⋊ V_2: z z* = {}", z.mul(&z.adjoint())?);
    Ok(())
}
