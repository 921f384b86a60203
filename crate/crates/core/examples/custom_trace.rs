//! Supercritical states from a user-supplied trace on the stabilizer of the
//! root. Black-box traces are evaluated by truncation with a rigorous
//! error bound.

use thompson_kms::crossed::GammaElement;
use thompson_kms::groups::{FinitePermutation, GammaTable};
use thompson_kms::kms::{eval_supercritical_with, StabilizerTrace, TraceSpec};
use thompson_kms::scalar::rat;
use thompson_kms::{Result, Scalar};

/// The sign character, seen only through its values.
struct Opaque;

impl StabilizerTrace for Opaque {
    fn eval(&self, g: &GammaTable) -> Result<Scalar> {
        TraceSpec::sign().eval(g)
    }
}

fn main() -> Result<()> {
    let swap = FinitePermutation::parse("(21 22)", 2)?.to_gamma();
    let x = GammaElement::parse(&format!("(Z(1) + 3*P(2)) * L[{swap}] + Z(21)"), 2)?;
    let exact = eval_supercritical_with(2, &TraceSpec::sign(), Some(rat(1, 5)), 16, &x)?;
    println!("closed form: {exact}");
    for depth in [2, 4, 6, 8] {
        println!("depth {depth:2}: {}", eval_supercritical_with(2, &Opaque, Some(rat(1, 5)), depth, &x)?);
    }
    Ok(())
}
