//! Γ_n and V_n as tables: composition, inverses, the action on the
//! boundary path space, the cocycle and the exact sequence Γ_n → V_n.

use thompson_kms::groups::{FinitePermutation, GammaTable, VnTable};
use thompson_kms::words::{BoundaryPoint, Word};
use thompson_kms::Result;

fn main() -> Result<()> {
    // Swap the two halves of the tree and keep the root fixed.
    let u0 = GammaTable::parse("G2[Z(1)->Z(2), Z(2)->Z(1); e->e]")?;
    println!("u0        = {u0}");
    println!("u0 ∘ u0   = {}", u0.compose(&u0));
    println!("u0^-1     = {}", u0.inverse());

    // A finite word and an eventually periodic infinite word.
    let x = BoundaryPoint::finite(Word::new(vec![1, 2]));
    let y = BoundaryPoint::periodic(Word::new(vec![1]), Word::new(vec![2, 1]))?;
    for p in [&x, &y] {
        println!("u0·{p} = {}, cocycle {}", u0.act(p)?, u0.cocycle_degree(p)?);
    }

    // Tables with singleton rows can change lengths of finite words.
    let g = GammaTable::parse("G2[Z(11)->Z(1), Z(12)->Z(21), Z(2)->Z(22); e->e, 1->2]")?;
    println!("g         = {g}");
    println!("π(g)      = {}", g.pi_project());
    println!("g·11      = {}", g.act(&BoundaryPoint::finite(Word::new(vec![1, 1])))?);

    // V_n elements lift back to Γ_n; finitary permutations sit in the kernel.
    let v = VnTable::parse("V2[1->2, 2->1]")?;
    println!("lift(v)   = {}  (Fredholm count {})", v.lift(), v.fredholm_count());
    let p = FinitePermutation::parse("(e 1)(11 12)", 2)?;
    println!("{p} as a table = {}, π = {}", p.to_gamma(), p.to_gamma().pi_project());
    Ok(())
}
