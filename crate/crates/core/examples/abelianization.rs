//! The ℤ/2 invariants of V_n and Γ_n, normal closures and the factorization
//! through commuting elements.

use thompson_kms::groups::{
    abelianize_gamma, classify_normal_closure, commutator, factor_commuting, fixed_structure, random_element,
    sign_vn, FinitePermutation, GammaTable, VnTable,
};
use thompson_kms::Result;

fn main() -> Result<()> {
    let g0 = VnTable::parse("V3[1->2, 2->1, 3->3]")?;
    println!("sign({g0}) = {}", sign_vn(&g0));

    let u0 = GammaTable::parse("G2[Z(1)->Z(2), Z(2)->Z(1); e->e]")?;
    let transposition = FinitePermutation::parse("(e 1)", 2)?.to_gamma();
    let three_cycle = FinitePermutation::parse("(1 2 11)", 2)?.to_gamma();
    for g in [&u0, &transposition, &three_cycle, &commutator(&u0, &transposition)] {
        println!("{g}: ab = {}, closure = {}", abelianize_gamma(g)?, classify_normal_closure(g)?);
    }

    // For odd n the abelianization ignores finitary permutations.
    let odd = FinitePermutation::parse("(e 1)", 3)?.to_gamma();
    println!("n = 3, (e 1): ab = {}", abelianize_gamma(&odd)?);

    // Split g = c k where c commutes with h and k is finitary.
    let h = FinitePermutation::parse("(1 2)", 2)?;
    let g = u0.compose(&random_element(2, 2, 3)?);
    let (c, k) = factor_commuting(&h, &g)?;
    println!("g = {g}\n  c = {c}\n  k = {k}");

    let fixed = fixed_structure(&g);
    println!("identity cylinders {:?}, fixed singletons {:?}", fixed.identity_cylinders, fixed.fixed_singletons);
    Ok(())
}
