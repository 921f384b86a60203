//! The Toeplitz algebra E_n, the Cuntz algebra O_n and the Fock representation.

use thompson_kms::algebra::{AlgebraElement, AlgebraMode, Phi};
use thompson_kms::scalar::rat;
use thompson_kms::words::Word;
use thompson_kms::Result;

fn main() -> Result<()> {
    let e2 = AlgebraMode::Toeplitz(2);
    let o2 = AlgebraMode::Cuntz(2);

    // In E_n the range projections do not sum to 1; the gap is the vacuum.
    let sum = AlgebraElement::parse("T[1]T*[1] + T[2]T*[2]", e2)?;
    let one = AlgebraElement::one(e2);
    println!("1 - ΣT_iT_i* = {}", one.sub(&sum)?);
    println!("vacuum projection = {}", AlgebraElement::vacuum_projection(e2));
    println!("in O_2: ΣS_iS_i* = 1 is {}", AlgebraElement::parse("S[1]S*[1] + S[2]S*[2]", o2)?.equals(&AlgebraElement::one(o2))?);

    // Operators act on the basis δ_w of ℓ²(words).
    let a = AlgebraElement::parse("T[1]T*[2] + 2*T[12]", e2)?;
    for w in [Word::empty(), Word::new(vec![2]), Word::new(vec![2, 1])] {
        let image: Vec<String> = a.fock_apply(&w)?.iter().map(|(u, c)| format!("{c}·δ_{u}")).collect();
        println!("a δ_{w} = {}", image.join(" + "));
    }

    // Gauge grading and the algebra-level states.
    let x = a.adjoint().mul(&a)?;
    println!("a*a = {x}");
    for (k, part) in a.grade_decompose() {
        println!("  degree {k}: {part}");
    }
    let kms = x.phi(Phi::ToeplitzKms)?;
    println!("φ_t(a*a) = {kms}, at t = 1/3: {}", kms.eval(&rat(1, 3))?);
    println!("vacuum(a*a) = {}", x.phi(Phi::Ground)?);

    // The unitary of O_2 exchanging the two generators.
    let u = AlgebraElement::parse("S[1]S*[2] + S[2]S*[1]", o2)?;
    println!("{u} unitary: {}", u.is_unitary()?);
    Ok(())
}
