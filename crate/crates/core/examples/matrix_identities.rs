//! Matrix identities over E_n that witness elements as products of
//! commutators or transpositions.

use thompson_kms::algebra::identities::{flip_identity, transposition_identity};
use thompson_kms::algebra::{matrix_check, AlgebraMatrix, AlgebraMode};
use thompson_kms::Result;

fn main() -> Result<()> {
    for n in [2, 3] {
        let [a, b, c, expected] = flip_identity(n)?;
        println!("n = {n}: flip identity holds: {}", matrix_check(&a, &b, &c, &expected)?);
        let [a, b, c, expected] = transposition_identity(n)?;
        println!("n = {n}: transposition identity holds: {}", matrix_check(&a, &b, &c, &expected)?);
    }

    // Matrices can also be given as JSON arrays of expressions.
    let mode = AlgebraMode::Cuntz(2);
    let u = AlgebraMatrix::from_json(mode, r#"[["S[1]S*[2] + S[2]S*[1]"]]"#)?;
    let one = AlgebraMatrix::identity(mode, 1)?;
    println!("u·u·1 = 1: {}", matrix_check(&u, &u, &one, &one)?);
    Ok(())
}
