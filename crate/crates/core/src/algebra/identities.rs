//! Matrix identities from the abelianization computations, as
//! `(A, B, C, expected)` with `A·B·C = expected`.

use crate::error::Result;

use super::{AlgebraMatrix, AlgebraMode};

fn sum(terms: impl Iterator<Item = String>) -> String {
    let v: Vec<String> = terms.collect();
    if v.is_empty() {
        "0".into()
    } else {
        v.join(" + ")
    }
}

fn build(mode: AlgebraMode, rows: &[&[&str]]) -> Result<AlgebraMatrix> {
    let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
    AlgebraMatrix::from_strings(mode, &rows)
}

/// The 3×3 identity exhibiting the flip `T_1T_2^* + T_2T_1^* + e_n` as a
/// product of a permutation matrix and its conjugating factors.
pub fn flip_identity(n: u8) -> Result<[AlgebraMatrix; 4]> {
    let mode = AlgebraMode::Toeplitz(n);
    Ok([
        build(mode, &[&["T[2]", "T[1]", "E"], &["0", "0", "T*[1]"], &["0", "0", "T*[2]"]])?,
        build(mode, &[&["0", "1", "0"], &["1", "0", "0"], &["0", "0", "1"]])?,
        build(mode, &[&["T*[2]", "0", "0"], &["T*[1]", "0", "0"], &["E", "T[1]", "T[2]"]])?,
        build(mode, &[&["T[1]T*[2] + T[2]T*[1] + E", "0", "0"], &["0", "1", "0"], &["0", "0", "1"]])?,
    ])
}

/// The 2×2 identity relating the transposition `(1, v_0)` to a diagonal
/// unitary.
pub fn transposition_identity(n: u8) -> Result<[AlgebraMatrix; 4]> {
    let mode = AlgebraMode::Toeplitz(n);
    let tail = sum((2..=n).map(|k| format!("T[{k}]T*[{k}]")));
    let full = sum((1..=n).map(|k| format!("T[{k}]T*[{k}]")));
    let below_one = sum((1..=n).map(|k| format!("T[1{k}]T*[1{k}]")));
    let a11 = format!("T[1](1 - E)T*[1] + {tail} + T[1]E");
    let c11 = format!("T[1](1 - E)T*[1] + {tail} + ET*[1]");
    let d11 = format!("T[1]E + ET*[1] + {below_one} + {tail}");
    Ok([
        build(mode, &[&[&a11, "E"], &["ET*[1]", "1 - E"]])?,
        build(mode, &[&[&full, "E"], &["E", &full]])?,
        build(mode, &[&[&c11, "T[1]E"], &["E", "1 - E"]])?,
        build(mode, &[&[&d11, "0"], &["0", "1"]])?,
    ])
}
