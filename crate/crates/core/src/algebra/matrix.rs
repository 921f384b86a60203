use std::fmt;

use crate::error::{Error, Result};

use super::{AlgebraElement, AlgebraMode};

pub const MAX_MATRIX: usize = 4;

/// A square matrix of algebra elements of one mode, at most 4×4.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraMatrix {
    mode: AlgebraMode,
    entries: Vec<Vec<AlgebraElement>>,
}

impl AlgebraMatrix {
    pub fn new(mode: AlgebraMode, entries: Vec<Vec<AlgebraElement>>) -> Result<Self> {
        let k = entries.len();
        if k == 0 || k > MAX_MATRIX {
            return Err(Error::input(format!("matrix size {k} outside 1..={MAX_MATRIX}")));
        }
        for row in &entries {
            if row.len() != k {
                return Err(Error::input("matrix is not square"));
            }
            if let Some(a) = row.iter().find(|a| a.mode() != mode) {
                return Err(Error::mode(format!("entry in {} inside a {mode} matrix", a.mode())));
            }
        }
        Ok(AlgebraMatrix { mode, entries })
    }

    pub fn identity(mode: AlgebraMode, k: usize) -> Result<Self> {
        let entries = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        if i == j {
                            AlgebraElement::one(mode)
                        } else {
                            AlgebraElement::zero(mode)
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(mode, entries)
    }

    /// Rows of element strings, e.g. `[["T[2]","T[1]","E"],["0","0","T*[1]"],…]`.
    pub fn from_strings(mode: AlgebraMode, rows: &[Vec<String>]) -> Result<Self> {
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|s| AlgebraElement::parse(s, mode)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(mode, entries)
    }

    /// Parse a JSON array of arrays of element strings.
    pub fn from_json(mode: AlgebraMode, json: &str) -> Result<Self> {
        let rows: Vec<Vec<String>> =
            serde_json::from_str(json).map_err(|e| Error::input(format!("matrix JSON: {e}")))?;
        Self::from_strings(mode, &rows)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &AlgebraElement {
        &self.entries[i][j]
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect()
    }

    pub fn mul(&self, other: &AlgebraMatrix) -> Result<Self> {
        if self.size() != other.size() || self.mode != other.mode {
            return Err(Error::input("matrix sizes or modes differ"));
        }
        let k = self.size();
        let mut entries = Vec::with_capacity(k);
        for i in 0..k {
            let mut row = Vec::with_capacity(k);
            for j in 0..k {
                let mut acc = AlgebraElement::zero(self.mode);
                for l in 0..k {
                    acc = acc.add(&self.entries[i][l].mul(&other.entries[l][j])?)?;
                }
                row.push(acc);
            }
            entries.push(row);
        }
        Ok(AlgebraMatrix {
            mode: self.mode,
            entries,
        })
    }

    /// Entrywise equality in the algebra.
    pub fn equals(&self, other: &AlgebraMatrix) -> Result<bool> {
        if self.size() != other.size() {
            return Err(Error::input("matrix sizes differ"));
        }
        for (r, s) in self.entries.iter().zip(&other.entries) {
            for (a, b) in r.iter().zip(s) {
                if !a.equals(b)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Whether `A·B·C = expected`.
pub fn matrix_check(a: &AlgebraMatrix, b: &AlgebraMatrix, c: &AlgebraMatrix, expected: &AlgebraMatrix) -> Result<bool> {
    a.mul(b)?.mul(c)?.equals(expected)
}

impl fmt::Display for AlgebraMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(" | "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraMatrix[{}]\n{self}", self.mode)
    }
}
