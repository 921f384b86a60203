use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::parse::{Cursor, Tok};
use crate::words::{check_alphabet, parse_word, Word};

use super::GammaTable;

/// A finitely supported permutation of the finite words, stored as its
/// moved points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinitePermutation {
    n: u8,
    map: BTreeMap<Word, Word>,
}

impl FinitePermutation {
    pub fn identity(n: u8) -> Self {
        FinitePermutation {
            n,
            map: BTreeMap::new(),
        }
    }

    /// From `(w, σ(w))` pairs; fixed pairs are dropped.
    pub fn from_pairs(n: u8, pairs: &[(Word, Word)]) -> Result<Self> {
        check_alphabet(n)?;
        let mut map = BTreeMap::new();
        for (a, b) in pairs {
            a.validate(n)?;
            b.validate(n)?;
            if map.insert(a.clone(), b.clone()).is_some() {
                return Err(Error::input(format!("{a} is listed twice")));
            }
        }
        let mut images: Vec<&Word> = map.values().collect();
        images.sort();
        let mut keys: Vec<&Word> = map.keys().collect();
        keys.sort();
        if images != keys || images.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::input("pairs do not define a permutation of their support"));
        }
        map.retain(|a, b| a != b);
        Ok(FinitePermutation { n, map })
    }

    pub fn transposition(n: u8, a: &Word, b: &Word) -> Result<Self> {
        Self::from_pairs(n, &[(a.clone(), b.clone()), (b.clone(), a.clone())])
    }

    /// A cycle `w_0 ↦ w_1 ↦ … ↦ w_0`.
    pub fn cycle(n: u8, words: &[Word]) -> Result<Self> {
        let pairs: Vec<(Word, Word)> = (0..words.len())
            .map(|i| (words[i].clone(), words[(i + 1) % words.len()].clone()))
            .collect();
        Self::from_pairs(n, &pairs)
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Word, &Word)> {
        self.map.iter()
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    pub fn support(&self) -> Vec<Word> {
        self.map.keys().cloned().collect()
    }

    /// Longest word moved; `None` for the identity.
    pub fn support_depth(&self) -> Option<usize> {
        self.map.keys().map(Word::len).max()
    }

    pub fn apply(&self, w: &Word) -> Word {
        self.map.get(w).cloned().unwrap_or_else(|| w.clone())
    }

    pub fn inverse(&self) -> Self {
        FinitePermutation {
            n: self.n,
            map: self.map.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FinitePermutation) -> Self {
        let mut map = BTreeMap::new();
        for w in self.map.keys().chain(other.map.keys()) {
            let img = self.apply(&other.apply(w));
            if &img != w {
                map.insert(w.clone(), img);
            }
        }
        FinitePermutation { n: self.n, map }
    }

    /// Lengths of the nontrivial cycles, sorted.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        for start in self.map.keys() {
            if seen.contains(start) {
                continue;
            }
            let mut len = 0;
            let mut w = start.clone();
            loop {
                seen.insert(w.clone());
                len += 1;
                w = self.apply(&w);
                if &w == start {
                    break;
                }
            }
            out.push(len);
        }
        out.sort_unstable();
        out
    }

    /// 1 for odd permutations, 0 for even ones.
    pub fn parity(&self) -> u8 {
        (self.cycle_type().iter().map(|k| k - 1).sum::<usize>() % 2) as u8
    }

    /// The table fixing every word of length `N + 1` below it and permuting
    /// the words of length at most `N`, where `N` is the support depth.
    pub fn to_gamma(&self) -> GammaTable {
        let Some(depth) = self.support_depth() else {
            return GammaTable::identity(self.n);
        };
        let cyl = Word::all_of_length(self.n, depth + 1)
            .into_iter()
            .map(|w| (w.clone(), w))
            .collect();
        let pts = Word::all_up_to(self.n, depth)
            .into_iter()
            .map(|w| {
                let img = self.apply(&w);
                (w, img)
            })
            .collect();
        GammaTable::from_rows(self.n, cyl, pts).expect("permutation tables are valid")
    }

    /// `n` is required; syntax `(e 1)(11 12 2)` or `id`.
    pub fn parse(src: &str, n: u8) -> Result<Self> {
        let mut cur = Cursor::new(src)?;
        let mut out = FinitePermutation::identity(n);
        if cur.eat_ident("id") || cur.eat_ident("identity") {
            cur.expect_end()?;
            return Ok(out);
        }
        while cur.eat(&Tok::LParen) {
            let mut words = Vec::new();
            while cur.peek() != &Tok::RParen {
                words.push(parse_word(&mut cur)?);
                cur.eat(&Tok::Comma);
            }
            cur.expect(&Tok::RParen)?;
            let c = Self::cycle(n, &words)?;
            if c.map.len() != words.len() && words.len() > 1 {
                return Err(Error::input("a cycle repeats a word"));
            }
            out = out.compose(&c);
        }
        cur.expect_end()?;
        Ok(out)
    }
}

impl fmt::Display for FinitePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.map.is_empty() {
            return f.write_str("id");
        }
        let mut seen = std::collections::BTreeSet::new();
        for start in self.map.keys() {
            if seen.contains(start) {
                continue;
            }
            f.write_str("(")?;
            let mut w = start.clone();
            let mut first = true;
            loop {
                seen.insert(w.clone());
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                write!(f, "{w}")?;
                w = self.apply(&w);
                if &w == start {
                    break;
                }
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FinitePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinitePermutation[n={}]{self}", self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn cycles_and_parity() {
        let p = FinitePermutation::parse("(e 1 2)(11 12)", 2).unwrap();
        assert_eq!(p.cycle_type(), vec![2, 3]);
        assert_eq!(p.parity(), 1);
        assert_eq!(p.to_string(), "(e 1 2)(11 12)");
        assert_eq!(FinitePermutation::parse(&p.to_string(), 2).unwrap(), p);
        assert!(p.compose(&p.inverse()).is_identity());
    }

    #[test]
    fn transposition_table() {
        let t = FinitePermutation::transposition(2, &w("e"), &w("1")).unwrap();
        let g = t.to_gamma();
        assert_eq!(g.act_word(&w("e")), w("1"));
        assert_eq!(g.act_word(&w("1")), w("e"));
        assert_eq!(g.act_word(&w("2")), w("2"));
        assert_eq!(g.act_word(&w("121")), w("121"));
        assert_eq!(g.kernel_permutation(), Some(t));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(FinitePermutation::from_pairs(2, &[(w("1"), w("2"))]).is_err());
        assert!(FinitePermutation::parse("(1 1)", 2).is_err());
    }
}
