use std::fmt;

use crate::error::{Error, Result};
use crate::parse::{Cursor, Tok};
use crate::words::{check_alphabet, parse_word, uncovered_words, BasicSet, BoundaryPoint, SimpleFunction, Space, Word};

use super::rows::{Row, Rows};
use super::{GammaTable, Table};

/// An element of `V_n`: a bijection between two complete prefix codes,
/// acting on infinite words by prefix replacement.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VnTable {
    n: u8,
    rows: Rows,
}

impl VnTable {
    /// Validate and normalize.
    pub fn new(n: u8, rows: Vec<(Word, Word)>) -> Result<Self> {
        check_alphabet(n)?;
        let rows = Rows { cyl: rows, pts: Vec::new() };
        rows.validate(n, false)?;
        Ok(VnTable {
            n,
            rows: rows.normalize(n, false),
        })
    }

    pub fn identity(n: u8) -> Self {
        VnTable {
            n,
            rows: Rows::identity(),
        }
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    /// Rows `(src, dst)` in shortlex order of the sources.
    pub fn rows(&self) -> &[Row] {
        &self.rows.cyl
    }

    pub fn is_identity(&self) -> bool {
        self.rows == Rows::identity()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &VnTable) -> VnTable {
        assert_eq!(self.n, other.n, "alphabet mismatch");
        VnTable {
            n: self.n,
            rows: Rows::compose(&self.rows, &other.rows, self.n, false),
        }
    }

    pub fn inverse(&self) -> VnTable {
        VnTable {
            n: self.n,
            rows: self.rows.inverse(),
        }
    }

    /// Action on an infinite point; finite words are outside `∂O_n`.
    pub fn act(&self, x: &BoundaryPoint) -> Result<BoundaryPoint> {
        x.validate(self.n)?;
        if x.is_finite() {
            return Err(Error::domain(format!("V_n acts on infinite words only, got {x}")));
        }
        let (k, d, _) = self.rows.row_at(x).expect("complete prefix code covers every infinite word");
        Ok(x.drop_prefix(k).prepend(&d))
    }

    /// `|dst| − |src|` of the row applying at `x`.
    pub fn cocycle_degree(&self, x: &BoundaryPoint) -> Result<i32> {
        x.validate(self.n)?;
        if x.is_finite() {
            return Err(Error::domain(format!("V_n acts on infinite words only, got {x}")));
        }
        let (k, d, _) = self.rows.row_at(x).expect("complete prefix code covers every infinite word");
        Ok(d.len() as i32 - k as i32)
    }

    pub fn act_on_function(&self, f: &SimpleFunction) -> Result<SimpleFunction> {
        if f.space() != Space::Boundary || f.n() != self.n {
            return Err(Error::mode("V_n acts on functions of the infinite path space with the same alphabet"));
        }
        let pushed = self.rows.push_tree(&f.tree(), self.n, crate::Scalar::zero());
        Ok(SimpleFunction::from_tree(Space::Boundary, self.n, pushed))
    }

    /// Number of finite words not covered by the sources (equal to the
    /// number not covered by the destinations).
    pub fn fredholm_count(&self) -> usize {
        let (src, dst) = self.missing_words();
        assert_eq!(src.len(), dst.len(), "both codes have the same number of leaves");
        src.len()
    }

    fn missing_words(&self) -> (Vec<Word>, Vec<Word>) {
        let src: Vec<Word> = self.rows.cyl.iter().map(|r| r.0.clone()).collect();
        let dst: Vec<Word> = self.rows.cyl.iter().map(|r| r.1.clone()).collect();
        (uncovered_words(&src), uncovered_words(&dst))
    }

    /// The `Γ_n` element with the same cylinder rows whose singleton rows
    /// pair the missing words of both sides in shortlex order.
    pub fn lift(&self) -> GammaTable {
        let (src, dst) = self.missing_words();
        let pts = src.into_iter().zip(dst).collect();
        GammaTable::from_rows(self.n, self.rows.cyl.clone(), pts).expect("a lift is a valid table")
    }

    pub fn parse(src: &str) -> Result<Self> {
        let mut cur = Cursor::new(src)?;
        let t = parse_vn(&mut cur)?;
        cur.expect_end()?;
        Ok(t)
    }
}

pub(crate) fn parse_table_head(cur: &mut Cursor, letter: &str) -> Result<u8> {
    if !cur.eat_ident(letter) {
        return Err(cur.error(&format!("'{letter}<n>['")));
    }
    let n = match cur.bump() {
        Tok::Digits(d) => d
            .parse::<u8>()
            .map_err(|_| Error::input(format!("alphabet size {d} is out of range")))?,
        _ => return Err(cur.error("an alphabet size")),
    };
    check_alphabet(n)?;
    cur.expect(&Tok::LBracket)?;
    Ok(n)
}

pub(crate) fn parse_vn(cur: &mut Cursor) -> Result<VnTable> {
    let n = parse_table_head(cur, "V")?;
    if cur.eat_ident("identity") {
        cur.expect(&Tok::RBracket)?;
        return Ok(VnTable::identity(n));
    }
    let mut rows = Vec::new();
    loop {
        let s = parse_word(cur)?;
        cur.expect(&Tok::Arrow)?;
        let d = parse_word(cur)?;
        rows.push((s, d));
        if !cur.eat(&Tok::Comma) {
            break;
        }
    }
    cur.expect(&Tok::RBracket)?;
    VnTable::new(n, rows)
}

/// The leaf permutation parity in `V_n^{ab}`.
///
/// Leaves are ordered lexicographically (depth first). Expanding a row
/// replaces one leaf by `n` consecutive leaves on both sides, which leaves
/// the parity unchanged for odd `n`, so the value does not depend on the
/// table chosen. For even `n` the abelianization is trivial and the
/// result is 0.
pub fn sign_vn(v: &VnTable) -> u8 {
    if v.n.is_multiple_of(2) {
        return 0;
    }
    let rows = v.rows();
    let mut by_src: Vec<usize> = (0..rows.len()).collect();
    by_src.sort_by(|&a, &b| rows[a].0.lex_cmp(&rows[b].0));
    let mut by_dst: Vec<usize> = (0..rows.len()).collect();
    by_dst.sort_by(|&a, &b| rows[a].1.lex_cmp(&rows[b].1));
    let mut dst_pos = vec![0; rows.len()];
    for (pos, &r) in by_dst.iter().enumerate() {
        dst_pos[r] = pos;
    }
    let perm: Vec<usize> = by_src.iter().map(|&r| dst_pos[r]).collect();
    permutation_parity(&perm)
}

pub(crate) fn permutation_parity(perm: &[usize]) -> u8 {
    let mut seen = vec![false; perm.len()];
    let mut swaps = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut i = start;
        let mut len = 0;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        swaps += len - 1;
    }
    (swaps % 2) as u8
}

impl Table for VnTable {
    const SPACE: Space = Space::Boundary;

    fn identity(n: u8) -> Self {
        VnTable::identity(n)
    }
    fn n(&self) -> u8 {
        self.n
    }
    fn is_identity(&self) -> bool {
        VnTable::is_identity(self)
    }
    fn compose(&self, other: &Self) -> Self {
        VnTable::compose(self, other)
    }
    fn inverse(&self) -> Self {
        VnTable::inverse(self)
    }
    fn act_on_function(&self, f: &SimpleFunction) -> Result<SimpleFunction> {
        VnTable::act_on_function(self, f)
    }
    fn range_pieces(&self) -> Vec<(BasicSet, i32)> {
        self.rows
            .cyl
            .iter()
            .map(|(s, d)| (BasicSet::CylInf(d.clone()), d.len() as i32 - s.len() as i32))
            .collect()
    }
    fn act_point(&self, x: &BoundaryPoint) -> Result<BoundaryPoint> {
        self.act(x)
    }
    fn parse_table(src: &str) -> Result<Self> {
        VnTable::parse(src)
    }
}

impl fmt::Display for VnTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V{}[", self.n)?;
        for (i, (s, d)) in self.rows.cyl.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}->{d}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for VnTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> VnTable {
        VnTable::parse(s).unwrap()
    }

    fn bp(s: &str) -> BoundaryPoint {
        s.parse().unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(v("V2[1->2, 2->1]").to_string(), "V2[1->2, 2->1]");
        assert_eq!(v("V2[11->21, 12->22, 2->1]"), v("V2[1->2, 2->1]"));
        assert!(v("V2[11->11, 12->12, 2->2]").is_identity());
        assert!(v("V2[identity]").is_identity());
        assert!(v("V2[e->e]").is_identity());
    }

    #[test]
    fn rejects_bad_codes() {
        assert!(matches!(VnTable::parse("V2[1->1]"), Err(Error::Partition { .. })));
        assert!(VnTable::parse("V2[1->2, 2->3]").is_err());
        assert!(VnTable::parse("V2[1->2 2->1]").unwrap_err().is_parse());
    }

    #[test]
    fn compose_against_pointwise_action() {
        let a = v("V2[11->1, 12->21, 2->22]");
        let b = v("V2[1->2, 2->1]");
        let ab = a.compose(&b);
        for p in ["(1)", "(2)", "1(2)", "12(1)", "(12)", "211(2)", "2(21)"] {
            let x = bp(p);
            assert_eq!(ab.act(&x).unwrap(), a.act(&b.act(&x).unwrap()).unwrap(), "{p}");
        }
        assert!(b.compose(&b).is_identity());
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn action_and_cocycle() {
        let g = v("V2[1->2, 2->1]");
        assert_eq!(g.act(&bp("1(2)")).unwrap(), bp("(2)"));
        assert!(g.act(&bp("1")).is_err());
        let a = v("V2[11->1, 12->21, 2->22]");
        assert_eq!(a.cocycle_degree(&bp("11(1)")).unwrap(), -1);
        assert_eq!(a.cocycle_degree(&bp("2(1)")).unwrap(), 1);
        assert_eq!(g.cocycle_degree(&bp("(1)")).unwrap(), 0);
    }

    #[test]
    fn fredholm_and_lift() {
        assert_eq!(VnTable::identity(2).fredholm_count(), 0);
        assert_eq!(v("V2[1->2, 2->1]").fredholm_count(), 1);
        let a = v("V2[11->1, 12->21, 2->22]");
        assert_eq!(a.fredholm_count(), 2);
        let l = a.lift();
        assert_eq!(
            l.pt_rows().to_vec(),
            vec![("e".parse().unwrap(), "e".parse().unwrap()), ("1".parse().unwrap(), "2".parse().unwrap())]
        );
        assert_eq!(l.pi_project(), a);
        assert_eq!(v("V2[1->2, 2->1]").lift().to_string(), "G2[Z(1)->Z(2), Z(2)->Z(1); e->e]");
    }

    #[test]
    fn sign_examples() {
        let g0 = v("V3[1->2, 2->1, 3->3]");
        assert_eq!(sign_vn(&g0), 1);
        assert_eq!(sign_vn(&VnTable::identity(3)), 0);
        // Expanding the fixed row keeps the class.
        let expanded = VnTable {
            n: 3,
            rows: Rows {
                cyl: vec![
                    ("1".parse().unwrap(), "2".parse().unwrap()),
                    ("2".parse().unwrap(), "1".parse().unwrap()),
                    ("31".parse().unwrap(), "31".parse().unwrap()),
                    ("32".parse().unwrap(), "32".parse().unwrap()),
                    ("33".parse().unwrap(), "33".parse().unwrap()),
                ],
                pts: vec![],
            },
        };
        assert_eq!(sign_vn(&expanded), 1);
        assert_eq!(sign_vn(&v("V2[1->2, 2->1]")), 0);
    }
}
