use std::fmt;

use crate::error::{Error, Result};
use crate::parse::{Cursor, Tok};
use crate::words::{parse_word, uncovered_words, BasicSet, BoundaryPoint, SimpleFunction, Space, Word};
use crate::Scalar;

use super::rows::{Row, Rows};
use super::vn::{parse_table_head, sign_vn};
use super::{FinitePermutation, Table, VnTable};

/// An element of `Γ_n`: cylinder rows together with singleton rows for the
/// finite words the cylinders leave uncovered.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GammaTable {
    n: u8,
    rows: Rows,
}

impl GammaTable {
    /// Validate both partitions and normalize.
    pub fn from_rows(n: u8, cyl: Vec<Row>, pts: Vec<Row>) -> Result<Self> {
        crate::words::check_alphabet(n)?;
        let rows = Rows { cyl, pts };
        rows.validate(n, true)?;
        Ok(GammaTable {
            n,
            rows: rows.normalize(n, true),
        })
    }

    pub fn identity(n: u8) -> Self {
        GammaTable {
            n,
            rows: Rows::identity(),
        }
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn cyl_rows(&self) -> &[Row] {
        &self.rows.cyl
    }

    pub fn pt_rows(&self) -> &[Row] {
        &self.rows.pts
    }

    pub fn is_identity(&self) -> bool {
        self.rows == Rows::identity()
    }

    pub fn compose(&self, other: &GammaTable) -> GammaTable {
        assert_eq!(self.n, other.n, "alphabet mismatch");
        GammaTable {
            n: self.n,
            rows: Rows::compose(&self.rows, &other.rows, self.n, true),
        }
    }

    pub fn inverse(&self) -> GammaTable {
        GammaTable {
            n: self.n,
            rows: self.rows.inverse(),
        }
    }

    pub fn act(&self, x: &BoundaryPoint) -> Result<BoundaryPoint> {
        x.validate(self.n)?;
        let (k, d, _) = self.rows.row_at(x).expect("tables are total on the path space");
        Ok(x.drop_prefix(k).prepend(&d))
    }

    /// Action on a finite word (which must use letters `1..=n`).
    pub fn act_word(&self, w: &Word) -> Word {
        self.rows.map_word(w).expect("tables are total on finite words")
    }

    /// `|dst| − |src|` of the row applying at `x`.
    pub fn cocycle_degree(&self, x: &BoundaryPoint) -> Result<i32> {
        x.validate(self.n)?;
        let (k, d, _) = self.rows.row_at(x).expect("tables are total on the path space");
        Ok(d.len() as i32 - k as i32)
    }

    /// `f ∘ g^{-1}` on either path space.
    pub fn act_on_function(&self, f: &SimpleFunction) -> Result<SimpleFunction> {
        if f.n() != self.n {
            return Err(Error::mode("alphabet mismatch between table and function"));
        }
        let pushed = self.rows.push_tree(&f.tree(), self.n, Scalar::zero());
        Ok(SimpleFunction::from_tree(f.space(), self.n, pushed))
    }

    /// The quotient map to `V_n`: forget the singleton rows.
    pub fn pi_project(&self) -> VnTable {
        VnTable::new(self.n, self.rows.cyl.clone()).expect("cylinder rows form a V_n table")
    }

    /// The finite permutation induced on the finite words, when `π(g) = e`.
    pub fn kernel_permutation(&self) -> Option<FinitePermutation> {
        if self.rows.cyl.iter().any(|(s, d)| s != d) {
            return None;
        }
        Some(FinitePermutation::from_pairs(self.n, &self.rows.pts).expect("singleton rows are a bijection"))
    }

    /// The image in `V_{2n+1}` obtained from `T_i ↦ S_i` and
    /// `e_n ↦ Σ_{i>n} S_i S_i^*`.
    pub fn alpha_embed(&self) -> Result<VnTable> {
        let m = 2 * self.n + 1;
        if m > crate::words::MAX_ALPHABET {
            return Err(Error::domain(format!(
                "the embedding needs alphabet size {m}, above the supported maximum {}",
                crate::words::MAX_ALPHABET
            )));
        }
        let mut rows = self.rows.cyl.clone();
        for (w, v) in &self.rows.pts {
            for j in self.n + 1..=m {
                rows.push((w.child(j), v.child(j)));
            }
        }
        VnTable::new(m, rows)
    }

    pub fn parse(src: &str) -> Result<Self> {
        let mut cur = Cursor::new(src)?;
        let t = parse_gamma(&mut cur)?;
        cur.expect_end()?;
        Ok(t)
    }
}

fn parse_row_word(cur: &mut Cursor, kind: &str) -> Result<Word> {
    if cur.eat_ident(kind) {
        cur.expect(&Tok::LParen)?;
        let w = parse_word(cur)?;
        cur.expect(&Tok::RParen)?;
        Ok(w)
    } else {
        parse_word(cur)
    }
}

pub(crate) fn parse_gamma(cur: &mut Cursor) -> Result<GammaTable> {
    let n = parse_table_head(cur, "G")?;
    if cur.eat_ident("identity") {
        cur.expect(&Tok::RBracket)?;
        return Ok(GammaTable::identity(n));
    }
    let mut cyl = Vec::new();
    let mut pts = Vec::new();
    let mut in_points = false;
    if cur.peek() != &Tok::Semi {
        loop {
            let is_cyl = matches!(cur.peek(), Tok::Ident(s) if s == "Z");
            let is_pt = matches!(cur.peek(), Tok::Ident(s) if s == "P");
            if in_points && is_cyl {
                return Err(cur.error("a singleton row after ';'"));
            }
            if !in_points && !is_cyl {
                return Err(cur.error("a cylinder row 'Z(w)->Z(w)'"));
            }
            let kind = if is_cyl { "Z" } else { "P" };
            let s = parse_row_word(cur, kind)?;
            cur.expect(&Tok::Arrow)?;
            if is_pt || in_points {
                let d = parse_row_word(cur, "P")?;
                pts.push((s, d));
            } else {
                if !matches!(cur.peek(), Tok::Ident(k) if k == "Z") {
                    return Err(cur.error("'Z('"));
                }
                let d = parse_row_word(cur, "Z")?;
                cyl.push((s, d));
            }
            if cur.eat(&Tok::Comma) {
                continue;
            }
            if !in_points && cur.eat(&Tok::Semi) {
                in_points = true;
                if cur.peek() == &Tok::RBracket {
                    break;
                }
                continue;
            }
            break;
        }
    }
    cur.expect(&Tok::RBracket)?;
    GammaTable::from_rows(n, cyl, pts)
}

impl Table for GammaTable {
    const SPACE: Space = Space::Path;

    fn identity(n: u8) -> Self {
        GammaTable::identity(n)
    }
    fn n(&self) -> u8 {
        self.n
    }
    fn is_identity(&self) -> bool {
        GammaTable::is_identity(self)
    }
    fn compose(&self, other: &Self) -> Self {
        GammaTable::compose(self, other)
    }
    fn inverse(&self) -> Self {
        GammaTable::inverse(self)
    }
    fn act_on_function(&self, f: &SimpleFunction) -> Result<SimpleFunction> {
        GammaTable::act_on_function(self, f)
    }
    fn range_pieces(&self) -> Vec<(BasicSet, i32)> {
        let deg = |s: &Word, d: &Word| d.len() as i32 - s.len() as i32;
        self.rows
            .cyl
            .iter()
            .map(|(s, d)| (BasicSet::Cyl(d.clone()), deg(s, d)))
            .chain(self.rows.pts.iter().map(|(s, d)| (BasicSet::Point(d.clone()), deg(s, d))))
            .collect()
    }
    fn act_point(&self, x: &BoundaryPoint) -> Result<BoundaryPoint> {
        self.act(x)
    }
    fn parse_table(src: &str) -> Result<Self> {
        GammaTable::parse(src)
    }
}

impl fmt::Display for GammaTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G{}[", self.n)?;
        for (i, (s, d)) in self.rows.cyl.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "Z({s})->Z({d})")?;
        }
        if !self.rows.pts.is_empty() {
            f.write_str("; ")?;
            for (i, (s, d)) in self.rows.pts.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{s}->{d}")?;
            }
        }
        f.write_str("]")
    }
}

impl fmt::Debug for GammaTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `sign(α(g))` in `V_{2n+1}^{ab} = ℤ/2`.
pub fn abelianize_gamma(g: &GammaTable) -> Result<u8> {
    Ok(sign_vn(&g.alpha_embed()?))
}

/// The normal subgroup of `Γ_n` generated by one element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Closure {
    Trivial,
    /// The alternating finitary permutations.
    SPrime,
    /// All finitary permutations.
    S,
    /// The commutator subgroup.
    GammaPrime,
    Gamma,
}

impl fmt::Display for Closure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Closure::Trivial => "Trivial",
            Closure::SPrime => "SPrime",
            Closure::S => "S",
            Closure::GammaPrime => "GammaPrime",
            Closure::Gamma => "Gamma",
        })
    }
}

pub fn classify_normal_closure(g: &GammaTable) -> Result<Closure> {
    if g.is_identity() {
        return Ok(Closure::Trivial);
    }
    if let Some(p) = g.kernel_permutation() {
        return Ok(if p.parity() == 0 { Closure::SPrime } else { Closure::S });
    }
    Ok(if abelianize_gamma(g)? == 0 {
        Closure::GammaPrime
    } else {
        Closure::Gamma
    })
}

/// Split `g = c ∘ k` with `k` a finite permutation and `c` commuting with
/// `h`.
///
/// The cylinder rows of `g` are subdivided below the support of `h`; `c`
/// keeps them, fixes the support of `h` and pairs the remaining uncovered
/// words in shortlex order.
pub fn factor_commuting(h: &FinitePermutation, g: &GammaTable) -> Result<(GammaTable, FinitePermutation)> {
    if h.n() != g.n() {
        return Err(Error::mode("alphabet mismatch"));
    }
    let n = g.n();
    let support = h.support();
    let depth = h.support_depth().map_or(0, |d| d + 1);
    let mut rows = g.rows.clone();
    while let Some(idx) = rows
        .cyl
        .iter()
        .position(|(s, d)| s.len() < depth || d.len() < depth)
    {
        rows.expand(idx, n, false);
    }
    let srcs: Vec<Word> = rows.cyl.iter().map(|r| r.0.clone()).collect();
    let dsts: Vec<Word> = rows.cyl.iter().map(|r| r.1.clone()).collect();
    let free_src: Vec<Word> = uncovered_words(&srcs).into_iter().filter(|w| !support.contains(w)).collect();
    let free_dst: Vec<Word> = uncovered_words(&dsts).into_iter().filter(|w| !support.contains(w)).collect();
    let pts = support
        .iter()
        .map(|w| (w.clone(), w.clone()))
        .chain(free_src.into_iter().zip(free_dst))
        .collect();
    let c = GammaTable::from_rows(n, rows.cyl, pts)?;
    let k = c
        .inverse()
        .compose(g)
        .kernel_permutation()
        .expect("c and g have the same image in V_n");
    Ok((c, k))
}

/// Where an element is locally the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedStructure {
    /// Maximal cylinders on which the element is the identity.
    pub identity_cylinders: Vec<Word>,
    /// Fixed finite words outside those cylinders.
    pub fixed_singletons: Vec<Word>,
}

impl FixedStructure {
    pub fn fixes(&self, w: &Word) -> bool {
        self.fixed_singletons.contains(w) || self.identity_cylinders.iter().any(|c| c.is_prefix_of(w))
    }
}

/// Identity cylinders are read off the canonical table: a cylinder row
/// `η ↦ η` is maximal because the normal form merges every identity block.
/// A finite word outside them is fixed only by a singleton row `w ↦ w`,
/// since a cylinder row with `src ≠ dst` moves every word it covers.
pub fn fixed_structure(g: &GammaTable) -> FixedStructure {
    FixedStructure {
        identity_cylinders: g.rows.cyl.iter().filter(|(s, d)| s == d).map(|r| r.0.clone()).collect(),
        fixed_singletons: g.rows.pts.iter().filter(|(s, d)| s == d).map(|r| r.0.clone()).collect(),
    }
}

/// The transposition `(v_0 μ)`, sending the root to `μ`.
pub fn stabilizer_transposition(mu: &Word, n: u8) -> Result<GammaTable> {
    Ok(FinitePermutation::transposition(n, &Word::empty(), mu)?.to_gamma())
}

/// A transposition of support depth at most `max_depth` that does not
/// commute with `g`, or `None` if `g` fixes every short word.
///
/// `(a b)` commutes with `g` iff `g` maps `{a, b}` onto itself, so any `a`
/// moved by `g` together with some `b ∉ {a, g(a)}` will do.
pub fn noncommuting_transposition(g: &GammaTable, max_depth: usize) -> Option<FinitePermutation> {
    let words = Word::all_up_to(g.n, max_depth);
    let a = words.iter().find(|w| &g.act_word(w) != *w)?;
    let image = g.act_word(a);
    let b = words.iter().find(|w| *w != a && **w != image)?;
    Some(FinitePermutation::transposition(g.n, a, b).expect("distinct valid words"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GammaTable {
        GammaTable::parse(s).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    const U0: &str = "G2[Z(1)->Z(2), Z(2)->Z(1); e->e]";

    #[test]
    fn parse_and_print() {
        assert_eq!(g(U0).to_string(), U0);
        assert!(g("G2[identity]").is_identity());
        assert!(g("G2[Z(e)->Z(e)]").is_identity());
        assert_eq!(g("G2[Z(1)->Z(2), Z(2)->Z(1); P(e)->P(e)]"), g(U0));
        match GammaTable::parse("G2[Z(1)->Z(1); e->e]") {
            Err(Error::Partition { kraft, .. }) => assert_eq!(kraft, crate::scalar::rat(1, 2)),
            other => panic!("{other:?}"),
        }
        assert!(GammaTable::parse("G2[Z(1)->Z(2), Z(2)->Z(1) e->e]").unwrap_err().is_parse());
    }

    #[test]
    fn normalize_merges_identity() {
        let t = g("G2[Z(11)->Z(11), Z(12)->Z(12), Z(2)->Z(2); 1->1, e->e]");
        assert!(t.is_identity());
    }

    #[test]
    fn action_examples() {
        let u = g(U0);
        assert_eq!(u.act_word(&w("12")), w("22"));
        assert_eq!(u.act_word(&w("e")), w("e"));
        assert_eq!(u.act(&"1(2)".parse().unwrap()).unwrap(), "(2)".parse().unwrap());
    }

    #[test]
    fn projection_and_kernel() {
        let u = g(U0);
        assert_eq!(u.pi_project(), VnTable::parse("V2[1->2, 2->1]").unwrap());
        assert!(u.kernel_permutation().is_none());
        let t = stabilizer_transposition(&w("1"), 2).unwrap();
        assert!(t.pi_project().is_identity());
        assert_eq!(t.kernel_permutation().unwrap().to_string(), "(e 1)");
        assert!(GammaTable::identity(2).kernel_permutation().unwrap().is_identity());
    }

    #[test]
    fn alpha_and_abelianization() {
        let u = g(U0);
        assert_eq!(
            u.alpha_embed().unwrap(),
            VnTable::parse("V5[1->2, 2->1, 3->3, 4->4, 5->5]").unwrap()
        );
        assert!(GammaTable::identity(2).alpha_embed().unwrap().is_identity());
        assert_eq!(abelianize_gamma(&stabilizer_transposition(&w("1"), 2).unwrap()).unwrap(), 1);
        assert_eq!(abelianize_gamma(&stabilizer_transposition(&w("1"), 3).unwrap()).unwrap(), 0);
        assert_eq!(abelianize_gamma(&u).unwrap(), 1);
    }

    #[test]
    fn classification_examples() {
        let three = FinitePermutation::parse("(e 1 2)", 2).unwrap().to_gamma();
        let tr = stabilizer_transposition(&w("1"), 2).unwrap();
        assert_eq!(classify_normal_closure(&GammaTable::identity(2)).unwrap(), Closure::Trivial);
        assert_eq!(classify_normal_closure(&three).unwrap(), Closure::SPrime);
        assert_eq!(classify_normal_closure(&tr).unwrap(), Closure::S);
        assert_eq!(classify_normal_closure(&g(U0)).unwrap(), Closure::Gamma);
    }

    #[test]
    fn factorization_example() {
        let h = FinitePermutation::transposition(2, &w("e"), &w("1")).unwrap();
        let u = g(U0);
        let (c, k) = factor_commuting(&h, &u).unwrap();
        assert_eq!(c.compose(&k.to_gamma()), u);
        let hg = h.to_gamma();
        assert_eq!(c.compose(&hg), hg.compose(&c));
        assert_eq!(c.pi_project(), u.pi_project());
        let (c0, k0) = factor_commuting(&FinitePermutation::identity(2), &u).unwrap();
        assert_eq!(c0.compose(&k0.to_gamma()), u);
    }

    #[test]
    fn fixed_structure_examples() {
        let id = fixed_structure(&GammaTable::identity(2));
        assert_eq!(id.identity_cylinders, vec![w("e")]);
        assert!(id.fixed_singletons.is_empty());
        let u = fixed_structure(&g(U0));
        assert!(u.identity_cylinders.is_empty());
        assert_eq!(u.fixed_singletons, vec![w("e")]);
        let tr = stabilizer_transposition(&w("1"), 2).unwrap();
        let fs = fixed_structure(&tr);
        for x in Word::all_up_to(2, 6) {
            assert_eq!(fs.fixes(&x), tr.act_word(&x) == x, "{x}");
        }
    }

    #[test]
    fn function_pushforward() {
        let u = g(U0);
        let f = SimpleFunction::parse("P(e) + 2*Z(11)", None, 2).unwrap();
        let pushed = u.act_on_function(&f).unwrap();
        assert_eq!(pushed, SimpleFunction::parse("P(e) + 2*Z(21)", None, 2).unwrap());
    }
}
