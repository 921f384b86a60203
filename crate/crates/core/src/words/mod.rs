//! Finite words, boundary points and clopen basic sets of the path spaces
//! `∂E_n` (finite and infinite paths of the rooted `n`-regular tree) and
//! `∂O_n = E_n^∞` (infinite paths only).

mod function;
mod tree;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::parse::{Cursor, Tok};
use crate::scalar::{pow, rat, Rational};

pub use function::{SimpleFunction, Space};
pub(crate) use function::parse_function_term;
pub(crate) use tree::Node;

/// Largest supported alphabet; letters print as single digits.
pub const MAX_ALPHABET: u8 = 9;

pub fn check_alphabet(n: u8) -> Result<()> {
    if (2..=MAX_ALPHABET).contains(&n) {
        Ok(())
    } else {
        Err(Error::input(format!(
            "alphabet size {n} unsupported (need 2 <= n <= {MAX_ALPHABET})"
        )))
    }
}

/// A vertex of the rooted `n`-regular tree. The empty word is the root `v_0`,
/// printed `e`.
///
/// Words order shortlex: shorter first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn letter(a: u8) -> Self {
        Word(vec![a])
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn validate(&self, n: u8) -> Result<()> {
        match self.0.iter().find(|&&a| a == 0 || a > n) {
            Some(a) => Err(Error::input(format!(
                "letter {a} of word {self} outside alphabet 1..{n}"
            ))),
            None => Ok(()),
        }
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn child(&self, a: u8) -> Word {
        let mut v = self.0.clone();
        v.push(a);
        Word(v)
    }

    pub fn parent(&self) -> Option<Word> {
        if self.0.is_empty() {
            None
        } else {
            Some(Word(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    /// The suffix after removing `prefix`, if it is one.
    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|s| Word(s.to_vec()))
    }

    /// Proper prefixes, shortest first (`e` included for nonempty words).
    pub fn proper_prefixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.0.len()).map(move |k| Word(self.0[..k].to_vec()))
    }

    /// All words of length exactly `len` over `1..=n`, in lexicographic order.
    pub fn all_of_length(n: u8, len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            out = out
                .iter()
                .flat_map(|w| (1..=n).map(move |a| w.child(a)))
                .collect();
        }
        out
    }

    /// All words of length `<= max_len`, shortlex.
    pub fn all_up_to(n: u8, max_len: usize) -> Vec<Word> {
        (0..=max_len).flat_map(|k| Word::all_of_length(n, k)).collect()
    }

    /// Lexicographic (depth-first, left-to-right tree) order.
    pub fn lex_cmp(&self, other: &Word) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for a in &self.0 {
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s)?;
        let w = parse_word(&mut cur)?;
        cur.expect_end()?;
        Ok(w)
    }
}

pub(crate) fn parse_word(cur: &mut Cursor) -> Result<Word> {
    match cur.peek().clone() {
        Tok::Ident(s) if s == "e" => {
            cur.bump();
            Ok(Word::empty())
        }
        Tok::Digits(d) => {
            if d.contains('0') {
                return Err(cur.error("letters 1..9"));
            }
            cur.bump();
            Ok(Word(d.bytes().map(|b| b - b'0').collect()))
        }
        _ => Err(cur.error("a word ('e' or digits)")),
    }
}

/// A point of `∂E_n`: a finite word, or an eventually periodic infinite word
/// `prefix · cycle · cycle · …`.
///
/// Periodic points are kept canonical (primitive cycle, rotation-reduced
/// prefix) so that structural equality is point equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundaryPoint {
    Finite(Word),
    Periodic { prefix: Word, cycle: Word },
}

impl BoundaryPoint {
    pub fn finite(w: Word) -> Self {
        BoundaryPoint::Finite(w)
    }

    pub fn periodic(prefix: Word, cycle: Word) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::input("periodic point needs a nonempty cycle"));
        }
        let c = cycle.0;
        let len = c.len();
        let period = (1..=len)
            .find(|&p| len.is_multiple_of(p) && (0..len).all(|i| c[i] == c[i % p]))
            .unwrap_or(len);
        let mut cyc: Vec<u8> = c[..period].to_vec();
        let mut pre = prefix.0;
        while let (Some(&a), Some(&b)) = (pre.last(), cyc.last()) {
            if a != b {
                break;
            }
            pre.pop();
            cyc.rotate_right(1);
        }
        Ok(BoundaryPoint::Periodic {
            prefix: Word(pre),
            cycle: Word(cyc),
        })
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, BoundaryPoint::Finite(_))
    }

    pub fn validate(&self, n: u8) -> Result<()> {
        match self {
            BoundaryPoint::Finite(w) => w.validate(n),
            BoundaryPoint::Periodic { prefix, cycle } => {
                prefix.validate(n)?;
                cycle.validate(n)
            }
        }
    }

    /// The `i`-th letter, `None` past the end of a finite word.
    pub fn letter(&self, i: usize) -> Option<u8> {
        match self {
            BoundaryPoint::Finite(w) => w.0.get(i).copied(),
            BoundaryPoint::Periodic { prefix, cycle } => Some(if i < prefix.len() {
                prefix.0[i]
            } else {
                cycle.0[(i - prefix.len()) % cycle.len()]
            }),
        }
    }

    pub fn starts_with(&self, w: &Word) -> bool {
        w.0.iter().enumerate().all(|(i, a)| self.letter(i) == Some(*a))
    }

    /// Remove the first `k` letters (which must exist).
    pub fn drop_prefix(&self, k: usize) -> BoundaryPoint {
        match self {
            BoundaryPoint::Finite(w) => BoundaryPoint::Finite(Word(w.0[k..].to_vec())),
            BoundaryPoint::Periodic { prefix, cycle } => {
                if k <= prefix.len() {
                    BoundaryPoint::Periodic {
                        prefix: Word(prefix.0[k..].to_vec()),
                        cycle: cycle.clone(),
                    }
                } else {
                    let mut c = cycle.0.clone();
                    let r = (k - prefix.len()) % c.len();
                    c.rotate_left(r);
                    BoundaryPoint::Periodic {
                        prefix: Word::empty(),
                        cycle: Word(c),
                    }
                }
            }
        }
    }

    /// `w · self`, canonicalized.
    pub fn prepend(&self, w: &Word) -> BoundaryPoint {
        match self {
            BoundaryPoint::Finite(x) => BoundaryPoint::Finite(w.concat(x)),
            BoundaryPoint::Periodic { prefix, cycle } => {
                BoundaryPoint::periodic(w.concat(prefix), cycle.clone())
                    .expect("cycle is nonempty")
            }
        }
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryPoint::Finite(w) => write!(f, "{w}"),
            BoundaryPoint::Periodic { prefix, cycle } if prefix.is_empty() => {
                write!(f, "({cycle})")
            }
            BoundaryPoint::Periodic { prefix, cycle } => write!(f, "{prefix}({cycle})"),
        }
    }
}

impl fmt::Debug for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for BoundaryPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s)?;
        let p = parse_point(&mut cur)?;
        cur.expect_end()?;
        Ok(p)
    }
}

pub(crate) fn parse_point(cur: &mut Cursor) -> Result<BoundaryPoint> {
    let prefix = if cur.peek() == &Tok::LParen {
        Word::empty()
    } else {
        parse_word(cur)?
    };
    if cur.eat(&Tok::LParen) {
        let cycle = parse_word(cur)?;
        cur.expect(&Tok::RParen)?;
        BoundaryPoint::periodic(prefix, cycle)
    } else {
        Ok(BoundaryPoint::Finite(prefix))
    }
}

/// Clopen basic sets: `Z(μ)` (all finite and infinite extensions of `μ`),
/// the singleton `{μ}`, and `Z^∞(μ)` (infinite extensions only).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum BasicSet {
    Cyl(Word),
    Point(Word),
    CylInf(Word),
}

impl BasicSet {
    pub fn word(&self) -> &Word {
        match self {
            BasicSet::Cyl(w) | BasicSet::Point(w) | BasicSet::CylInf(w) => w,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            BasicSet::Cyl(_) => 0,
            BasicSet::CylInf(_) => 1,
            BasicSet::Point(_) => 2,
        }
    }

    /// Whether the two sets share a point (cylinders of either kind share
    /// infinite points whenever their words are prefix-comparable).
    pub fn intersects(&self, other: &BasicSet) -> bool {
        use BasicSet::*;
        match (self, other) {
            (Point(a), Point(b)) => a == b,
            (Cyl(a), Point(b)) | (Point(b), Cyl(a)) => a.is_prefix_of(b),
            (CylInf(_), Point(_)) | (Point(_), CylInf(_)) => false,
            (x, y) => x.word().is_prefix_of(y.word()) || y.word().is_prefix_of(x.word()),
        }
    }

    pub fn contains(&self, x: &BoundaryPoint) -> bool {
        match (self, x) {
            (BasicSet::Cyl(w), _) => x.starts_with(w),
            (BasicSet::CylInf(w), BoundaryPoint::Periodic { .. }) => x.starts_with(w),
            (BasicSet::CylInf(_), BoundaryPoint::Finite(_)) => false,
            (BasicSet::Point(w), BoundaryPoint::Finite(v)) => w == v,
            (BasicSet::Point(_), _) => false,
        }
    }
}

impl Ord for BasicSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word()
            .cmp(other.word())
            .then_with(|| self.rank().cmp(&other.rank()))
    }
}

impl PartialOrd for BasicSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasicSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasicSet::Cyl(w) => write!(f, "Z({w})"),
            BasicSet::Point(w) => write!(f, "P({w})"),
            BasicSet::CylInf(w) => write!(f, "Zinf({w})"),
        }
    }
}

impl FromStr for BasicSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s)?;
        let b = parse_basic_set(&mut cur)?;
        cur.expect_end()?;
        Ok(b)
    }
}

pub(crate) fn starts_basic_set(tok: &Tok) -> bool {
    matches!(tok, Tok::Ident(s) if s == "Z" || s == "P" || s == "Zinf")
}

pub(crate) fn parse_basic_set(cur: &mut Cursor) -> Result<BasicSet> {
    let kind = match cur.peek().clone() {
        Tok::Ident(s) if s == "Z" || s == "P" || s == "Zinf" => {
            cur.bump();
            s
        }
        _ => return Err(cur.error("'Z(w)', 'P(w)' or 'Zinf(w)'")),
    };
    cur.expect(&Tok::LParen)?;
    let w = parse_word(cur)?;
    cur.expect(&Tok::RParen)?;
    Ok(match kind.as_str() {
        "Z" => BasicSet::Cyl(w),
        "P" => BasicSet::Point(w),
        _ => BasicSet::CylInf(w),
    })
}

/// `Σ n^{-|ν|}` over the family.
pub fn kraft_sum(words: &[Word], n: u8) -> Rational {
    let base = rat(i64::from(n), 1);
    words
        .iter()
        .map(|w| pow(&base, -(w.len() as i32)))
        .fold(BigRational::zero(), |a, b| a + b)
}

pub fn is_prefix_free(words: &[Word]) -> bool {
    let mut sorted: Vec<&Word> = words.iter().collect();
    sorted.sort_by(|a, b| a.lex_cmp(b));
    // In lexicographic order a prefix sorts immediately before some extension
    // of it, and any prefix relation shows up between neighbours.
    sorted.windows(2).all(|p| !p[0].is_prefix_of(p[1]))
}

/// The finite words having no element of `code` as a prefix, shortlex.
///
/// For a complete prefix code these are exactly the proper prefixes of the
/// code words.
pub fn uncovered_words(code: &[Word]) -> Vec<Word> {
    let mut set = BTreeSet::new();
    for w in code {
        for p in w.proper_prefixes() {
            set.insert(p);
        }
    }
    set.into_iter()
        .filter(|p| !code.iter().any(|c| c.is_prefix_of(p)))
        .collect()
}

/// Validate that `Z(cyls) ⊔ {pts}` partitions `∂E_n`, reporting why not.
pub fn check_partition(cyls: &[Word], pts: &[Word], n: u8) -> Result<()> {
    for w in cyls.iter().chain(pts) {
        w.validate(n)?;
    }
    let kraft = kraft_sum(cyls, n);
    let fail = |reason: &str| Error::Partition {
        reason: reason.to_string(),
        kraft: kraft.clone(),
    };
    if !is_prefix_free(cyls) {
        return Err(fail("cylinders overlap"));
    }
    if !kraft.is_one() {
        return Err(fail("cylinders do not cover the infinite paths"));
    }
    let mut given: Vec<Word> = pts.to_vec();
    given.sort();
    if given.windows(2).any(|p| p[0] == p[1]) {
        return Err(fail("repeated singleton"));
    }
    if given != uncovered_words(cyls) {
        return Err(fail("singletons differ from the finite words left uncovered"));
    }
    Ok(())
}

/// Whether `⊔ Z(cyls) ⊔ ⊔ {pts} = ∂E_n`. Letters outside `1..=n` are an
/// input error.
pub fn is_complete_partition(cyls: &[Word], pts: &[Word], n: u8) -> Result<bool> {
    for w in cyls.iter().chain(pts) {
        w.validate(n)?;
    }
    match check_partition(cyls, pts, n) {
        Ok(()) => Ok(true),
        Err(Error::Partition { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Common refinement of two disjoint families of basic sets (cylinders and
/// singletons of `∂E_n`, or `Z^∞` cylinders).
///
/// Every returned piece lies inside at most one member of each family, the
/// pieces below a member reassemble it, and pieces are split only as far as
/// needed. Output is sorted.
pub fn refine_common(a: &[BasicSet], b: &[BasicSet], n: u8) -> Result<Vec<BasicSet>> {
    check_alphabet(n)?;
    let infinite = a.iter().chain(b).all(|s| matches!(s, BasicSet::CylInf(_)));
    let any_inf = a.iter().chain(b).any(|s| matches!(s, BasicSet::CylInf(_)));
    if any_inf && !infinite {
        return Err(Error::mode("cannot mix Zinf sets with Z/P sets"));
    }
    for fam in [a, b] {
        for (i, x) in fam.iter().enumerate() {
            x.word().validate(n)?;
            if fam[..i].iter().any(|y| y.intersects(x)) {
                return Err(Error::input(format!("family is not disjoint at {x}")));
            }
        }
    }
    type Label = (Option<usize>, Option<usize>);
    let mut root: Node<Label> = Node::Leaf((None, None));
    for (i, s) in a.iter().enumerate() {
        root.assign(s, n, &mut |l: &mut Label| l.0 = Some(i));
    }
    for (j, s) in b.iter().enumerate() {
        root.assign(s, n, &mut |l: &mut Label| l.1 = Some(j));
    }
    let mut out = Vec::new();
    root.pieces(&Word::empty(), infinite, &mut |set, label| {
        if *label != (None, None) {
            out.push(set);
        }
    });
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn ws(xs: &[&str]) -> Vec<Word> {
        xs.iter().map(|s| w(s)).collect()
    }

    #[test]
    fn shortlex_order() {
        let mut v = ws(&["12", "2", "e", "11", "1"]);
        v.sort();
        assert_eq!(v, ws(&["e", "1", "2", "11", "12"]));
    }

    #[test]
    fn complete_partition_examples() {
        assert!(is_complete_partition(&ws(&["e"]), &[], 2).unwrap());
        assert!(is_complete_partition(&ws(&["1", "2"]), &ws(&["e"]), 2).unwrap());
        assert!(!is_complete_partition(&ws(&["1"]), &ws(&["e"]), 2).unwrap());
        assert!(!is_complete_partition(&ws(&["1", "2"]), &[], 2).unwrap());
        assert!(!is_complete_partition(&ws(&["1", "11", "2"]), &ws(&["e"]), 2).unwrap());
        assert!(is_complete_partition(&ws(&["3"]), &[], 2).is_err());
    }

    #[test]
    fn partition_error_reports_kraft_sum() {
        match check_partition(&ws(&["1"]), &ws(&["e"]), 2) {
            Err(Error::Partition { kraft, .. }) => assert_eq!(kraft, rat(1, 2)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn periodic_points_canonicalize() {
        let p = BoundaryPoint::periodic(w("12"), w("1212")).unwrap();
        assert_eq!(p, BoundaryPoint::periodic(w("e"), w("12")).unwrap());
        assert_eq!(p.to_string(), "(12)");
        let q = BoundaryPoint::periodic(w("2"), w("2")).unwrap();
        assert_eq!(q.to_string(), "(2)");
        assert_eq!("1(2)".parse::<BoundaryPoint>().unwrap().drop_prefix(1), q);
        let r = BoundaryPoint::periodic(w("3"), w("13")).unwrap();
        assert_eq!(r, BoundaryPoint::periodic(w("e"), w("31")).unwrap());
    }

    #[test]
    fn refine_examples() {
        let z = |s: &str| BasicSet::Cyl(w(s));
        let p = |s: &str| BasicSet::Point(w(s));
        let got = refine_common(&[z("e")], &[z("1"), z("2"), p("e")], 2).unwrap();
        let mut want = vec![z("1"), z("2"), p("e")];
        want.sort();
        assert_eq!(got, want);

        let got = refine_common(&[z("1")], &[z("11")], 2).unwrap();
        let mut want = vec![z("11"), z("12"), p("1")];
        want.sort();
        assert_eq!(got, want);

        let got = refine_common(&[p("2")], &[z("2")], 2).unwrap();
        let mut want = vec![p("2"), z("21"), z("22")];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn refine_rejects_overlapping_family() {
        let z = |s: &str| BasicSet::Cyl(w(s));
        assert!(refine_common(&[z("1"), z("11")], &[], 2).is_err());
    }
}
