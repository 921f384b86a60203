use std::fmt;

use num_traits::{Signed, Zero};

use super::tree::Node;
use super::{check_alphabet, parse_basic_set, starts_basic_set, BasicSet, BoundaryPoint, Word};
use crate::error::{Error, Result};
use crate::parse::{Cursor, Tok};
use crate::scalar::{parse_scalar_factor, Rational, Scalar};

/// Which space a simple function lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Space {
    /// `∂E_n`: finite and infinite paths; basic sets `Z(μ)` and `{μ}`.
    Path,
    /// `∂O_n = E_n^∞`: infinite paths; basic sets `Z^∞(μ)`.
    Boundary,
}

/// A finite linear combination of indicators of disjoint basic sets with
/// Laurent-polynomial coefficients, kept in canonical form.
///
/// Canonical form: the coarsest disjoint decomposition (sibling cylinders
/// with equal coefficients, together with the parent point on `∂E_n`, are
/// merged into the parent cylinder), zero pieces dropped, terms sorted
/// shortlex. Two functions are equal iff their canonical terms are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleFunction {
    space: Space,
    n: u8,
    terms: Vec<(BasicSet, Scalar)>,
}

impl SimpleFunction {
    /// Build from disjoint terms; rejects overlapping supports.
    pub fn new(space: Space, n: u8, terms: Vec<(BasicSet, Scalar)>) -> Result<Self> {
        check_alphabet(n)?;
        for (i, (set, _)) in terms.iter().enumerate() {
            check_set(space, set)?;
            set.word().validate(n)?;
            if let Some((other, _)) = terms[..i].iter().find(|(o, _)| o.intersects(set)) {
                return Err(Error::input(format!("supports {other} and {set} overlap")));
            }
        }
        let mut root = Node::Leaf(Scalar::zero());
        for (set, c) in &terms {
            root.assign(set, n, &mut |l: &mut Scalar| *l = c.clone());
        }
        Ok(Self::from_tree(space, n, root))
    }

    pub fn zero(space: Space, n: u8) -> Self {
        SimpleFunction {
            space,
            n,
            terms: Vec::new(),
        }
    }

    pub fn constant(space: Space, n: u8, c: Scalar) -> Self {
        Self::from_tree(space, n, Node::Leaf(c))
    }

    pub fn one(space: Space, n: u8) -> Self {
        Self::constant(space, n, Scalar::one())
    }

    pub fn indicator(space: Space, n: u8, set: BasicSet) -> Result<Self> {
        Self::new(space, n, vec![(set, Scalar::one())])
    }

    /// Indicator of a union of pairwise disjoint basic sets.
    pub fn indicator_of(space: Space, n: u8, sets: &[BasicSet]) -> Result<Self> {
        Self::new(space, n, sets.iter().map(|s| (s.clone(), Scalar::one())).collect())
    }

    pub(crate) fn from_tree(space: Space, n: u8, tree: Node<Scalar>) -> Self {
        let infinite = space == Space::Boundary;
        let tree = tree.merge(infinite);
        let mut terms = Vec::new();
        tree.pieces(&Word::empty(), infinite, &mut |set, c| {
            if !c.is_zero() {
                terms.push((set, c.clone()));
            }
        });
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        SimpleFunction { space, n, terms }
    }

    pub(crate) fn tree(&self) -> Node<Scalar> {
        let mut root = Node::Leaf(Scalar::zero());
        for (set, c) in &self.terms {
            root.assign(set, self.n, &mut |l: &mut Scalar| *l = c.clone());
        }
        root
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn terms(&self) -> &[(BasicSet, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Longest word among the supports.
    pub fn max_depth(&self) -> usize {
        self.terms.iter().map(|(s, _)| s.word().len()).max().unwrap_or(0)
    }

    fn check_same(&self, other: &SimpleFunction) -> Result<()> {
        if self.space != other.space || self.n != other.n {
            return Err(Error::mode(format!(
                "functions on {:?}/{} and {:?}/{}",
                self.space, self.n, other.space, other.n
            )));
        }
        Ok(())
    }

    fn combine(&self, other: &SimpleFunction, op: &mut dyn FnMut(&Scalar, &Scalar) -> Scalar) -> Result<Self> {
        self.check_same(other)?;
        let t = self.tree().zip(&other.tree(), self.n, op);
        Ok(Self::from_tree(self.space, self.n, t))
    }

    pub fn add(&self, other: &SimpleFunction) -> Result<Self> {
        self.combine(other, &mut |a, b| a + b)
    }

    pub fn sub(&self, other: &SimpleFunction) -> Result<Self> {
        self.combine(other, &mut |a, b| a - b)
    }

    pub fn mul(&self, other: &SimpleFunction) -> Result<Self> {
        self.combine(other, &mut |a, b| a * b)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map_values(|v| v * c)
    }

    pub fn neg(&self) -> Self {
        self.map_values(|v| -v)
    }

    /// Apply `f` to every coefficient (zero regions stay zero).
    pub fn map_values(&self, mut f: impl FnMut(&Scalar) -> Scalar) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(s, c)| (s.clone(), f(c)))
            .collect::<Vec<_>>();
        let mut root = Node::Leaf(Scalar::zero());
        for (set, c) in &terms {
            root.assign(set, self.n, &mut |l: &mut Scalar| *l = c.clone());
        }
        Self::from_tree(self.space, self.n, root)
    }

    /// `f(x)`; on `∂O_n` only infinite points are admissible.
    pub fn eval(&self, x: &BoundaryPoint) -> Result<Scalar> {
        x.validate(self.n)?;
        if self.space == Space::Boundary && x.is_finite() {
            return Err(Error::mode(format!("finite point {x} is not in the infinite path space")));
        }
        Ok(self
            .terms
            .iter()
            .find(|(s, _)| s.contains(x))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero))
    }

    /// Restriction to the infinite paths: `Z(μ) ↦ Z^∞(μ)`, singletons vanish.
    pub fn restrict_to_boundary(&self) -> Result<Self> {
        if self.space != Space::Path {
            return Err(Error::mode("restriction needs a function on the finite-and-infinite path space"));
        }
        let mut root = Node::Leaf(Scalar::zero());
        for (set, c) in &self.terms {
            if let BasicSet::Cyl(w) = set {
                root.assign(&BasicSet::CylInf(w.clone()), self.n, &mut |l: &mut Scalar| *l = c.clone());
            }
        }
        Ok(Self::from_tree(Space::Boundary, self.n, root))
    }

    /// `max |f|` after substituting a rational for `t`.
    pub fn sup_norm_at(&self, t: &Rational) -> Result<Rational> {
        let mut best = Rational::zero();
        for (_, c) in &self.terms {
            let v = c.eval(t)?.abs();
            if v > best {
                best = v;
            }
        }
        Ok(best)
    }

    pub fn parse(src: &str, space: Option<Space>, n: u8) -> Result<Self> {
        let mut cur = Cursor::new(src)?;
        let space = space.unwrap_or_else(|| infer_space(src));
        let f = parse_function_expr(&mut cur, space, n)?;
        cur.expect_end()?;
        Ok(f)
    }
}

fn check_set(space: Space, set: &BasicSet) -> Result<()> {
    match (space, set) {
        (Space::Boundary, BasicSet::CylInf(_)) => Ok(()),
        (Space::Path, BasicSet::Cyl(_) | BasicSet::Point(_)) => Ok(()),
        _ => Err(Error::mode(format!("basic set {set} does not belong to {space:?} space"))),
    }
}

/// `Zinf` anywhere means the infinite path space; otherwise `∂E_n`.
pub(crate) fn infer_space(src: &str) -> Space {
    if src.contains("Zinf") {
        Space::Boundary
    } else {
        Space::Path
    }
}

fn starts_function_factor(tok: &Tok) -> bool {
    starts_basic_set(tok)
        || matches!(tok, Tok::Digits(_) | Tok::LParen)
        || matches!(tok, Tok::Ident(s) if s == "t")
}

/// `expr := [+|-] term ((+|-) term)*`, `term := factor ([*] factor)*`,
/// `factor := set | number | t^k | ( expr )`.
pub(crate) fn parse_function_expr(cur: &mut Cursor, space: Space, n: u8) -> Result<SimpleFunction> {
    check_alphabet(n)?;
    let mut neg = if cur.eat(&Tok::Minus) {
        true
    } else {
        cur.eat(&Tok::Plus);
        false
    };
    let mut acc = SimpleFunction::zero(space, n);
    loop {
        let term = parse_function_term(cur, space, n)?;
        acc = if neg { acc.sub(&term)? } else { acc.add(&term)? };
        match cur.peek() {
            Tok::Plus => neg = false,
            Tok::Minus => neg = true,
            _ => break,
        }
        cur.bump();
    }
    Ok(acc)
}

pub(crate) fn parse_function_term(cur: &mut Cursor, space: Space, n: u8) -> Result<SimpleFunction> {
    let mut acc = parse_function_factor(cur, space, n)?;
    loop {
        if cur.peek() == &Tok::Star && starts_function_factor(cur.peek_at(1)) {
            cur.bump();
        } else if !starts_function_factor(cur.peek()) {
            break;
        }
        let f = parse_function_factor(cur, space, n)?;
        acc = acc.mul(&f)?;
    }
    Ok(acc)
}

fn parse_function_factor(cur: &mut Cursor, space: Space, n: u8) -> Result<SimpleFunction> {
    if starts_basic_set(cur.peek()) {
        let pos = cur.pos();
        let set = parse_basic_set(cur)?;
        return SimpleFunction::indicator(space, n, set).map_err(|e| match e {
            Error::Mode(m) => Error::Mode(format!("{m} (at byte {pos})")),
            other => other,
        });
    }
    if cur.eat(&Tok::LParen) {
        let f = parse_function_expr(cur, space, n)?;
        cur.expect(&Tok::RParen)?;
        return Ok(f);
    }
    match cur.peek() {
        Tok::Digits(_) | Tok::Ident(_) if starts_function_factor(cur.peek()) => {
            let c = parse_scalar_factor(cur)?;
            Ok(SimpleFunction::constant(space, n, c))
        }
        _ => Err(cur.error("a basic set, a coefficient or '('")),
    }
}

impl fmt::Display for SimpleFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (set, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let simple = c.len() == 1 && c.terms().all(|(_, q)| q.is_positive());
            if c.is_one() {
                write!(f, "{set}")?;
            } else if simple {
                write!(f, "{c}*{set}")?;
            } else {
                write!(f, "({c})*{set}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SimpleFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimpleFunction[{:?}, n={}]({self})", self.space, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pf(s: &str) -> SimpleFunction {
        SimpleFunction::parse(s, None, 2).unwrap()
    }

    fn bp(s: &str) -> BoundaryPoint {
        s.parse().unwrap()
    }

    #[test]
    fn partition_identity_merges_to_constant() {
        let f = pf("Z(1)").add(&pf("Z(2) + P(e)")).unwrap();
        assert_eq!(f, SimpleFunction::one(Space::Path, 2));
        assert_eq!(f.terms().len(), 1);
        assert_eq!(f.to_string(), "Z(e)");
    }

    #[test]
    fn products_of_indicators() {
        assert!(pf("Z(1)").mul(&pf("Z(2)")).unwrap().is_zero());
        assert_eq!(pf("Z(1)").mul(&pf("Z(11)")).unwrap(), pf("Z(11)"));
    }

    #[test]
    fn evaluation_examples() {
        assert!(pf("Z(1)").eval(&bp("12")).unwrap().is_one());
        assert!(pf("P(e)").eval(&bp("(1)")).unwrap().is_zero());
        let f = pf("(1-2t)*P(1)");
        assert_eq!(f.eval(&bp("1")).unwrap(), "1-2t".parse().unwrap());
    }

    #[test]
    fn restriction_examples() {
        assert_eq!(pf("Z(1)").restrict_to_boundary().unwrap(), pf("Zinf(1)"));
        assert!(pf("P(e)").restrict_to_boundary().unwrap().is_zero());
        assert_eq!(
            pf("Z(1) + P(2)").restrict_to_boundary().unwrap(),
            pf("Zinf(1)")
        );
    }

    #[test]
    fn boundary_siblings_merge_without_points() {
        let f = pf("Zinf(1) + Zinf(2)");
        assert_eq!(f.to_string(), "Zinf(e)");
        assert!(f.eval(&bp("1")).is_err());
    }

    #[test]
    fn rejects_overlap_and_mode_mix() {
        let z = |s: &str| BasicSet::Cyl(s.parse().unwrap());
        assert!(SimpleFunction::new(Space::Path, 2, vec![(z("1"), Scalar::one()), (z("11"), Scalar::one())]).is_err());
        assert!(SimpleFunction::parse("Zinf(1) + Z(2)", None, 2).is_err());
        assert!(pf("Z(1)").add(&pf("Zinf(1)")).is_err());
    }

    #[test]
    fn display_reparses() {
        for s in ["0", "Z(1) + 3/2*P(e)", "(1 - 2t)*P(1) + (-1)*Z(2)", "t^-1*Zinf(11)"] {
            let f = pf(s);
            assert_eq!(pf(&f.to_string()), f, "{s}");
        }
    }
}
