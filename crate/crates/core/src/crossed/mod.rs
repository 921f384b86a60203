//! The algebraic crossed products `C(∂O_n) ⋊ V_n` and `C(∂E_n) ⋊ Γ_n`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::groups::{GammaTable, Table, VnTable};
use crate::parse::{Cursor, Tok};
use crate::scalar::Scalar;
use crate::words::{check_alphabet, parse_function_term, SimpleFunction};

/// A finite sum `Σ f_g λ_g` keyed by canonical tables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CPElement<G: Table> {
    n: u8,
    terms: BTreeMap<G, SimpleFunction>,
}

pub type VnElement = CPElement<VnTable>;
pub type GammaElement = CPElement<GammaTable>;

impl<G: Table> CPElement<G> {
    pub fn zero(n: u8) -> Self {
        CPElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: u8) -> Self {
        Self::term(SimpleFunction::one(G::SPACE, n), G::identity(n)).expect("unit is well formed")
    }

    /// `f λ_g`.
    pub fn term(f: SimpleFunction, g: G) -> Result<Self> {
        if f.space() != G::SPACE || f.n() != g.n() {
            return Err(Error::mode(format!(
                "function on {:?}/{} with a group element over {}",
                f.space(),
                f.n(),
                g.n()
            )));
        }
        let mut out = Self::zero(g.n());
        out.add_term(g, f);
        Ok(out)
    }

    /// `λ_g`.
    pub fn unitary(g: G) -> Self {
        let n = g.n();
        Self::term(SimpleFunction::one(G::SPACE, n), g).expect("unit function matches")
    }

    /// `f λ_e`.
    pub fn function(f: SimpleFunction) -> Result<Self> {
        let n = f.n();
        Self::term(f, G::identity(n))
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&G, &SimpleFunction)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &G) -> Option<&SimpleFunction> {
        self.terms.get(g)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, g: G, f: SimpleFunction) {
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&g) {
            Some(v) => {
                *v = v.add(&f).expect("modes agree inside one element");
                if v.is_zero() {
                    self.terms.remove(&g);
                }
            }
            None => {
                self.terms.insert(g, f);
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::mode(format!("alphabets {} and {}", self.n, other.n)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (g, f) in &other.terms {
            out.add_term(g.clone(), f.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.n);
        for (g, f) in &self.terms {
            out.add_term(g.clone(), f.scale(c));
        }
        out
    }

    /// `(f λ_g)(f' λ_h) = f·(g·f') λ_{gh}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.n);
        for (g, f) in &self.terms {
            for (h, f2) in &other.terms {
                let moved = g.act_on_function(f2)?;
                out.add_term(g.compose(h), f.mul(&moved)?);
            }
        }
        Ok(out)
    }

    /// `(f λ_g)^* = (g^{-1}·f) λ_{g^{-1}}` (coefficients are real).
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (g, f) in &self.terms {
            let gi = g.inverse();
            let moved = gi.act_on_function(f).expect("modes agree inside one element");
            out.add_term(gi, moved);
        }
        out
    }

    /// The canonical conditional expectation onto the functions.
    pub fn expectation(&self) -> Self {
        let mut out = Self::zero(self.n);
        if let Some(f) = self.terms.get(&G::identity(self.n)) {
            out.add_term(G::identity(self.n), f.clone());
        }
        out
    }

    /// Keep only the terms whose group element satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&G) -> bool) -> Self {
        CPElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(g, _)| keep(g))
                .map(|(g, f)| (g.clone(), f.clone()))
                .collect(),
        }
    }

    /// Split each `f_g λ_g` along the range pieces of `g` by the value of
    /// the cocycle `|dst| − |src|` there.
    pub fn homogeneous_decompose(&self) -> Result<BTreeMap<i32, Self>> {
        let mut out: BTreeMap<i32, Self> = BTreeMap::new();
        for (g, f) in &self.terms {
            let mut by_degree: BTreeMap<i32, Vec<_>> = BTreeMap::new();
            for (piece, k) in g.range_pieces() {
                by_degree.entry(k).or_default().push(piece);
            }
            for (k, pieces) in by_degree {
                let ind = SimpleFunction::indicator_of(G::SPACE, self.n, &pieces)?;
                let part = f.mul(&ind)?;
                out.entry(k).or_insert_with(|| Self::zero(self.n)).add_term(g.clone(), part);
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    /// `γ_{iβ}(x) = Σ_k t^k x_k`.
    pub fn gauge_scale(&self) -> Result<Self> {
        let mut out = Self::zero(self.n);
        for (k, part) in self.homogeneous_decompose()? {
            out = out.add(&part.scale(&Scalar::t_pow(k)))?;
        }
        Ok(out)
    }

    /// The degree of a homogeneous element (`None` for zero).
    pub fn homogeneous_degree(&self) -> Result<Option<i32>> {
        let parts = self.homogeneous_decompose()?;
        match parts.len() {
            0 => Ok(None),
            1 => Ok(parts.keys().next().copied()),
            _ => Err(Error::domain(format!(
                "element is not homogeneous: degrees {:?}",
                parts.keys().collect::<Vec<_>>()
            ))),
        }
    }

    /// Substitute a rational for `t` in every coefficient.
    pub fn substitute(&self, t: &crate::Rational) -> Result<Self> {
        let mut out = Self::zero(self.n);
        for (g, f) in &self.terms {
            let mut err = None;
            let h = f.map_values(|c| {
                c.substitute(t).unwrap_or_else(|e| {
                    err = Some(e);
                    Scalar::zero()
                })
            });
            if let Some(e) = err {
                return Err(e);
            }
            out.add_term(g.clone(), h);
        }
        Ok(out)
    }

    /// Parse a sum of `f * L[g]` terms over the alphabet `n`; a bare `f`
    /// means `f λ_e` and a bare `L[g]` means `1 λ_g`.
    pub fn parse(src: &str, n: u8) -> Result<Self> {
        check_alphabet(n)?;
        let mut cur = Cursor::new(src)?;
        let mut neg = if cur.eat(&Tok::Minus) {
            true
        } else {
            cur.eat(&Tok::Plus);
            false
        };
        let mut acc = Self::zero(n);
        loop {
            let term = parse_term::<G>(&mut cur, src, n)?;
            acc = if neg { acc.sub(&term)? } else { acc.add(&term)? };
            match cur.peek() {
                Tok::Plus => neg = false,
                Tok::Minus => neg = true,
                _ => break,
            }
            cur.bump();
        }
        cur.expect_end()?;
        Ok(acc)
    }
}

fn is_lambda(cur: &Cursor) -> bool {
    matches!(cur.peek(), Tok::Ident(s) if s == "L") && cur.peek_at(1) == &Tok::LBracket
}

fn parse_term<G: Table>(cur: &mut Cursor, src: &str, n: u8) -> Result<CPElement<G>> {
    let f = if is_lambda(cur) {
        SimpleFunction::one(G::SPACE, n)
    } else {
        let f = parse_function_term(cur, G::SPACE, n)?;
        if !cur.eat(&Tok::Star) && !is_lambda(cur) {
            return CPElement::function(f);
        }
        f
    };
    if !is_lambda(cur) {
        return Err(cur.error("'L[' followed by a table"));
    }
    cur.bump();
    cur.bump();
    let start = cur.pos();
    let mut depth = 1;
    loop {
        match cur.peek() {
            Tok::LBracket => depth += 1,
            Tok::RBracket => {
                depth -= 1;
                if depth == 0 {
                    break;
                }
            }
            Tok::End => return Err(cur.error("']' closing the table")),
            _ => {}
        }
        cur.bump();
    }
    let end = cur.pos();
    cur.bump();
    let g = G::parse_table(&src[start..end]).map_err(|e| match e {
        Error::Parse { pos, expected, found } => Error::Parse {
            pos: pos + start,
            expected,
            found,
        },
        other => other,
    })?;
    if g.n() != n {
        return Err(Error::mode(format!("table over {} inside an element over {n}", g.n())));
    }
    CPElement::term(f, g)
}

impl GammaElement {
    /// The expectation onto the finitary permutations: keep `f λ_g` with
    /// `π(g) = e`.
    pub fn expectation_to_permutations(&self) -> Self {
        self.filter(|g| g.kernel_permutation().is_some())
    }
}

impl<G: Table> fmt::Display for CPElement<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (g, func)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if func.terms().len() > 1 {
                write!(f, "({func}) * L[{g}]")?;
            } else {
                write!(f, "{func} * L[{g}]")?;
            }
        }
        Ok(())
    }
}

impl<G: Table> fmt::Debug for CPElement<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CPElement[n={}]({self})", self.n)
    }
}

#[cfg(test)]
mod tests;
