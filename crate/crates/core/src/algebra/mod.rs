//! The symbolic dense subalgebra of the Cuntz–Toeplitz algebra `E_n`, of
//! the Cuntz algebra `O_n`, and of finite-letter spans inside `O_∞`.

pub mod identities;
mod matrix;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

pub use matrix::{matrix_check, AlgebraMatrix};

use crate::error::{Error, Result};
use crate::groups::{GammaTable, VnTable};
use crate::scalar::{rat, Scalar};
use crate::words::{check_alphabet, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraMode {
    /// `E_n`: no relation besides `T_i^* T_j = δ_ij`.
    Toeplitz(u8),
    /// `O_n`: additionally `Σ S_i S_i^* = 1`.
    Cuntz(u8),
    /// The span of `T_μ T_ν^*` with letters at most `N` inside `O_∞`.
    InfiniteCuntz(u8),
}

impl AlgebraMode {
    pub fn n(self) -> u8 {
        match self {
            AlgebraMode::Toeplitz(n) | AlgebraMode::Cuntz(n) | AlgebraMode::InfiniteCuntz(n) => n,
        }
    }

    fn generator(self) -> &'static str {
        match self {
            AlgebraMode::Cuntz(_) => "S",
            _ => "T",
        }
    }
}

impl fmt::Display for AlgebraMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraMode::Toeplitz(n) => write!(f, "toeplitz:{n}"),
            AlgebraMode::Cuntz(n) => write!(f, "cuntz:{n}"),
            AlgebraMode::InfiniteCuntz(n) => write!(f, "infinite:{n}"),
        }
    }
}

/// `T_μ T_ν^*`.
pub type Monomial = (Word, Word);

/// Product of two monomials, `None` when it vanishes.
pub fn monomial_mul(a: &Monomial, b: &Monomial) -> Option<Monomial> {
    let (mu, nu) = a;
    let (alpha, beta) = b;
    if let Some(rest) = alpha.strip_prefix(nu) {
        Some((mu.concat(&rest), beta.clone()))
    } else {
        nu.strip_prefix(alpha).map(|rest| (mu.clone(), beta.concat(&rest)))
    }
}

/// Gauge degree `|μ| − |ν|`.
pub fn monomial_degree(m: &Monomial) -> i32 {
    m.0.len() as i32 - m.1.len() as i32
}

/// Which algebra-level state to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phi {
    /// `φ_{n,β}(T_μ T_ν^*) = δ_{μν} t^{|μ|}` on `E_n`.
    ToeplitzKms,
    /// `φ_n(S_μ S_ν^*) = δ_{μν} n^{-|μ|}` on `O_n`.
    CuntzKms,
    /// The vacuum state: the coefficient of `1`.
    Ground,
}

/// A finite combination of monomials with Laurent-polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    mode: AlgebraMode,
    terms: BTreeMap<Monomial, Scalar>,
}

impl AlgebraElement {
    pub fn zero(mode: AlgebraMode) -> Self {
        AlgebraElement {
            mode,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(mode: AlgebraMode, c: Scalar) -> Self {
        Self::term(mode, (Word::empty(), Word::empty()), c)
    }

    pub fn one(mode: AlgebraMode) -> Self {
        Self::scalar(mode, Scalar::one())
    }

    fn term(mode: AlgebraMode, m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        AlgebraElement { mode, terms }
    }

    /// `T_μ T_ν^*`; letters must lie in the mode's alphabet.
    pub fn monomial(mode: AlgebraMode, mu: Word, nu: Word) -> Result<Self> {
        check_alphabet(mode.n())?;
        mu.validate(mode.n())?;
        nu.validate(mode.n())?;
        Ok(Self::term(mode, (mu, nu), Scalar::one()))
    }

    /// The projection `e_n = 1 − Σ T_i T_i^*` (zero in `O_n`).
    pub fn vacuum_projection(mode: AlgebraMode) -> Self {
        let mut out = Self::one(mode);
        for i in 1..=mode.n() {
            out.add_term((Word::letter(i), Word::letter(i)), &-Scalar::one());
        }
        out
    }

    pub fn mode(&self) -> AlgebraMode {
        self.mode
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check_mode(&self, other: &AlgebraElement) -> Result<()> {
        if self.mode != other.mode {
            return Err(Error::mode(format!("{} versus {}", self.mode, other.mode)));
        }
        Ok(())
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<Self> {
        self.check_mode(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero(self.mode);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &(v * c));
        }
        out
    }

    pub fn mul(&self, other: &AlgebraElement) -> Result<Self> {
        self.check_mode(other)?;
        let mut out = Self::zero(self.mode);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some(m) = monomial_mul(a, b) {
                    out.add_term(m, &(ca * cb));
                }
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> Self {
        AlgebraElement {
            mode: self.mode,
            terms: self
                .terms
                .iter()
                .map(|((mu, nu), c)| ((nu.clone(), mu.clone()), c.clone()))
                .collect(),
        }
    }

    /// Normal form modulo `S_μ S_ν^* = Σ_j S_{μj} S_{νj}^*`: within each
    /// degree every right leg is extended to the longest one present.
    fn cuntz_normal(&self) -> BTreeMap<Monomial, Scalar> {
        let n = self.mode.n();
        let mut target: BTreeMap<i32, usize> = BTreeMap::new();
        for m in self.terms.keys() {
            let t = target.entry(monomial_degree(m)).or_insert(0);
            *t = (*t).max(m.1.len());
        }
        let mut out: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in &self.terms {
            let extra = target[&monomial_degree(m)] - m.1.len();
            for tail in Word::all_of_length(n, extra) {
                let key = (m.0.concat(&tail), m.1.concat(&tail));
                let e = out.entry(key).or_insert_with(Scalar::zero);
                *e = &*e + c;
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Equality in the algebra: term identity in `E_n` and `O_∞`, equality
    /// after refinement in `O_n`.
    pub fn equals(&self, other: &AlgebraElement) -> Result<bool> {
        self.check_mode(other)?;
        Ok(match self.mode {
            AlgebraMode::Cuntz(_) => self.sub(other)?.cuntz_normal().is_empty(),
            _ => self.terms == other.terms,
        })
    }

    pub fn is_unitary(&self) -> Result<bool> {
        let one = Self::one(self.mode);
        Ok(self.mul(&self.adjoint())?.equals(&one)? && self.adjoint().mul(self)?.equals(&one)?)
    }

    /// `Σ T_dst T_src^*` over the rows, in `O_n`.
    pub fn from_vn(g: &VnTable) -> Self {
        let mode = AlgebraMode::Cuntz(g.n());
        let mut out = Self::zero(mode);
        for (s, d) in g.rows() {
            out.add_term((d.clone(), s.clone()), &Scalar::one());
        }
        out
    }

    /// `Σ T_dst T_src^* + Σ T_v e_n T_w^*`, in `E_n`.
    pub fn from_gamma(g: &GammaTable) -> Self {
        let n = g.n();
        let mode = AlgebraMode::Toeplitz(n);
        let mut out = Self::zero(mode);
        for (s, d) in g.cyl_rows() {
            out.add_term((d.clone(), s.clone()), &Scalar::one());
        }
        for (w, v) in g.pt_rows() {
            out.add_term((v.clone(), w.clone()), &Scalar::one());
            for i in 1..=n {
                out.add_term((v.child(i), w.child(i)), &-Scalar::one());
            }
        }
        out
    }

    /// The Fock representation: `T_μ T_ν^* δ_w = δ_{μw'}` when `w = νw'`.
    pub fn fock_apply(&self, basis: &Word) -> Result<BTreeMap<Word, Scalar>> {
        if !matches!(self.mode, AlgebraMode::Toeplitz(_)) {
            return Err(Error::mode("the Fock representation is defined on the Toeplitz algebra"));
        }
        basis.validate(self.mode.n())?;
        let mut out: BTreeMap<Word, Scalar> = BTreeMap::new();
        for ((mu, nu), c) in &self.terms {
            if let Some(rest) = basis.strip_prefix(nu) {
                let e = out.entry(mu.concat(&rest)).or_insert_with(Scalar::zero);
                *e = &*e + c;
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    /// Components by gauge degree `|μ| − |ν|`.
    pub fn grade_decompose(&self) -> BTreeMap<i32, AlgebraElement> {
        let mut out: BTreeMap<i32, AlgebraElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(monomial_degree(m))
                .or_insert_with(|| Self::zero(self.mode))
                .add_term(m.clone(), c);
        }
        out
    }

    /// `γ_{iβ}`: the degree-`k` component is multiplied by `t^k`.
    pub fn gauge_scale(&self) -> Self {
        let mut out = Self::zero(self.mode);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &c.shift(monomial_degree(m)));
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        self.grade_decompose().len() <= 1
    }

    pub fn phi(&self, which: Phi) -> Result<Scalar> {
        let n = self.mode.n();
        match (which, self.mode) {
            (Phi::ToeplitzKms, AlgebraMode::Toeplitz(_)) => Ok(self
                .terms
                .iter()
                .filter(|((mu, nu), _)| mu == nu)
                .fold(Scalar::zero(), |acc, ((mu, _), c)| acc + c.shift(mu.len() as i32))),
            (Phi::CuntzKms, AlgebraMode::Cuntz(_)) => {
                let t = rat(1, i64::from(n));
                let mut acc = Scalar::zero();
                for ((mu, nu), c) in &self.terms {
                    if mu == nu {
                        let v = c.eval(&t)? * crate::scalar::pow(&t, mu.len() as i32);
                        acc = acc + Scalar::constant(v);
                    }
                }
                Ok(acc)
            }
            (Phi::Ground, AlgebraMode::Toeplitz(_) | AlgebraMode::InfiniteCuntz(_)) => Ok(self
                .terms
                .get(&(Word::empty(), Word::empty()))
                .cloned()
                .unwrap_or_else(Scalar::zero)),
            _ => Err(Error::mode(format!("{which:?} is not defined on {}", self.mode))),
        }
    }

    pub fn parse(src: &str, mode: AlgebraMode) -> Result<Self> {
        parse::parse_element(src, mode)
    }
}

/// `φ` on a single monomial.
pub fn phi_monomial(m: &Monomial, which: Phi, n: u8) -> Scalar {
    if m.0 != m.1 {
        return Scalar::zero();
    }
    let k = m.0.len() as i32;
    match which {
        Phi::ToeplitzKms => Scalar::t_pow(k),
        Phi::CuntzKms => Scalar::constant(crate::scalar::pow(&rat(1, i64::from(n)), k)),
        Phi::Ground => {
            if k == 0 {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        }
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, mode: AlgebraMode, (mu, nu): &Monomial) -> fmt::Result {
    let g = mode.generator();
    if mu.is_empty() && nu.is_empty() {
        return f.write_str("1");
    }
    if !mu.is_empty() {
        write!(f, "{g}[{mu}]")?;
    }
    if !nu.is_empty() {
        write!(f, "{g}*[{nu}]")?;
    }
    Ok(())
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let unit = m.0.is_empty() && m.1.is_empty();
            let simple = c.len() == 1 && c.terms().all(|(_, q)| num_traits::Signed::is_positive(q));
            if c.is_one() {
                fmt_monomial(f, self.mode, m)?;
            } else if unit {
                if simple {
                    write!(f, "{c}")?;
                } else {
                    write!(f, "({c})")?;
                }
            } else if simple {
                write!(f, "{c}*")?;
                fmt_monomial(f, self.mode, m)?;
            } else {
                write!(f, "({c})*")?;
                fmt_monomial(f, self.mode, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement[{}]({self})", self.mode)
    }
}

#[cfg(test)]
mod tests;
