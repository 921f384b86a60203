//! Laurent polynomials in one formal variable `t` with exact rational
//! coefficients.
//!
//! `t` stands for `e^{-β}` throughout the state formulas; keeping it formal
//! lets every KMS identity be checked as an identity of polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::parse::{Cursor, Tok};

/// Exact rational number.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let mut cur = Cursor::new(s)?;
    let neg = cur.eat(&Tok::Minus);
    let q = rational_literal(&mut cur)?;
    cur.expect_end()?;
    Ok(if neg { -q } else { q })
}

fn rational_literal(cur: &mut Cursor) -> Result<Rational> {
    let num = match cur.peek().clone() {
        Tok::Digits(d) => {
            cur.bump();
            d
        }
        _ => return Err(cur.error("a number")),
    };
    let num: BigInt = num.parse().expect("digit run");
    if cur.peek() == &Tok::Slash {
        cur.bump();
        let den = match cur.peek().clone() {
            Tok::Digits(d) => {
                cur.bump();
                d
            }
            _ => return Err(cur.error("a denominator")),
        };
        let den: BigInt = den.parse().expect("digit run");
        if den.is_zero() {
            return Err(Error::input("zero denominator"));
        }
        Ok(BigRational::new(num, den))
    } else {
        Ok(BigRational::from_integer(num))
    }
}

/// A Laurent polynomial `Σ c_k t^k`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    coeffs: BTreeMap<i32, Rational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Scalar::monomial(c, 0)
    }

    pub fn int(c: i64) -> Self {
        Scalar::constant(Rational::from_integer(c.into()))
    }

    /// `c · t^k`.
    pub fn monomial(c: Rational, k: i32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        Scalar { coeffs }
    }

    /// The formal variable `t`.
    pub fn t() -> Self {
        Scalar::t_pow(1)
    }

    pub fn t_pow(k: i32) -> Self {
        Scalar::monomial(Rational::one(), k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value if this is a degree-0 polynomial (or zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => self.coeffs.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn coeff(&self, k: i32) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i32) -> Scalar {
        Scalar {
            coeffs: self.coeffs.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    /// Exact value at `t = value`.
    pub fn eval(&self, value: &Rational) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (k, c) in &self.coeffs {
            if *k < 0 && value.is_zero() {
                return Err(Error::domain("negative power of t evaluated at t = 0"));
            }
            acc += c * pow(value, *k);
        }
        Ok(acc)
    }

    /// Substitute a rational for `t`, giving a constant Scalar.
    pub fn substitute(&self, value: &Rational) -> Result<Scalar> {
        Ok(Scalar::constant(self.eval(value)?))
    }

    pub fn pow(&self, k: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

/// `q^k` for any integer exponent (q nonzero when k < 0).
pub fn pow(q: &Rational, k: i32) -> Rational {
    let base = if k < 0 { q.recip() } else { q.clone() };
    num_traits::pow(base, k.unsigned_abs() as usize)
}

impl From<Rational> for Scalar {
    fn from(c: Rational) -> Self {
        Scalar::constant(c)
    }
}

impl From<i64> for Scalar {
    fn from(c: i64) -> Self {
        Scalar::int(c)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (k, c) in &rhs.coeffs {
            let entry = self.coeffs.entry(*k).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                self.coeffs.remove(k);
            }
        }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        self += &rhs;
        self
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (a, x) in &self.coeffs {
            for (b, y) in &rhs.coeffs {
                out += &Scalar::monomial(x * y, a + b);
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mag = c.abs();
            if *k == 0 {
                f.write_str(&fmt_rational(&mag))?;
                continue;
            }
            if !mag.is_one() {
                f.write_str(&fmt_rational(&mag))?;
            }
            if *k == 1 {
                f.write_str("t")?;
            } else {
                write!(f, "t^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s)?;
        let v = parse_scalar_expr(&mut cur)?;
        cur.expect_end()?;
        Ok(v)
    }
}

/// True when the next token can begin a scalar factor.
pub(crate) fn starts_scalar_factor(tok: &Tok) -> bool {
    matches!(tok, Tok::Digits(_) | Tok::LParen) || matches!(tok, Tok::Ident(s) if s == "t")
}

/// `expr := [+|-] term ((+|-) term)*`
pub(crate) fn parse_scalar_expr(cur: &mut Cursor) -> Result<Scalar> {
    let mut neg = if cur.eat(&Tok::Minus) {
        true
    } else {
        cur.eat(&Tok::Plus);
        false
    };
    let mut acc = Scalar::zero();
    loop {
        let term = parse_scalar_term(cur)?;
        acc += &(if neg { -term } else { term });
        match cur.peek() {
            Tok::Plus => neg = false,
            Tok::Minus => neg = true,
            _ => break,
        }
        cur.bump();
    }
    Ok(acc)
}

/// `term := factor ([*] factor)*`, stopping before a `*` that is not followed
/// by a scalar factor so that host grammars can continue.
pub(crate) fn parse_scalar_term(cur: &mut Cursor) -> Result<Scalar> {
    let mut acc = parse_scalar_factor(cur)?;
    loop {
        if cur.peek() == &Tok::Star && starts_scalar_factor(cur.peek_at(1)) {
            cur.bump();
        } else if !starts_scalar_factor(cur.peek()) {
            break;
        }
        let f = parse_scalar_factor(cur)?;
        acc = &acc * &f;
    }
    Ok(acc)
}

pub(crate) fn parse_scalar_factor(cur: &mut Cursor) -> Result<Scalar> {
    match cur.peek().clone() {
        Tok::Digits(_) => Ok(Scalar::constant(rational_literal(cur)?)),
        Tok::Ident(s) if s == "t" => {
            cur.bump();
            if cur.eat(&Tok::Caret) {
                let neg = cur.eat(&Tok::Minus);
                let k = match cur.bump() {
                    Tok::Digits(d) => d
                        .parse::<i32>()
                        .map_err(|_| Error::input("exponent out of range"))?,
                    _ => return Err(cur.error("an exponent")),
                };
                Ok(Scalar::t_pow(if neg { -k } else { k }))
            } else {
                Ok(Scalar::t())
            }
        }
        Tok::LParen => {
            cur.bump();
            let v = parse_scalar_expr(cur)?;
            cur.expect(&Tok::RParen)?;
            if cur.eat(&Tok::Caret) {
                let k = match cur.bump() {
                    Tok::Digits(d) => d
                        .parse::<u32>()
                        .map_err(|_| Error::input("exponent out of range"))?,
                    _ => return Err(cur.error("a nonnegative exponent")),
                };
                return Ok(v.pow(k));
            }
            Ok(v)
        }
        _ => Err(cur.error("a number, 't' or '('")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn parses_laurent_literals() {
        assert_eq!(s("3/2"), Scalar::constant(rat(3, 2)));
        assert_eq!(s("t^2"), Scalar::t_pow(2));
        assert_eq!(s("(1-2t)"), &Scalar::one() - &Scalar::monomial(rat(2, 1), 1));
        assert_eq!(s("-t^-1 + 3/2t^2").coeff(-1), rat(-1, 1));
        assert_eq!(s("2*t*t"), Scalar::monomial(rat(2, 1), 2));
        assert_eq!(s("(1+t)^2"), s("1 + 2t + t^2"));
    }

    #[test]
    fn display_is_ascending_and_reparses() {
        let x = s("t^3 - 1/3 + 2t^-2");
        assert_eq!(x.to_string(), "2t^-2 - 1/3 + t^3");
        assert_eq!(s(&x.to_string()), x);
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!(s("1-2t").to_string(), "1 - 2t");
    }

    #[test]
    fn arithmetic_cancels_to_zero() {
        let x = s("1 - 2t");
        assert!((&x - &x).is_zero());
        assert_eq!(&x * &Scalar::t_pow(-1), s("t^-1 - 2"));
    }

    #[test]
    fn exact_substitution() {
        let x = s("1 - 2t");
        assert_eq!(x.eval(&rat(1, 3)).unwrap(), rat(1, 3));
        assert!(Scalar::t_pow(-1).eval(&Rational::zero()).is_err());
        assert_eq!(Scalar::t_pow(-2).eval(&rat(1, 2)).unwrap(), rat(4, 1));
    }

    #[test]
    fn rejects_garbage() {
        assert!("1 +".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
        assert!("1/0".parse::<Scalar>().is_err());
    }
}
