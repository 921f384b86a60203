use crate::error::{Error, Result};
use crate::parse::{Cursor, Tok};
use crate::scalar::parse_scalar_factor;
use crate::words::{parse_word, Word};

use super::{AlgebraElement, AlgebraMode};

pub(super) fn parse_element(src: &str, mode: AlgebraMode) -> Result<AlgebraElement> {
    crate::words::check_alphabet(mode.n())?;
    let mut cur = Cursor::new(src)?;
    let a = parse_expr(&mut cur, mode)?;
    cur.expect_end()?;
    Ok(a)
}

fn starts_factor(tok: &Tok) -> bool {
    match tok {
        Tok::Digits(_) | Tok::LParen => true,
        Tok::Ident(s) => matches!(s.as_str(), "t" | "T" | "S" | "E"),
        _ => false,
    }
}

pub(crate) fn parse_expr(cur: &mut Cursor, mode: AlgebraMode) -> Result<AlgebraElement> {
    let mut neg = if cur.eat(&Tok::Minus) {
        true
    } else {
        cur.eat(&Tok::Plus);
        false
    };
    let mut acc = AlgebraElement::zero(mode);
    loop {
        let term = parse_term(cur, mode)?;
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

fn parse_term(cur: &mut Cursor, mode: AlgebraMode) -> Result<AlgebraElement> {
    let mut acc = parse_factor(cur, mode)?;
    loop {
        if cur.peek() == &Tok::Star && starts_factor(cur.peek_at(1)) {
            cur.bump();
        } else if !starts_factor(cur.peek()) {
            break;
        }
        let f = parse_factor(cur, mode)?;
        acc = acc.mul(&f)?;
    }
    Ok(acc)
}

fn bracket_word(cur: &mut Cursor, mode: AlgebraMode) -> Result<Word> {
    cur.expect(&Tok::LBracket)?;
    let w = parse_word(cur)?;
    cur.expect(&Tok::RBracket)?;
    w.validate(mode.n())?;
    Ok(w)
}

fn parse_factor(cur: &mut Cursor, mode: AlgebraMode) -> Result<AlgebraElement> {
    match cur.peek().clone() {
        Tok::Ident(s) if s == "T" || s == "S" => {
            cur.bump();
            let star = cur.peek() == &Tok::Star && cur.peek_at(1) == &Tok::LBracket;
            if star {
                cur.bump();
            }
            let w = bracket_word(cur, mode)?;
            if star {
                AlgebraElement::monomial(mode, Word::empty(), w)
            } else {
                AlgebraElement::monomial(mode, w, Word::empty())
            }
        }
        Tok::Ident(s) if s == "E" => {
            cur.bump();
            Ok(AlgebraElement::vacuum_projection(mode))
        }
        Tok::LParen => {
            cur.bump();
            let inner = parse_expr(cur, mode)?;
            cur.expect(&Tok::RParen)?;
            if cur.eat(&Tok::Caret) {
                let k = match cur.bump() {
                    Tok::Digits(d) => d
                        .parse::<u32>()
                        .map_err(|_| Error::input("exponent out of range"))?,
                    _ => return Err(cur.error("a nonnegative exponent")),
                };
                let mut out = AlgebraElement::one(mode);
                for _ in 0..k {
                    out = out.mul(&inner)?;
                }
                return Ok(out);
            }
            Ok(inner)
        }
        Tok::Digits(_) | Tok::Ident(_) if starts_factor(cur.peek()) => {
            Ok(AlgebraElement::scalar(mode, parse_scalar_factor(cur)?))
        }
        _ => Err(cur.error("'T[', 'T*[', 'S[', 'S*[', 'E', a coefficient or '('")),
    }
}
