//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr    := ['+' | '-'] term (('+' | '-') term)*
//! term    := factor ('*' factor)*
//! factor  := '-' factor | primary ['^' integer]
//! primary := integer ['/' integer] | variable | '(' expr ')'
//! ```
//!
//! Variables are `x y z w v u` or `x0 .. x5`. Implicit multiplication and
//! general division are rejected; `p/q` is only accepted between integer
//! literals.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{MultiPoly, Rational, STANDARD_VARS};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(text[start..i].parse().expect("digits")), start));
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                let t = self.term()?;
                t.scale(&-Rational::one())
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(Tok::Slash) => return self.err("division is only allowed inside rational literals"),
                Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    return self.err("implicit multiplication is not allowed; use `*`")
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(self.factor()?.scale(&-Rational::one()));
        }
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let Some(Tok::Int(e)) = self.peek().cloned() else {
                return self.err("exponent must be a non-negative integer");
            };
            let e: u32 = match u32::try_from(e) {
                Ok(e) if e <= 64 => e,
                _ => return self.err("exponent too large"),
            };
            self.pos += 1;
            if self.peek() == Some(&Tok::Caret) {
                return self.err("chained exponents are ambiguous; add parentheses");
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<MultiPoly> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let mut value = Rational::from_integer(n);
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    let Some(Tok::Int(d)) = self.peek().cloned() else {
                        return self.err("expected an integer denominator");
                    };
                    if d.is_zero() {
                        return self.err("zero denominator");
                    }
                    self.pos += 1;
                    value /= Rational::from_integer(d);
                }
                Ok(MultiPoly::constant(self.vars, value))
            }
            Some(Tok::Ident(name)) => {
                let at = self.offset();
                self.pos += 1;
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(MultiPoly::var(self.vars, i)),
                    None => Err(Error::UnknownVariable { name, pos: at }),
                }
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => self.err("expected a number, variable or `(`"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` over the ordered variable list `vars`.
pub fn parse_poly(text: &str, vars: &[&str]) -> Result<MultiPoly> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(Error::Syntax {
            pos: 0,
            msg: "empty expression".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        vars,
    };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(poly)
}

/// Parses with variables inferred from the text: either the prefix of
/// `x y z w v u` or `x0 .. xk`, at least three variables.
pub fn parse_poly_auto(text: &str) -> Result<MultiPoly> {
    let toks = lex(text)?;
    let mut max_std: Option<usize> = None;
    let mut max_idx: Option<usize> = None;
    for (tok, pos) in &toks {
        let Tok::Ident(name) = tok else { continue };
        if let Some(i) = STANDARD_VARS.iter().position(|v| v == name) {
            max_std = max_std.max(Some(i));
        } else if let Some(i) = name
            .strip_prefix('x')
            .and_then(|rest| rest.parse::<usize>().ok())
            .filter(|&i| i < 6)
        {
            max_idx = max_idx.max(Some(i));
        } else {
            return Err(Error::UnknownVariable {
                name: name.clone(),
                pos: *pos,
            });
        }
    }
    match (max_std, max_idx) {
        (Some(_), Some(_)) => Err(Error::InvalidInput(
            "mixes named variables with indexed x0..x5 variables".into(),
        )),
        (_, Some(k)) => {
            let names: Vec<String> = (0..=k.max(2)).map(|i| format!("x{i}")).collect();
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            parse_poly(text, &refs)
        }
        (k, None) => {
            let n = k.unwrap_or(0).max(2) + 1;
            parse_poly(text, &STANDARD_VARS[..n])
        }
    }
}
