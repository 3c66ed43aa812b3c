//! Recursive-descent parser for the polynomial grammar:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' natural)?
//! base   := rational-literal | variable | '(' expr ')'
//! ```
//!
//! Implicit multiplication (`2x`) is rejected. Positions in errors are
//! 0-based character offsets.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{Polynomial, VariableSet};
use crate::error::{Error, Result};
use crate::exactnum::{rat_make, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Nat(u32),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    end: usize,
}

fn lex(text: &str) -> Result<Lexer> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    let err = |position: usize, message: String| Error::Parse { position, message };
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => toks.push((start, Tok::Plus)),
            '-' => toks.push((start, Tok::Minus)),
            '*' => toks.push((start, Tok::Star)),
            '^' => toks.push((start, Tok::Caret)),
            '(' => toks.push((start, Tok::LParen)),
            ')' => toks.push((start, Tok::RParen)),
            d if d.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let num: String = chars[start..i].iter().collect();
                let is_ratio =
                    i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit();
                if is_ratio {
                    let dstart = i + 1;
                    i = dstart;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let den: String = chars[dstart..i].iter().collect();
                    let n: BigInt = num.parse().expect("digits");
                    let d: BigInt = den.parse().expect("digits");
                    let r = rat_make(n, d)
                        .map_err(|_| err(dstart, "zero denominator in literal".into()))?;
                    toks.push((start, Tok::Num(r)));
                } else {
                    let n: BigInt = num.parse().expect("digits");
                    match u32::try_from(&n) {
                        Ok(small) => toks.push((start, Tok::Nat(small))),
                        Err(_) => toks.push((start, Tok::Num(Rational::from_integer(n)))),
                    }
                }
                continue;
            }
            a if a.is_ascii_alphabetic() => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((start, Tok::Ident(chars[start..i].iter().collect())));
                continue;
            }
            other => return Err(err(start, format!("unexpected character {other:?}"))),
        }
        i += 1;
    }
    Ok(Lexer { toks, end: chars.len() })
}

struct Parser<'a> {
    lx: Lexer,
    pos: usize,
    vars: &'a Arc<VariableSet>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.lx.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.lx.toks.get(self.pos).map_or(self.lx.end, |(p, _)| *p)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.here(), message: message.into() })
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let negate = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        if let Some(Tok::Num(_) | Tok::Nat(_) | Tok::Ident(_) | Tok::LParen) = self.peek() {
            return self.fail("implicit multiplication is not allowed; use '*'");
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek() {
                Some(Tok::Nat(e)) => {
                    let e = *e;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return self.fail("expected a natural-number exponent"),
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Polynomial> {
        match self.peek().cloned() {
            Some(Tok::Nat(n)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.vars.clone(), Rational::from_integer(n.into())))
            }
            Some(Tok::Num(r)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.vars.clone(), r))
            }
            Some(Tok::Ident(name)) => match self.vars.index_of(&name) {
                Some(v) => {
                    self.pos += 1;
                    Ok(Polynomial::var(self.vars.clone(), v))
                }
                None => Err(Error::UnknownVariable(name)),
            },
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => self.fail("expected ')'"),
                }
            }
            _ => self.fail("expected a number, variable or '('"),
        }
    }
}

/// Parses polynomial text over the given variables into canonical sparse form.
pub fn parse_polynomial(text: &str, vars: &Arc<VariableSet>) -> Result<Polynomial> {
    let lx = lex(text)?;
    let mut p = Parser { lx, pos: 0, vars };
    let poly = p.expr()?;
    if p.pos != p.lx.toks.len() {
        return p.fail("unexpected trailing input");
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Monomial;

    fn xy() -> Arc<VariableSet> {
        VariableSet::xy()
    }

    #[test]
    fn family_a_member() {
        let f = parse_polynomial("x^5 + x^2*y^3 + y^4", &xy()).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.coefficient(&Monomial::from_exponents(&[2, 3])), Rational::from_integer(1.into()));
    }

    #[test]
    fn expands_products() {
        let f = parse_polynomial("(x-y)*(x+y)", &xy()).unwrap();
        assert_eq!(f, parse_polynomial("x^2 - y^2", &xy()).unwrap());
        let g = parse_polynomial("-(x - 1/2*y)^2", &xy()).unwrap();
        assert_eq!(g.render(), "-x^2 + x*y - 1/4*y^2");
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_polynomial("x + ", &xy()),
            Err(Error::Parse { position: 4, message: "expected a number, variable or '('".into() })
        );
        match parse_polynomial("2x", &xy()) {
            Err(Error::Parse { position: 1, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert_eq!(
            parse_polynomial("x + w", &xy()),
            Err(Error::UnknownVariable("w".into()))
        );
        assert!(parse_polynomial("x^y", &xy()).is_err());
        assert!(parse_polynomial("(x + y", &xy()).is_err());
        assert!(parse_polynomial("x $ y", &xy()).is_err());
        assert!(parse_polynomial("x / y", &xy()).is_err());
    }
}
