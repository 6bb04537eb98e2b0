//! Text grammar for polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | variable | '(' expr ')'
//! ```
//!
//! Variables are `x1 .. xN`, plus `t` in rings that carry an auxiliary slot.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use super::monomial::write_monomial;
use super::{Polynomial, Ring, TermOrder};
use crate::field::{FieldError, Rational};

/// Offsets are 1-based byte positions into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{name}` at offset {offset}")]
    UnknownVariable { name: String, offset: usize },
    #[error("bad coefficient at offset {offset}: {source}")]
    Coefficient { offset: usize, source: FieldError },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn next(&mut self) -> Result<(Tok, usize), ParseError> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&c) = self.src.get(self.pos) else {
            return Ok((Tok::End, start));
        };
        self.pos += 1;
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
                Tok::Num(digits.parse().expect("digit run"))
            }
            c if c.is_ascii_alphabetic() => {
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                Tok::Ident(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
            }
            _ => {
                return Err(ParseError::Syntax { offset: start + 1, message: format!("unexpected character `{}`", c as char) })
            }
        };
        Ok((tok, start))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    at: usize,
    ring: Ring,
    order: &'a TermOrder,
}

impl<'a> Parser<'a> {
    fn bump(&mut self) -> Result<(), ParseError> {
        let (tok, at) = self.lexer.next()?;
        self.tok = tok;
        self.at = at;
        Ok(())
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { offset: self.at + 1, message: message.into() })
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.tok {
                Tok::Plus => {
                    self.bump()?;
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump()?;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while self.tok == Tok::Star {
            self.bump()?;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if self.tok == Tok::Minus {
            self.bump()?;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.tok != Tok::Caret {
            return Ok(base);
        }
        self.bump()?;
        let Tok::Num(n) = &self.tok else {
            return self.error("expected an integer exponent");
        };
        let Ok(e) = u32::try_from(n.clone()) else {
            return self.error("exponent too large");
        };
        self.bump()?;
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let at = self.at;
        match std::mem::replace(&mut self.tok, Tok::End) {
            Tok::Num(num) => {
                self.bump()?;
                let mut den = BigInt::from(1);
                if self.tok == Tok::Slash {
                    self.bump()?;
                    let Tok::Num(d) = &self.tok else {
                        return self.error("expected an integer denominator");
                    };
                    den = d.clone();
                    self.bump()?;
                }
                let q = Rational::new(num, den).map_err(|source| ParseError::Coefficient { offset: at + 1, source })?;
                let c = self
                    .ring
                    .field()
                    .from_rational(&q)
                    .map_err(|source| ParseError::Coefficient { offset: at + 1, source })?;
                Ok(Polynomial::constant(self.ring, self.order.clone(), c))
            }
            Tok::Ident(name) => {
                let index = self.variable_index(&name).ok_or(ParseError::UnknownVariable { name, offset: at + 1 })?;
                self.bump()?;
                Ok(Polynomial::variable(self.ring, self.order.clone(), index).expect("index checked"))
            }
            Tok::LParen => {
                self.bump()?;
                let inner = self.expr()?;
                if self.tok != Tok::RParen {
                    return self.error("expected `)`");
                }
                self.bump()?;
                Ok(inner)
            }
            other => {
                self.tok = other;
                self.error("expected a number, variable or `(`")
            }
        }
    }

    fn variable_index(&self, name: &str) -> Option<usize> {
        let t_slot = self.ring.t_slot();
        if name == "t" {
            return t_slot;
        }
        let k: usize = name.strip_prefix('x')?.parse().ok()?;
        let xs = self.ring.nvars() - usize::from(t_slot.is_some());
        if k == 0 || k > xs || name[1..].starts_with('0') {
            return None;
        }
        match t_slot {
            Some(t) if k > t => Some(k),
            _ => Some(k - 1),
        }
    }
}

/// Parses `text` into the given ring, sorting terms under `order`.
pub fn parse_polynomial(text: &str, ring: Ring, order: &TermOrder) -> Result<Polynomial, ParseError> {
    let mut parser = Parser { lexer: Lexer { src: text.as_bytes(), pos: 0 }, tok: Tok::End, at: 0, ring, order };
    parser.bump()?;
    let p = parser.expr()?;
    if parser.tok != Tok::End {
        return parser.error("unexpected trailing input");
    }
    Ok(p)
}

pub(super) fn write_polynomial(f: &mut fmt::Formatter<'_>, p: &Polynomial) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let t_slot = p.ring().t_slot();
    for (i, t) in p.terms().iter().enumerate() {
        let neg = t.coeff.is_negative();
        let abs = if neg { t.coeff.neg() } else { t.coeff.clone() };
        match (i, neg) {
            (0, true) => write!(f, "-")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        if t.mono.is_one() {
            write!(f, "{abs}")?;
        } else {
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write_monomial(f, &t.mono, t_slot)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;
    use crate::poly::Monomial;

    fn ring() -> Ring {
        Ring::new(FieldDescriptor::RATIONALS, 3)
    }

    #[test]
    fn hankel_determinant() {
        let f = parse_polynomial("x1*x3 - x2^2", ring(), &TermOrder::Lex).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.to_string(), "x1*x3 - x2^2");
    }

    #[test]
    fn stray_parenthesis() {
        let err = parse_polynomial("x1*x3-x2^2)", ring(), &TermOrder::Lex).unwrap_err();
        assert!(matches!(err, ParseError::Syntax { offset: 11, .. }), "{err:?}");
    }

    #[test]
    fn fraction_coefficient() {
        let f = parse_polynomial("1/2*x1", ring(), &TermOrder::Lex).unwrap();
        assert_eq!(f.lead().unwrap().coeff.to_string(), "1/2");
        assert_eq!(f.lead().unwrap().mono, Monomial::new(vec![1, 0, 0]));
        assert_eq!(f.to_string(), "1/2*x1");
    }

    #[test]
    fn unknown_variables() {
        assert!(matches!(
            parse_polynomial("x4 + 1", ring(), &TermOrder::Lex),
            Err(ParseError::UnknownVariable { offset: 1, .. })
        ));
        assert!(matches!(parse_polynomial("y", ring(), &TermOrder::Lex), Err(ParseError::UnknownVariable { .. })));
        assert!(matches!(parse_polynomial("t*x1", ring(), &TermOrder::Lex), Err(ParseError::UnknownVariable { .. })));
        assert!(matches!(parse_polynomial("x0", ring(), &TermOrder::Lex), Err(ParseError::UnknownVariable { .. })));
    }

    #[test]
    fn nested_and_prime_field() {
        let f7 = Ring::new(FieldDescriptor::prime_field(7).unwrap(), 3);
        let f = parse_polynomial("-(x1 - 2)^2 + 1/3", f7, &TermOrder::Grevlex).unwrap();
        // -(x1^2 - 4x1 + 4) + 5 = 6x1^2 + 4x1 + 1 over GF(7)
        assert_eq!(f.to_string(), "6*x1^2 + 4*x1 + 1");
        assert!(matches!(parse_polynomial("1/7", f7, &TermOrder::Lex), Err(ParseError::Coefficient { .. })));
        assert!(matches!(parse_polynomial("1/0", ring(), &TermOrder::Lex), Err(ParseError::Coefficient { .. })));
    }

    #[test]
    fn t_slot_names() {
        let r = ring().extended(0);
        let f = parse_polynomial("t*x1 - x3", r, &TermOrder::Lex).unwrap();
        assert_eq!(f.to_string(), "t*x1 - x3");
        assert_eq!(f.lead().unwrap().mono, Monomial::new(vec![1, 1, 0, 0]));
    }

    #[test]
    fn syntax_errors() {
        assert!(parse_polynomial("", ring(), &TermOrder::Lex).is_err());
        assert!(parse_polynomial("x1 +", ring(), &TermOrder::Lex).is_err());
        assert!(parse_polynomial("x1^x2", ring(), &TermOrder::Lex).is_err());
        assert!(matches!(parse_polynomial("x1 $ x2", ring(), &TermOrder::Lex), Err(ParseError::Syntax { offset: 4, .. })));
    }
}
