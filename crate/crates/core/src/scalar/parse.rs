//! Pratt parser for the scalar expression grammar.

use alloc::string::{String, ToString};

use num_bigint::BigInt;

use super::poly::{Poly, Rational};
use super::{Chart, Scalar, ScalarError};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
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
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn syntax(&self, position: usize, message: &str) -> ScalarError {
        ScalarError::Syntax { position, message: message.to_string() }
    }

    fn next(&mut self) -> Result<(usize, Tok), ScalarError> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&b) = bytes.get(start) else {
            return Ok((start, Tok::End));
        };
        self.pos += 1;
        let tok = match b {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' | b'.' => {
                while self.pos < bytes.len() && (bytes[self.pos].is_ascii_digit() || bytes[self.pos] == b'.') {
                    self.pos += 1;
                }
                Tok::Num(self.decimal(start)?)
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while self.pos < bytes.len() && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_') {
                    self.pos += 1;
                }
                Tok::Ident(self.src[start..self.pos].to_string())
            }
            _ => {
                let ch = self.src[start..].chars().next().unwrap_or('?');
                return Err(self.syntax(start, &alloc::format!("unexpected character `{ch}`")));
            }
        };
        Ok((start, tok))
    }

    fn decimal(&self, start: usize) -> Result<Rational, ScalarError> {
        let text = &self.src[start..self.pos];
        let (int, frac) = match text.split_once('.') {
            Some((i, f)) => (i, f),
            None => (text, ""),
        };
        if frac.contains('.') || (int.is_empty() && frac.is_empty()) {
            return Err(self.syntax(start, "malformed number"));
        }
        let digits = alloc::format!("{int}{frac}");
        let n: BigInt = digits.parse().map_err(|_| self.syntax(start, "malformed number"))?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        Ok(Rational::new(n, d))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    chart: &'a Chart,
    peeked: (usize, Tok),
}

const SUM_BP: u8 = 1;
const PRODUCT_BP: u8 = 3;

impl<'a> Parser<'a> {
    fn bump(&mut self) -> Result<(usize, Tok), ScalarError> {
        let next = self.lexer.next()?;
        Ok(core::mem::replace(&mut self.peeked, next))
    }

    fn expr(&mut self, min_bp: u8) -> Result<Scalar, ScalarError> {
        let mut lhs = self.prefix()?;
        loop {
            let (pos, op) = self.peeked.clone();
            let bp = match op {
                Tok::Plus | Tok::Minus => SUM_BP,
                Tok::Star | Tok::Slash => PRODUCT_BP,
                Tok::End | Tok::RParen => break,
                _ => return Err(self.lexer.syntax(pos, "expected an operator")),
            };
            if bp < min_bp {
                break;
            }
            self.bump()?;
            let rhs_pos = self.peeked.0;
            let rhs = self.expr(bp + 1)?;
            lhs = match op {
                Tok::Plus => &lhs + &rhs,
                Tok::Minus => &lhs - &rhs,
                Tok::Star => &lhs * &rhs,
                _ => {
                    if rhs.is_zero() {
                        return Err(ScalarError::ZeroDenominator { position: rhs_pos });
                    }
                    &lhs / &rhs
                }
            };
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<Scalar, ScalarError> {
        if self.peeked.1 == Tok::Minus {
            self.bump()?;
            // Unary minus binds looser than `^`, so `-x^2` is `-(x^2)`.
            let operand = self.prefix()?;
            return Ok(-operand);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar, ScalarError> {
        let base = self.atom()?;
        if self.peeked.1 != Tok::Caret {
            return Ok(base);
        }
        self.bump()?;
        let (pos, tok) = self.bump()?;
        let exp = match tok {
            Tok::Num(q) if q.is_integer() => q.to_integer(),
            _ => return Err(self.lexer.syntax(pos, "exponent must be a nonnegative integer literal")),
        };
        let e: u32 = u32::try_from(exp).map_err(|_| self.lexer.syntax(pos, "exponent too large"))?;
        if self.peeked.1 == Tok::Caret {
            return Err(self.lexer.syntax(self.peeked.0, "chained exponents need parentheses"));
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<Scalar, ScalarError> {
        let (pos, tok) = self.bump()?;
        match tok {
            Tok::Num(q) => Ok(Scalar::constant(self.chart, q)),
            Tok::Ident(name) => match self.chart.coord_index(&name) {
                Some(v) => Ok(Scalar::from_poly(self.chart, Poly::var(self.chart.nvars(), v))),
                None => Err(ScalarError::UnknownIdentifier { name, position: pos }),
            },
            Tok::LParen => {
                let inner = self.expr(0)?;
                let (cpos, close) = self.bump()?;
                if close != Tok::RParen {
                    return Err(self.lexer.syntax(cpos, "expected `)`"));
                }
                Ok(inner)
            }
            Tok::End => Err(self.lexer.syntax(pos, "unexpected end of input")),
            _ => Err(self.lexer.syntax(pos, "expected a number, coordinate or `(`")),
        }
    }
}

pub(super) fn parse(text: &str, chart: &Chart) -> Result<Scalar, ScalarError> {
    let mut lexer = Lexer { src: text, pos: 0 };
    let first = lexer.next()?;
    let mut p = Parser { lexer, chart, peeked: first };
    let value = p.expr(0)?;
    match &p.peeked {
        (_, Tok::End) => Ok(value),
        (pos, _) => Err(p.lexer.syntax(*pos, "unexpected token")),
    }
}
