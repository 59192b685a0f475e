// SPDX-License-Identifier: Apache-2.0

//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! sum     := signed (('+' | '-') signed)*
//! signed  := '-' signed | product
//! product := postfix ('*' postfix)*
//! postfix := atom ('^-1')*
//! atom    := rational | 'x'digits | '(' sum ')' | '(' '-' rational ')' | 'inv' '(' sum ')'
//! ```
//!
//! `(-p/q)` with nothing else inside the parentheses is a negative constant;
//! every other minus is a `Neg` node.

use super::ast::Expr;
use crate::linalg::Rat;
use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("parse error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("variable x{index} out of range (g = {g})")]
    VariableOutOfRange { index: usize, g: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(Rat),
    Var(usize),
    Inv,
    Plus,
    Minus,
    Star,
    InvPow,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn err(&self, pos: usize, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            pos,
            message: message.into(),
        }
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn tokenize(mut self) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut out = Vec::new();
        loop {
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            let start = self.pos;
            let Some(&c) = self.src.get(self.pos) else {
                out.push((start, Tok::End));
                return Ok(out);
            };
            let tok = match c {
                b'0'..=b'9' => {
                    let num: BigInt = self.digits().parse().expect("digits");
                    let mut den = BigInt::from(1);
                    if self.src.get(self.pos) == Some(&b'/') {
                        self.pos += 1;
                        let d = self.digits();
                        if d.is_empty() {
                            return Err(self.err(self.pos, "expected denominator after '/'"));
                        }
                        den = d.parse().expect("digits");
                        if den.is_zero() {
                            return Err(self.err(start, "zero denominator"));
                        }
                    }
                    Tok::Num(Rat::new(num, den))
                }
                b'x' => {
                    self.pos += 1;
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(self.err(start, "expected variable index after 'x'"));
                    }
                    let idx: usize = d
                        .parse()
                        .map_err(|_| self.err(start, "variable index too large"))?;
                    if idx == 0 {
                        return Err(self.err(start, "variables are numbered from x1"));
                    }
                    Tok::Var(idx - 1)
                }
                b'i' if self.src[self.pos..].starts_with(b"inv") => {
                    self.pos += 3;
                    Tok::Inv
                }
                b'^' => {
                    if self.src[self.pos..].starts_with(b"^-1") {
                        self.pos += 3;
                        Tok::InvPow
                    } else {
                        return Err(self.err(start, "only the power ^-1 is supported"));
                    }
                }
                b'+' => {
                    self.pos += 1;
                    Tok::Plus
                }
                b'-' => {
                    self.pos += 1;
                    Tok::Minus
                }
                b'*' => {
                    self.pos += 1;
                    Tok::Star
                }
                b'(' => {
                    self.pos += 1;
                    Tok::LParen
                }
                b')' => {
                    self.pos += 1;
                    Tok::RParen
                }
                _ => {
                    return Err(self.err(start, format!("unexpected character {:?}", c as char)));
                }
            };
            out.push((start, tok));
        }
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    g: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.at + k).min(self.toks.len() - 1);
        &self.toks[i].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(ParseError::Syntax {
                pos: self.pos(),
                message: format!("expected {what}"),
            })
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.signed()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = Expr::add(acc, self.signed()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = Expr::sub(acc, self.signed()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn signed(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::neg(self.signed()?));
        }
        self.product()
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.postfix()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = Expr::mul(acc, self.postfix()?);
        }
        Ok(acc)
    }

    fn postfix(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.atom()?;
        while *self.peek() == Tok::InvPow {
            self.bump();
            acc = Expr::inv(acc);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(q) => Ok(Expr::constant(q)),
            Tok::Var(j) => {
                if j >= self.g {
                    return Err(ParseError::VariableOutOfRange {
                        index: j + 1,
                        g: self.g,
                    });
                }
                Ok(Expr::var(j))
            }
            Tok::LParen => {
                if let (Tok::Minus, Tok::Num(q), Tok::RParen) =
                    (self.peek(), self.peek_at(1), self.peek_at(2))
                {
                    let q = -q.clone();
                    self.bump();
                    self.bump();
                    self.bump();
                    return Ok(Expr::constant(q));
                }
                let e = self.sum()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Inv => {
                self.expect(Tok::LParen, "'(' after inv")?;
                let e = self.sum()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(Expr::inv(e))
            }
            Tok::End => Err(ParseError::Syntax {
                pos,
                message: "unexpected end of input".into(),
            }),
            t => Err(ParseError::Syntax {
                pos,
                message: format!("unexpected token {t:?}"),
            }),
        }
    }
}

/// Parses an expression in `g` variables.
pub fn parse(text: &str, g: usize) -> Result<Expr, ParseError> {
    let toks = Lexer {
        src: text.as_bytes(),
        pos: 0,
    }
    .tokenize()?;
    let mut p = Parser { toks, at: 0, g };
    let e = p.sum()?;
    if *p.peek() != Tok::End {
        return Err(ParseError::Syntax {
            pos: p.pos(),
            message: "trailing input".into(),
        });
    }
    Ok(e)
}

/// Parses without a variable bound; the caller reads `g` off [`Expr::min_vars`].
pub fn parse_any(text: &str) -> Result<Expr, ParseError> {
    parse(text, usize::MAX)
}
