//! Parser for the human-readable scalar syntax, e.g. `(2*m1 - 3*m2)/(a - 1)`.
//!
//! Identifiers: `m<i>` / `mu<i>` for μ_i, `a` / `alpha`, `b` / `beta`.
//! Operators `+ - * / ^` with the usual precedence; `^` takes a
//! non-negative integer exponent.

use std::str::FromStr;

use num_bigint::BigInt;

use super::{Scalar, Var};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Token::Int(text.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {src:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            if self.eat_op('+') {
                acc = acc + self.term()?;
            } else if self.eat_op('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_op('*') {
                acc = acc * self.unary()?;
            } else if self.eat_op('/') {
                let rhs = self.unary()?;
                acc = acc.try_div(&rhs)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        if self.eat_op('-') {
            return Ok(-self.unary()?);
        }
        if self.eat_op('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if self.eat_op('^') {
            match self.tokens.get(self.pos).cloned() {
                Some(Token::Int(e)) => {
                    self.pos += 1;
                    let e: u32 = e
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    return Ok(base.pow(e));
                }
                other => return Err(Error::Parse(format!("expected exponent, found {other:?}"))),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar> {
        let tok = self
            .tokens
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Token::Int(n) => Ok(Scalar::from_rational(n.into())),
            Token::Ident(name) => parse_ident(&name).map(Scalar::var),
            Token::Op('(') => {
                let inner = self.expr()?;
                if !self.eat_op(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(inner)
            }
            Token::Op(c) => Err(Error::Parse(format!("unexpected operator {c:?}"))),
        }
    }
}

fn parse_ident(name: &str) -> Result<Var> {
    match name {
        "a" | "alpha" => return Ok(Var::Alpha),
        "b" | "beta" => return Ok(Var::Beta),
        _ => {}
    }
    let digits = name
        .strip_prefix("mu")
        .or_else(|| name.strip_prefix('m'))
        .ok_or_else(|| Error::Parse(format!("unknown indeterminate {name:?}")))?;
    match digits.parse::<usize>() {
        Ok(i) if i >= 1 => Ok(Var::Mu(i)),
        _ => Err(Error::Parse(format!("unknown indeterminate {name:?}"))),
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens = tokenize(s)?;
        if tokens.is_empty() {
            return Err(Error::Parse("empty expression".into()));
        }
        let mut p = Parser { tokens, pos: 0 };
        let value = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Parse(format!("trailing input in {s:?}")));
        }
        Ok(value)
    }
}
