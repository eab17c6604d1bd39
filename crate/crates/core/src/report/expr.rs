//! A small expression language for naming classes.
//!
//! Atoms are `1`, rational constants, `u1 .. ud` (the generators of
//! `H^2(BT)`) and `x` (the class restricting to `<Phi(p), x>`; the
//! hyperplane class on the built-in projective spaces). Operators, loosest
//! first: `+ -`, product (`*` or juxtaposition), tensor `⊗` (ASCII `@`)
//! whose operands are read on the two factors of a product space, and
//! powers `^n`. Unicode subscripts, superscripts and the minus sign are
//! accepted, so `u₁² − 1⊗x²` parses.

use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::cohomology::{kunneth, CohomologyError, EquivariantClass};
use crate::space::{GkmSpace, Provenance};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("parse error at {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("⊗ needs a product space")]
    NotAProduct,
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

#[derive(Clone, PartialEq, Debug)]
pub enum Expr {
    Number(Rational),
    Name(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

fn normalize(src: &str) -> String {
    let mut out = String::with_capacity(src.len());
    for c in src.chars() {
        match c {
            '₀'..='₉' => out.push(char::from(b'0' + (c as u32 - '₀' as u32) as u8)),
            '²' => out.push_str("^2"),
            '³' => out.push_str("^3"),
            '⁴' => out.push_str("^4"),
            '−' | '–' => out.push('-'),
            '·' | '×' => out.push('*'),
            '⊗' => out.push('@'),
            c => out.push(c),
        }
    }
    out
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Parse {
            pos: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = if self.eat('-') {
            Expr::Neg(Box::new(self.product()?))
        } else {
            self.product()?
        };
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn starts_atom(c: Option<char>) -> bool {
        c.is_some_and(|c| c.is_ascii_alphanumeric() || c == '(')
    }

    fn product(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.tensor()?;
        loop {
            if self.eat('*') || Self::starts_atom(self.peek()) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.tensor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn tensor(&mut self) -> Result<Expr, ExprError> {
        let lhs = self.power()?;
        if self.eat('@') {
            Ok(Expr::Tensor(Box::new(lhs), Box::new(self.power()?)))
        } else {
            Ok(lhs)
        }
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let start = self.pos;
            while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let digits: String = self.chars[start..self.pos].iter().collect();
            match digits.parse() {
                Ok(e) => Ok(Expr::Pow(Box::new(base), e)),
                Err(_) => self.error("expected an exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return self.error("expected ')'");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self
                    .chars
                    .get(self.pos)
                    .is_some_and(|c| c.is_ascii_digit() || *c == '/')
                {
                    self.pos += 1;
                }
                let text: String = self.chars[start..self.pos].iter().collect();
                match Rational::from_str(&text) {
                    Ok(r) => Ok(Expr::Number(r)),
                    Err(_) => self.error(format!("bad number {text:?}")),
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                // names are a letter followed by digits: u1, x
                while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                Ok(Expr::Name(self.chars[start..self.pos].iter().collect()))
            }
            _ => self.error("expected a term"),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ExprError> {
    let mut p = Parser {
        chars: normalize(src).chars().collect(),
        pos: 0,
    };
    let e = p.sum()?;
    if p.peek().is_some() {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

pub fn eval(expr: &Expr, space: &Arc<GkmSpace>) -> Result<EquivariantClass, ExprError> {
    let unit = || EquivariantClass::unit(space.clone());
    Ok(match expr {
        Expr::Number(r) => unit().scale(r),
        Expr::Name(n) if n == "x" => EquivariantClass::moment_class(space.clone()),
        Expr::Name(n) => {
            let i: usize = n
                .strip_prefix('u')
                .and_then(|i| i.parse().ok())
                .filter(|&i| i >= 1 && i <= space.rank())
                .ok_or_else(|| ExprError::UnknownName(n.clone()))?;
            EquivariantClass::generator(space.clone(), i - 1)
        }
        Expr::Add(a, b) => eval(a, space)?.add(&eval(b, space)?)?,
        Expr::Sub(a, b) => eval(a, space)?.sub(&eval(b, space)?)?,
        Expr::Neg(a) => eval(a, space)?.scale(&-Rational::from_integer(1.into())),
        Expr::Mul(a, b) => eval(a, space)?.mul(&eval(b, space)?)?,
        Expr::Pow(a, e) => {
            let base = eval(a, space)?;
            let mut acc = unit();
            for _ in 0..*e {
                acc = acc.mul(&base)?;
            }
            acc
        }
        Expr::Tensor(a, b) => {
            let Provenance::Product { left, right, .. } = &space.provenance else {
                return Err(ExprError::NotAProduct);
            };
            kunneth(&eval(a, left)?, &eval(b, right)?, space)?
        }
    })
}

/// Parse and evaluate in one step.
pub fn class(src: &str, space: &Arc<GkmSpace>) -> Result<EquivariantClass, ExprError> {
    eval(&parse(src)?, space)
}
