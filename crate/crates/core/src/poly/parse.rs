//! Parser for the polynomial input grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | INT '/' INT | 'y1' | 'y2' | '(' expr ')'
//! ```
//!
//! The float grammar used for advisory classification also accepts decimal
//! literals and `sqrt(expr)` of a constant expression.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::bivariate::{BivariatePoly, Exp, FloatPoly};
use super::rat::Rat;
use crate::error::Error;

#[derive(Clone, Debug, PartialEq)]
enum Expr {
    Int(BigInt),
    Frac(BigInt, BigInt),
    Decimal(f64, usize),
    Var(u8),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Sqrt(Box<Expr>, usize),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        pos,
        msg: msg.into(),
    }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            Some((
                start,
                std::str::from_utf8(&self.src[start..self.pos]).unwrap(),
            ))
        }
    }

    fn expr(&mut self) -> Result<Expr, Error> {
        let mut e = self.term()?;
        loop {
            if self.eat(b'+') {
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat(b'-') {
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, Error> {
        let mut e = self.unary()?;
        while self.eat(b'*') {
            e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
        }
        Ok(e)
    }

    fn unary(&mut self) -> Result<Expr, Error> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, Error> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(b'-') => return Err(err(at, "negative exponent")),
            Some(c) if c.is_ascii_digit() => {}
            _ => return Err(err(at, "exponent must be a nonnegative integer literal")),
        }
        let (_, d) = self.digits().unwrap();
        let e: u32 = d.parse().map_err(|_| err(at, "exponent too large"))?;
        let save = self.pos;
        if let Some(c) = self.src.get(self.pos) {
            if *c == b'.' || *c == b'/' {
                return Err(err(save, "non-integer exponent"));
            }
        }
        if self.peek() == Some(b'^') {
            return Err(err(self.pos, "chained exponent; use parentheses"));
        }
        Ok(Expr::Pow(Box::new(base), e))
    }

    fn atom(&mut self) -> Result<Expr, Error> {
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            None => Err(err(at, "unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(err(self.pos, "expected ')'"));
                }
                Ok(e)
            }
            Some(b'y') => {
                let rest = &self.src[self.pos..];
                let var = match rest.get(1) {
                    Some(b'1') => 1,
                    Some(b'2') => 2,
                    _ => return Err(err(at, "unknown variable; expected y1 or y2")),
                };
                if rest.get(2).is_some_and(|c| c.is_ascii_alphanumeric()) {
                    return Err(err(at, "unknown variable; expected y1 or y2"));
                }
                self.pos += 2;
                Ok(Expr::Var(var))
            }
            Some(b's') if self.src[self.pos..].starts_with(b"sqrt") => {
                self.pos += 4;
                if !self.eat(b'(') {
                    return Err(err(self.pos, "expected '(' after sqrt"));
                }
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(err(self.pos, "expected ')'"));
                }
                Ok(Expr::Sqrt(Box::new(e), at))
            }
            Some(c) if c.is_ascii_digit() => {
                let (_, n) = self.digits().unwrap();
                let n: BigInt = n.parse().unwrap();
                if self.src.get(self.pos) == Some(&b'.') {
                    self.pos += 1;
                    let frac = self.digits().map(|(_, s)| s).unwrap_or("");
                    let text = format!("{n}.{frac}");
                    return Ok(Expr::Decimal(text.parse().unwrap(), at));
                }
                let save = self.pos;
                if self.eat(b'/') {
                    match self.digits() {
                        Some((dpos, d)) => {
                            let d: BigInt = d.parse().unwrap();
                            if d.is_zero() {
                                return Err(err(dpos, "zero denominator"));
                            }
                            return Ok(Expr::Frac(n, d));
                        }
                        None => {
                            self.pos = save;
                            return Err(err(save, "'/' only allowed between integer literals"));
                        }
                    }
                }
                Ok(Expr::Int(n))
            }
            Some(c) => Err(err(at, format!("unexpected character '{}'", c as char))),
        }
    }
}

fn parse_expr(text: &str) -> Result<Expr, Error> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(err(p.pos, format!("unexpected character '{}'", c as char)));
    }
    Ok(e)
}

fn to_exact(e: &Expr) -> Result<BivariatePoly, Error> {
    Ok(match e {
        Expr::Int(n) => BivariatePoly::constant(Rat::from_integer(n.clone())),
        Expr::Frac(n, d) => BivariatePoly::constant(Rat::new(n.clone(), d.clone())),
        Expr::Decimal(_, at) => {
            return Err(err(
                *at,
                "decimal literal; exact input takes integers and a/b",
            ))
        }
        Expr::Sqrt(_, at) => return Err(err(*at, "sqrt is only available in numeric mode")),
        Expr::Var(1) => BivariatePoly::y1(),
        Expr::Var(_) => BivariatePoly::y2(),
        Expr::Neg(a) => to_exact(a)?.neg(),
        Expr::Add(a, b) => to_exact(a)?.add(&to_exact(b)?),
        Expr::Sub(a, b) => to_exact(a)?.sub(&to_exact(b)?),
        Expr::Mul(a, b) => to_exact(a)?.mul(&to_exact(b)?),
        Expr::Pow(a, k) => to_exact(a)?.pow(*k),
    })
}

type FMap = BTreeMap<Exp, f64>;

fn fmul(a: &FMap, b: &FMap) -> FMap {
    let mut out = FMap::new();
    for ((i, j), x) in a {
        for ((k, l), y) in b {
            *out.entry((i + k, j + l)).or_insert(0.0) += x * y;
        }
    }
    out
}

fn fadd(a: &FMap, b: &FMap, sign: f64) -> FMap {
    let mut out = a.clone();
    for (e, y) in b {
        *out.entry(*e).or_insert(0.0) += sign * y;
    }
    out
}

fn fconst(c: f64) -> FMap {
    FMap::from([((0, 0), c)])
}

fn to_float(e: &Expr) -> Result<FMap, Error> {
    Ok(match e {
        Expr::Int(n) => fconst(n.to_f64().unwrap_or(f64::INFINITY)),
        Expr::Frac(n, d) => {
            fconst(n.to_f64().unwrap_or(f64::INFINITY) / d.to_f64().unwrap_or(f64::INFINITY))
        }
        Expr::Decimal(x, _) => fconst(*x),
        Expr::Sqrt(a, at) => {
            let inner = to_float(a)?;
            let c = match inner.iter().find(|(e, c)| **e != (0, 0) && **c != 0.0) {
                Some(_) => return Err(err(*at, "sqrt argument must be a constant")),
                None => inner.get(&(0, 0)).copied().unwrap_or(0.0),
            };
            if c < 0.0 {
                return Err(err(*at, "sqrt of a negative constant"));
            }
            fconst(c.sqrt())
        }
        Expr::Var(1) => FMap::from([((1, 0), 1.0)]),
        Expr::Var(_) => FMap::from([((0, 1), 1.0)]),
        Expr::Neg(a) => fadd(&FMap::new(), &to_float(a)?, -1.0),
        Expr::Add(a, b) => fadd(&to_float(a)?, &to_float(b)?, 1.0),
        Expr::Sub(a, b) => fadd(&to_float(a)?, &to_float(b)?, -1.0),
        Expr::Mul(a, b) => fmul(&to_float(a)?, &to_float(b)?),
        Expr::Pow(a, k) => {
            let base = to_float(a)?;
            let mut acc = fconst(1.0);
            for _ in 0..*k {
                acc = fmul(&acc, &base);
            }
            acc
        }
    })
}

/// Parses exact input into a [`BivariatePoly`].
pub fn parse_poly(text: &str) -> Result<BivariatePoly, Error> {
    to_exact(&parse_expr(text)?)
}

/// Parses input with float coefficients; decimals and `sqrt(c)` allowed.
/// Coefficients whose magnitude is below `1e-14` times the largest are dropped.
pub fn parse_poly_float(text: &str) -> Result<FloatPoly, Error> {
    let m = to_float(&parse_expr(text)?)?;
    let big = m.values().fold(0.0f64, |a, c| a.max(c.abs()));
    Ok(FloatPoly {
        terms: m
            .into_iter()
            .filter(|(_, c)| c.abs() > 1e-14 * big)
            .collect(),
    })
}
