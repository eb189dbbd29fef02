//! A small expression language for user-supplied `f(x)`: numbers, `x`,
//! `+ - * /`, integer powers `^0..^12`, unary minus and the functions
//! `exp sin cos sqrt abs`, with symbolic differentiation.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::function::{RealFn, TestFunction};
use crate::poly::{Interval, Polynomial};

pub const MAX_EXPONENT: u32 = 12;
pub const MAX_DERIVATIVE: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Sin,
    Cos,
    Sqrt,
    Abs,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    fn lookup(name: &str) -> Option<Func> {
        Some(match name {
            "exp" => Func::Exp,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            _ => return None,
        })
    }

    fn apply(self, v: f64) -> f64 {
        match self {
            Func::Exp => v.exp(),
            Func::Sin => v.sin(),
            Func::Cos => v.cos(),
            Func::Sqrt => v.sqrt(),
            Func::Abs => v.abs(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    X,
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Call(Func, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("unknown identifier {0:?}")]
    UnknownIdentifier(String),
    #[error("exponent must be an integer literal in 0..={max}, found {found:?}", max = MAX_EXPONENT)]
    BadExponent { found: String },
    #[error("malformed number {0:?}")]
    BadNumber(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at offset {offset}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset into the source.
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("division by zero at x = {x}")]
    DivisionByZero { x: f64 },
    #[error("sqrt of negative value {value} at x = {x}")]
    NegativeSqrt { x: f64, value: f64 },
    #[error("non-finite value at x = {x}")]
    NonFinite { x: f64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeriveError {
    #[error("abs cannot be differentiated")]
    Abs,
    #[error("derivative order {0} exceeds {max}", max = MAX_DERIVATIVE)]
    OrderTooHigh(usize),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, kind: ParseErrorKind, offset: usize) -> Result<T, ParseError> {
        Err(ParseError { kind, offset })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.src[self.pos..].chars().next() {
            self.pos += c.len_utf8();
        }
    }

    fn unexpected<T>(&mut self) -> Result<T, ParseError> {
        match self.peek() {
            Some(c) => self.err(ParseErrorKind::UnexpectedChar(c), self.pos),
            None => self.err(ParseErrorKind::UnexpectedEnd, self.pos),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some('+') => BinOp::Add,
                Some('-') => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some('*') => BinOp::Mul,
                Some('/') => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some('-') {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.bump();
        let exponent = self.exponent()?;
        Ok(Expr::Pow(Box::new(base), exponent))
    }

    /// An integer literal, itself possibly raised (right-associatively) to a literal.
    fn exponent(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let (text, _) = self.number_text();
        let valid = !text.is_empty() && text.bytes().all(|b| b.is_ascii_digit());
        let mut value: Option<u32> = if valid { text.parse().ok() } else { None };
        if self.peek() == Some('^') {
            self.bump();
            let inner = self.exponent()?;
            value = value.and_then(|v| v.checked_pow(inner));
        }
        match value {
            Some(v) if v <= MAX_EXPONENT => Ok(v),
            _ => {
                let found = if text.is_empty() {
                    self.src[start..].chars().next().map(String::from).unwrap_or_default()
                } else {
                    self.src[start..self.pos].trim().to_string()
                };
                self.err(ParseErrorKind::BadExponent { found }, start)
            }
        }
    }

    /// Consume `digits[.digits][e[+-]digits]`, returning the text and whether it is one.
    fn number_text(&mut self) -> (&'a str, bool) {
        let bytes = self.src.as_bytes();
        let start = self.pos;
        let mut i = start;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if i < bytes.len() && bytes[i] == b'.' {
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
        }
        if i > start && i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
            let mut j = i + 1;
            if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                j += 1;
            }
            if j < bytes.len() && bytes[j].is_ascii_digit() {
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                i = j;
            }
        }
        self.pos = i;
        (&self.src[start..i], i > start)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '.' => {
                let start = self.pos;
                let (text, _) = self.number_text();
                match text.parse::<f64>() {
                    Ok(v) => Ok(Expr::Const(v)),
                    Err(_) => self.err(ParseErrorKind::BadNumber(text.to_string()), start),
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                let bytes = self.src.as_bytes();
                let mut i = start;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let name = &self.src[start..i];
                self.pos = i;
                if name == "x" {
                    return Ok(Expr::X);
                }
                let Some(func) = Func::lookup(name) else {
                    return self.err(ParseErrorKind::UnknownIdentifier(name.to_string()), start);
                };
                if self.peek() != Some('(') {
                    return self.err(ParseErrorKind::Expected("'(' after function name"), self.pos);
                }
                self.bump();
                let arg = self.expr()?;
                self.close()?;
                Ok(Expr::Call(func, Box::new(arg)))
            }
            Some('(') => {
                self.bump();
                let inner = self.expr()?;
                self.close()?;
                Ok(inner)
            }
            _ => self.unexpected(),
        }
    }

    fn close(&mut self) -> Result<(), ParseError> {
        if self.peek() == Some(')') {
            self.bump();
            Ok(())
        } else if self.peek().is_none() {
            self.err(ParseErrorKind::Expected("')'"), self.pos)
        } else {
            self.unexpected()
        }
    }
}

/// Parse an expression in `x`.
pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.unexpected();
    }
    Ok(e)
}

fn constant(v: f64) -> Expr {
    Expr::Const(v)
}

fn neg(a: Expr) -> Expr {
    match a {
        Expr::Const(c) => constant(-c),
        Expr::Neg(inner) => *inner,
        other => Expr::Neg(Box::new(other)),
    }
}

fn add(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) => constant(x + y),
        (Expr::Const(z), e) | (e, Expr::Const(z)) if z == 0.0 => e,
        (a, Expr::Neg(b)) => Expr::Binary(BinOp::Sub, Box::new(a), b),
        (a, b) => Expr::Binary(BinOp::Add, Box::new(a), Box::new(b)),
    }
}

fn sub(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) => constant(x - y),
        (e, Expr::Const(0.0)) => e,
        (Expr::Const(0.0), e) => neg(e),
        (a, Expr::Neg(b)) => add(a, *b),
        (a, b) => Expr::Binary(BinOp::Sub, Box::new(a), Box::new(b)),
    }
}

fn mul(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(x), Expr::Const(y)) => constant(x * y),
        (Expr::Const(z), _) | (_, Expr::Const(z)) if z == 0.0 => constant(0.0),
        (Expr::Const(o), e) | (e, Expr::Const(o)) if o == 1.0 => e,
        (Expr::Const(m), e) | (e, Expr::Const(m)) if m == -1.0 => neg(e),
        (Expr::Const(x), Expr::Binary(BinOp::Mul, l, r)) if matches!(*l, Expr::Const(_)) => {
            let Expr::Const(y) = *l else { unreachable!() };
            mul(constant(x * y), *r)
        }
        (e, Expr::Const(c)) => mul(constant(c), e),
        (Expr::Neg(a), b) => neg(mul(*a, b)),
        (a, Expr::Neg(b)) => neg(mul(a, *b)),
        (a, b) => Expr::Binary(BinOp::Mul, Box::new(a), Box::new(b)),
    }
}

fn div(a: Expr, b: Expr) -> Expr {
    match (a, b) {
        (Expr::Const(0.0), _) => constant(0.0),
        (e, Expr::Const(1.0)) => e,
        (a, b) => Expr::Binary(BinOp::Div, Box::new(a), Box::new(b)),
    }
}

fn pow(a: Expr, n: u32) -> Expr {
    match (a, n) {
        (_, 0) => constant(1.0),
        (e, 1) => e,
        (Expr::Const(c), n) => constant(c.powi(n as i32)),
        (e, n) => Expr::Pow(Box::new(e), n),
    }
}

fn call(f: Func, a: Expr) -> Expr {
    Expr::Call(f, Box::new(a))
}

impl Expr {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Expr::Const(c) => *c,
            Expr::X => x,
            Expr::Neg(a) => -a.eval(x),
            Expr::Binary(op, a, b) => {
                let (a, b) = (a.eval(x), b.eval(x));
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => a / b,
                }
            }
            Expr::Pow(a, n) => a.eval(x).powi(*n as i32),
            Expr::Call(f, a) => f.apply(a.eval(x)),
        }
    }

    /// Evaluation that rejects division by zero, `sqrt` of negatives and
    /// non-finite results.
    pub fn try_eval(&self, x: f64) -> Result<f64, EvalError> {
        let v = match self {
            Expr::Const(c) => *c,
            Expr::X => x,
            Expr::Neg(a) => -a.try_eval(x)?,
            Expr::Binary(op, a, b) => {
                let (a, b) = (a.try_eval(x)?, b.try_eval(x)?);
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div if b == 0.0 => return Err(EvalError::DivisionByZero { x }),
                    BinOp::Div => a / b,
                }
            }
            Expr::Pow(a, n) => a.try_eval(x)?.powi(*n as i32),
            Expr::Call(f, a) => {
                let v = a.try_eval(x)?;
                if *f == Func::Sqrt && v < 0.0 {
                    return Err(EvalError::NegativeSqrt { x, value: v });
                }
                f.apply(v)
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError::NonFinite { x })
        }
    }

    pub fn contains_abs(&self) -> bool {
        match self {
            Expr::Const(_) | Expr::X => false,
            Expr::Neg(a) | Expr::Pow(a, _) => a.contains_abs(),
            Expr::Binary(_, a, b) => a.contains_abs() || b.contains_abs(),
            Expr::Call(f, a) => *f == Func::Abs || a.contains_abs(),
        }
    }

    /// First derivative with light simplification.
    pub fn derivative(&self) -> Result<Expr, DeriveError> {
        Ok(match self {
            Expr::Const(_) => constant(0.0),
            Expr::X => constant(1.0),
            Expr::Neg(a) => neg(a.derivative()?),
            Expr::Binary(op, a, b) => {
                let (da, db) = (a.derivative()?, b.derivative()?);
                let (a, b) = ((**a).clone(), (**b).clone());
                match op {
                    BinOp::Add => add(da, db),
                    BinOp::Sub => sub(da, db),
                    BinOp::Mul => add(mul(da, b), mul(a, db)),
                    BinOp::Div => div(sub(mul(da, b.clone()), mul(a, db)), pow(b, 2)),
                }
            }
            Expr::Pow(a, n) => {
                let da = a.derivative()?;
                if *n == 0 {
                    constant(0.0)
                } else {
                    mul(mul(constant(*n as f64), pow((**a).clone(), n - 1)), da)
                }
            }
            Expr::Call(f, a) => {
                let da = a.derivative()?;
                let inner = (**a).clone();
                match f {
                    Func::Exp => mul(call(Func::Exp, inner), da),
                    Func::Sin => mul(call(Func::Cos, inner), da),
                    Func::Cos => neg(mul(call(Func::Sin, inner), da)),
                    Func::Sqrt => div(da, mul(constant(2.0), call(Func::Sqrt, inner))),
                    Func::Abs => return Err(DeriveError::Abs),
                }
            }
        })
    }

    /// Closed form as a polynomial when the expression is one.
    pub fn to_polynomial(&self) -> Option<Polynomial> {
        Some(match self {
            Expr::Const(c) => Polynomial::constant(*c),
            Expr::X => Polynomial::monomial(1, 1.0),
            Expr::Neg(a) => -&a.to_polynomial()?,
            Expr::Binary(op, a, b) => {
                let pa = a.to_polynomial()?;
                match op {
                    BinOp::Add => &pa + &b.to_polynomial()?,
                    BinOp::Sub => &pa - &b.to_polynomial()?,
                    BinOp::Mul => &pa * &b.to_polynomial()?,
                    BinOp::Div => match **b {
                        Expr::Const(c) if c != 0.0 => pa.scale(1.0 / c),
                        _ => return None,
                    },
                }
            }
            Expr::Pow(a, n) => {
                let base = a.to_polynomial()?;
                (0..*n).fold(Polynomial::constant(1.0), |acc, _| &acc * &base)
            }
            Expr::Call(..) => return None,
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Binary(BinOp::Add | BinOp::Sub, ..) => 1,
            Expr::Binary(BinOp::Mul | BinOp::Div, ..) => 2,
            Expr::Neg(_) => 3,
            Expr::Const(c) if c.is_sign_negative() => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }
}

/// d^order/dx^order of `e`; order at most [`MAX_DERIVATIVE`].
pub fn derive_expr(e: &Expr, order: usize) -> Result<Expr, DeriveError> {
    if order > MAX_DERIVATIVE {
        return Err(DeriveError::OrderTooHigh(order));
    }
    let mut d = e.clone();
    for _ in 0..order {
        d = d.derivative()?;
    }
    Ok(d)
}

fn write_child(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if e.precedence() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::X => f.write_str("x"),
            Expr::Neg(a) => {
                f.write_str("-")?;
                write_child(f, a, 3)
            }
            Expr::Binary(op, a, b) => {
                let (sym, prec) = match op {
                    BinOp::Add => ("+", 1),
                    BinOp::Sub => ("-", 1),
                    BinOp::Mul => ("*", 2),
                    BinOp::Div => ("/", 2),
                };
                write_child(f, a, prec)?;
                f.write_str(if prec == 1 { " " } else { "" })?;
                f.write_str(sym)?;
                f.write_str(if prec == 1 { " " } else { "" })?;
                write_child(f, b, prec + 1)
            }
            Expr::Pow(a, n) => {
                write_child(f, a, 5)?;
                write!(f, "^{n}")
            }
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

/// A [`TestFunction`] for the expression on `iv`: symbolic derivatives up to
/// [`MAX_DERIVATIVE`] (none when `abs` appears) and a polynomial closed form
/// when available.
pub fn test_function(expr: &Expr, name: impl Into<String>, iv: Interval) -> TestFunction {
    let e = expr.clone();
    let base = TestFunction::new(name, iv, move |x| e.eval(x));
    if let Some(p) = expr.to_polynomial() {
        return base.with_polynomial(p);
    }
    if expr.contains_abs() {
        return base;
    }
    let mut derivatives: Vec<RealFn> = Vec::with_capacity(MAX_DERIVATIVE);
    let mut d = expr.clone();
    for _ in 0..MAX_DERIVATIVE {
        d = d.derivative().expect("abs excluded above");
        let de = d.clone();
        derivatives.push(Arc::new(move |x| de.eval(x)));
    }
    base.with_derivatives(derivatives)
}
