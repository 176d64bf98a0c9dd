//! The one-variable expression language used for `--expr` inputs.
//!
//! Precedence, tightest first: `^` (right-associative), unary `-`, `* /`,
//! `+ -`. So `-x^2` is `-(x^2)` and `2^-x` is `2^(-x)`.

use std::fmt;

use thiserror::Error;

/// Deepest tree (and deepest parser recursion) accepted. Evaluation and drop
/// recurse over the tree, so this bounds their stack use.
pub const MAX_DEPTH: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Ln,
    Sqrt,
    Abs,
    Pow,
}

impl Func {
    fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            "pow" => Func::Pow,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
            Func::Pow => "pow",
        }
    }

    fn arity(self) -> usize {
        if self == Func::Pow {
            2
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn name(self) -> &'static str {
        match self {
            BinOp::Add => "add",
            BinOp::Sub => "sub",
            BinOp::Mul => "mul",
            BinOp::Div => "div",
            BinOp::Pow => "pow",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    X,
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
}

/// Prefix form, e.g. `(add (sin x) (pow x 2))`.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v}"),
            Expr::X => write!(f, "x"),
            Expr::Neg(e) => write!(f, "(neg {e})"),
            Expr::Bin(op, l, r) => write!(f, "({} {l} {r})", op.name()),
            Expr::Call(func, args) => {
                write!(f, "({}", func.name())?;
                for a in args {
                    write!(f, " {a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: expected {expected}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("domain error in {subexpr}: {reason}")]
pub struct EvalError {
    pub subexpr: String,
    pub reason: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nesting: usize,
}

impl<'a> Parser<'a> {
    fn fail<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError {
            offset: self.pos,
            expected: expected.to_string(),
        })
    }

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

    fn enter(&mut self) -> Result<(), ParseError> {
        self.nesting += 1;
        if self.nesting > MAX_DEPTH {
            return self.fail(&format!("nesting depth at most {MAX_DEPTH}"));
        }
        Ok(())
    }

    /// Build a node, refusing trees deeper than MAX_DEPTH.
    fn node(&self, e: Expr) -> Result<Expr, ParseError> {
        if depth(&e) > MAX_DEPTH {
            return self.fail(&format!("expression depth at most {MAX_DEPTH}"));
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat(b'+') {
                BinOp::Add
            } else if self.eat(b'-') {
                BinOp::Sub
            } else {
                break;
            };
            let rhs = self.term()?;
            lhs = self.node(Expr::Bin(op, Box::new(lhs), Box::new(rhs)))?;
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat(b'*') {
                BinOp::Mul
            } else if self.eat(b'/') {
                BinOp::Div
            } else {
                break;
            };
            let rhs = self.unary()?;
            lhs = self.node(Expr::Bin(op, Box::new(lhs), Box::new(rhs)))?;
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            self.enter()?;
            let inner = self.unary()?;
            self.nesting -= 1;
            self.node(Expr::Neg(Box::new(inner)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.enter()?;
            let exp = self.unary()?;
            self.nesting -= 1;
            return self.node(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                self.enter()?;
                let e = self.expr()?;
                self.nesting -= 1;
                if !self.eat(b')') {
                    return self.fail("\")\"");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.ident(),
            _ => self.fail("a number, x, a function call or \"(\""),
        }
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        let s = self.src;
        let digits = |p: &mut usize| {
            let from = *p;
            while *p < s.len() && s[*p].is_ascii_digit() {
                *p += 1;
            }
            *p > from
        };
        let mut p = self.pos;
        let mut any = digits(&mut p);
        if p < s.len() && s[p] == b'.' {
            p += 1;
            any |= digits(&mut p);
        }
        if !any {
            return self.fail("a digit");
        }
        if p < s.len() && (s[p] == b'e' || s[p] == b'E') {
            let mut q = p + 1;
            if q < s.len() && (s[q] == b'+' || s[q] == b'-') {
                q += 1;
            }
            if digits(&mut q) {
                p = q;
            }
        }
        self.pos = p;
        // the lexeme is ASCII digits, '.', 'e' and signs only
        let text = std::str::from_utf8(&s[start..p]).expect("ascii lexeme");
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(Expr::Num(v)),
            _ => {
                self.pos = start;
                self.fail("a finite number")
            }
        }
    }

    fn ident(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
        if name == "x" {
            return Ok(Expr::X);
        }
        let Some(func) = Func::from_name(name) else {
            self.pos = start;
            return self.fail("x or one of sin, cos, exp, ln, sqrt, abs, pow");
        };
        if !self.eat(b'(') {
            return self.fail("\"(\"");
        }
        self.enter()?;
        let mut args = vec![self.expr()?];
        while args.len() < func.arity() {
            if !self.eat(b',') {
                return self.fail("\",\"");
            }
            args.push(self.expr()?);
        }
        self.nesting -= 1;
        if !self.eat(b')') {
            return self.fail("\")\"");
        }
        self.node(Expr::Call(func, args))
    }
}

fn depth(e: &Expr) -> usize {
    match e {
        Expr::Num(_) | Expr::X => 1,
        Expr::Neg(inner) => 1 + depth(inner),
        Expr::Bin(_, l, r) => 1 + depth(l).max(depth(r)),
        Expr::Call(_, args) => 1 + args.iter().map(depth).max().unwrap_or(0),
    }
}

pub fn parse_expression(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        nesting: 0,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.fail("an operator or end of input");
    }
    Ok(e)
}

fn domain(e: &Expr, reason: impl Into<String>) -> EvalError {
    EvalError {
        subexpr: e.to_string(),
        reason: reason.into(),
    }
}

pub fn eval_expression(e: &Expr, x: f64) -> Result<f64, EvalError> {
    let v = match e {
        Expr::Num(v) => *v,
        Expr::X => x,
        Expr::Neg(inner) => -eval_expression(inner, x)?,
        Expr::Bin(op, l, r) => {
            let (a, b) = (eval_expression(l, x)?, eval_expression(r, x)?);
            match op {
                BinOp::Add => a + b,
                BinOp::Sub => a - b,
                BinOp::Mul => a * b,
                BinOp::Div if b == 0.0 => return Err(domain(e, "division by zero")),
                BinOp::Div => a / b,
                BinOp::Pow => a.powf(b),
            }
        }
        Expr::Call(func, args) => {
            let a = eval_expression(&args[0], x)?;
            match func {
                Func::Sin => a.sin(),
                Func::Cos => a.cos(),
                Func::Exp => a.exp(),
                Func::Ln if a <= 0.0 => return Err(domain(e, format!("ln of nonpositive value {a}"))),
                Func::Ln => a.ln(),
                Func::Sqrt if a < 0.0 => return Err(domain(e, format!("sqrt of negative value {a}"))),
                Func::Sqrt => a.sqrt(),
                Func::Abs => a.abs(),
                Func::Pow => a.powf(eval_expression(&args[1], x)?),
            }
        }
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(domain(e, format!("non-finite result {v} at x = {x}")))
    }
}
