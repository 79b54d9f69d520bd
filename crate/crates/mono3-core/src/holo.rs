//! Holomorphic-expression front end: parse once, evaluate over ℂ or over 𝔸₃.
//!
//! The algebra evaluation is what turns an expression into a second-order
//! jet: a division becomes multiplication by the algebra inverse, and a
//! transcendental `g` is lifted through the radical part `n` (with `n³ = 0`)
//! as `g(a + n) = g(a) + g′(a)·n + g″(a)·n²/2`. Both evaluations share one
//! generic walker, so restricting the algebra evaluation to the complex
//! line reproduces the plain complex evaluation bit for bit.
//!
//! Grammar (documented as EBNF in `docs/expressions.md`): binary `+ - * /`
//! with usual precedence and left association, unary minus, integer powers
//! via `^` (binding tighter than unary minus), the literal `i`, the variable
//! `z`, and the calls `exp`, `sin`, `cos`, `log` (principal branch).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{A3, AlgebraError, Complex, INVERTIBILITY_FLOOR};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HoloError {
    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("division by zero")]
    Pole,
    #[error(transparent)]
    NonInvertible(#[from] AlgebraError),
    #[error("logarithm at a branch point (argument zero or radical)")]
    Branch,
}

fn syntax(pos: usize, message: impl Into<String>) -> HoloError {
    HoloError::Syntax {
        pos,
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Func {
    Exp,
    Sin,
    Cos,
    Log,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Log => "log",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Expr {
    Const(Complex),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
    Call(Func, Box<Expr>),
}

/// A parsed holomorphic expression in one variable `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct HoloFn {
    ast: Expr,
}

impl HoloFn {
    pub fn parse(text: &str) -> Result<HoloFn, HoloError> {
        let tokens = lex(text)?;
        let mut p = Parser {
            tokens: &tokens,
            idx: 0,
            end: text.len(),
        };
        let ast = p.expr()?;
        if let Some(&(_, pos)) = p.tokens.get(p.idx) {
            return Err(syntax(pos, "unexpected trailing input"));
        }
        Ok(HoloFn { ast })
    }

    /// The constant zero function.
    pub fn zero() -> HoloFn {
        HoloFn {
            ast: Expr::Const(Complex::new(0.0, 0.0)),
        }
    }

    pub fn eval_c(&self, z: Complex) -> Result<Complex, HoloError> {
        eval(&self.ast, z)
    }

    pub fn eval_a3(&self, z: A3) -> Result<A3, HoloError> {
        eval(&self.ast, z)
    }

    /// (F(ξ), F′(ξ), F″(ξ)), read off from the evaluation at ξ + ρ.
    pub fn jet(&self, xi: Complex) -> Result<(Complex, Complex, Complex), HoloError> {
        let seed = A3::new(xi, Complex::new(1.0, 0.0), Complex::new(0.0, 0.0));
        let v = self.eval_a3(seed)?;
        Ok((v.a, v.b, v.c * 2.0))
    }
}

impl FromStr for HoloFn {
    type Err = HoloError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        HoloFn::parse(s)
    }
}

// ---------------------------------------------------------------------------
// evaluation

/// A value the expression walker can compute with. Division is multiplication
/// by `inv`, so both implementations share the rounding behaviour on the
/// complex line.
trait Value: Copy {
    fn of(c: Complex) -> Self;
    fn add(self, o: Self) -> Self;
    fn sub(self, o: Self) -> Self;
    fn mul(self, o: Self) -> Self;
    fn neg(self) -> Self;
    fn recip(self) -> Result<Self, HoloError>;
    fn call(self, g: Func) -> Result<Self, HoloError>;
}

impl Value for Complex {
    fn of(c: Complex) -> Self {
        c
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn sub(self, o: Self) -> Self {
        self - o
    }
    fn mul(self, o: Self) -> Self {
        self * o
    }
    fn neg(self) -> Self {
        -self
    }
    fn recip(self) -> Result<Self, HoloError> {
        if self.re == 0.0 && self.im == 0.0 {
            return Err(HoloError::Pole);
        }
        Ok(self.inv())
    }
    fn call(self, g: Func) -> Result<Self, HoloError> {
        Ok(match g {
            Func::Exp => self.exp(),
            Func::Sin => self.sin(),
            Func::Cos => self.cos(),
            Func::Log => {
                if self.re == 0.0 && self.im == 0.0 {
                    return Err(HoloError::Branch);
                }
                self.ln()
            }
        })
    }
}

impl Value for A3 {
    fn of(c: Complex) -> Self {
        A3::from_complex(c)
    }
    fn add(self, o: Self) -> Self {
        self + o
    }
    fn sub(self, o: Self) -> Self {
        self - o
    }
    fn mul(self, o: Self) -> Self {
        self * o
    }
    fn neg(self) -> Self {
        -self
    }
    fn recip(self) -> Result<Self, HoloError> {
        Ok(self.inverse()?)
    }
    fn call(self, g: Func) -> Result<Self, HoloError> {
        // lift through the radical part: g(a + n) = g(a) + g′(a)n + g″(a)n²/2
        let a = self.a;
        let (g0, g1, g2) = match g {
            Func::Exp => {
                let e = a.exp();
                (e, e, e)
            }
            Func::Sin => (a.sin(), a.cos(), -a.sin()),
            Func::Cos => (a.cos(), -a.sin(), -a.cos()),
            Func::Log => {
                if a.norm() < INVERTIBILITY_FLOOR {
                    return Err(HoloError::Branch);
                }
                let ia = a.inv();
                (a.ln(), ia, -ia * ia)
            }
        };
        Ok(A3::new(g0, g1 * self.b, g1 * self.c + g2 * self.b * self.b * 0.5))
    }
}

fn eval<V: Value>(ast: &Expr, z: V) -> Result<V, HoloError> {
    Ok(match ast {
        Expr::Const(c) => V::of(*c),
        Expr::Var => z,
        Expr::Neg(e) => eval(e, z)?.neg(),
        Expr::Add(l, r) => eval(l, z)?.add(eval(r, z)?),
        Expr::Sub(l, r) => eval(l, z)?.sub(eval(r, z)?),
        Expr::Mul(l, r) => eval(l, z)?.mul(eval(r, z)?),
        Expr::Div(l, r) => {
            let inv = eval(r, z)?.recip()?;
            eval(l, z)?.mul(inv)
        }
        Expr::Pow(b, n) => {
            // 0^0 = 1 by the polynomial convention: n = 0 never looks at the base
            if *n == 0 {
                V::of(Complex::new(1.0, 0.0))
            } else {
                let base = eval(b, z)?;
                let base = if *n < 0 { base.recip()? } else { base };
                let mut acc = base;
                for _ in 1..n.unsigned_abs() {
                    acc = acc.mul(base);
                }
                acc
            }
        }
        Expr::Call(g, e) => eval(e, z)?.call(*g)?,
    })
}

// ---------------------------------------------------------------------------
// lexer

#[derive(Debug, Clone, Copy, PartialEq)]
enum Tok {
    Num(f64),
    Z,
    I,
    Fn(Func),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, HoloError> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let pos = i;
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((Tok::Plus, pos));
                i += 1;
            }
            '-' => {
                out.push((Tok::Minus, pos));
                i += 1;
            }
            '*' => {
                out.push((Tok::Star, pos));
                i += 1;
            }
            '/' => {
                out.push((Tok::Slash, pos));
                i += 1;
            }
            '^' => {
                out.push((Tok::Caret, pos));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, pos));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, pos));
                i += 1;
            }
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                // exponent only when a digit actually follows the marker
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let n: f64 = text[pos..i]
                    .parse()
                    .map_err(|_| syntax(pos, "malformed number"))?;
                out.push((Tok::Num(n), pos));
            }
            'a'..='z' | 'A'..='Z' => {
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let tok = match &text[pos..i] {
                    "z" => Tok::Z,
                    "i" => Tok::I,
                    "exp" => Tok::Fn(Func::Exp),
                    "sin" => Tok::Fn(Func::Sin),
                    "cos" => Tok::Fn(Func::Cos),
                    "log" => Tok::Fn(Func::Log),
                    name => return Err(syntax(pos, format!("unknown name '{name}'"))),
                };
                out.push((tok, pos));
            }
            other => return Err(syntax(pos, format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// parser

struct Parser<'a> {
    tokens: &'a [(Tok, usize)],
    idx: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<Tok> {
        self.tokens.get(self.idx).map(|&(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.idx).map_or(self.end, |&(_, p)| p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.peek();
        if t.is_some() {
            self.idx += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), HoloError> {
        if self.peek() == Some(t) {
            self.idx += 1;
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<Expr, HoloError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.idx += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.idx += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, HoloError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.idx += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.idx += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, HoloError> {
        if self.peek() == Some(Tok::Minus) {
            self.idx += 1;
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, HoloError> {
        let mut base = self.atom()?;
        while self.peek() == Some(Tok::Caret) {
            self.idx += 1;
            base = Expr::Pow(Box::new(base), self.exponent()?);
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i32, HoloError> {
        let neg = if self.peek() == Some(Tok::Minus) {
            self.idx += 1;
            true
        } else {
            false
        };
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(n)) if n.fract() == 0.0 && n.abs() <= i32::MAX as f64 => {
                let n = n as i32;
                Ok(if neg { -n } else { n })
            }
            _ => Err(syntax(pos, "integer exponent expected")),
        }
    }

    fn atom(&mut self) -> Result<Expr, HoloError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Expr::Const(Complex::new(n, 0.0))),
            Some(Tok::I) => Ok(Expr::Const(Complex::new(0.0, 1.0))),
            Some(Tok::Z) => Ok(Expr::Var),
            Some(Tok::Fn(g)) => {
                self.expect(Tok::LParen, "'(' after function name")?;
                let arg = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(Expr::Call(g, Box::new(arg)))
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Some(_) => Err(syntax(pos, "unexpected token")),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }
}

// ---------------------------------------------------------------------------
// printer

impl fmt::Display for HoloFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_prec(&self.ast, 1, f)
    }
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(..) => 3,
        Expr::Pow(..) => 4,
        Expr::Const(..) | Expr::Var | Expr::Call(..) => 5,
    }
}

fn fmt_prec(e: &Expr, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if prec(e) < min {
        write!(f, "(")?;
        fmt_prec(e, 1, f)?;
        return write!(f, ")");
    }
    match e {
        Expr::Const(c) => {
            if c.im == 0.0 {
                write!(f, "{}", c.re)
            } else if c.re == 0.0 && c.im == 1.0 {
                write!(f, "i")
            } else if c.re == 0.0 {
                write!(f, "{}*i", c.im)
            } else {
                write!(f, "({} + {}*i)", c.re, c.im)
            }
        }
        Expr::Var => write!(f, "z"),
        Expr::Neg(x) => {
            write!(f, "-")?;
            fmt_prec(x, 3, f)
        }
        Expr::Add(l, r) => {
            fmt_prec(l, 1, f)?;
            write!(f, " + ")?;
            fmt_prec(r, 2, f)
        }
        Expr::Sub(l, r) => {
            fmt_prec(l, 1, f)?;
            write!(f, " - ")?;
            fmt_prec(r, 2, f)
        }
        Expr::Mul(l, r) => {
            fmt_prec(l, 2, f)?;
            write!(f, "*")?;
            fmt_prec(r, 3, f)
        }
        Expr::Div(l, r) => {
            fmt_prec(l, 2, f)?;
            write!(f, "/")?;
            fmt_prec(r, 3, f)
        }
        Expr::Pow(b, n) => {
            fmt_prec(b, 5, f)?;
            write!(f, "^{n}")
        }
        Expr::Call(g, x) => {
            write!(f, "{}(", g.name())?;
            fmt_prec(x, 1, f)?;
            write!(f, ")")
        }
    }
}
