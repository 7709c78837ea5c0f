//! Text syntax for rational functions.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' unary)?
//! atom   := integer | 'x' | 'alpha' | '(' expr ')'
//! ```
//!
//! So `^` binds tighter than unary minus (`-x^2` is `-(x^2)`) and is right
//! associative (`2^3^2` is `2^9`). Exponents must evaluate to integer
//! constants.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::ratfield::{CoeffField, Q, RatFunc};

/// Largest exponent magnitude accepted by [`Expr::eval`].
pub const MAX_EXPONENT: i64 = 4096;

/// Parsed expression. `Num` is always nonnegative; signs are `Neg` nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    X,
    Alpha,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr> {
        let mut p = Parser { src: text.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(_) | Expr::X | Expr::Alpha => 5,
        }
    }

    pub fn uses_alpha(&self) -> bool {
        match self {
            Expr::Alpha => true,
            Expr::Num(_) | Expr::X => false,
            Expr::Neg(a) => a.uses_alpha(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.uses_alpha() || b.uses_alpha()
            }
        }
    }

    /// Evaluates in F(x). `alpha` needs the parameter field.
    pub fn eval<F: CoeffField>(&self) -> Result<RatFunc<F>> {
        Ok(match self {
            Expr::Num(n) => RatFunc::constant(F::from_rational(&Q::from_integer(n.clone()))),
            Expr::X => RatFunc::x(),
            Expr::Alpha => RatFunc::constant(
                F::alpha().ok_or_else(|| Error::ParameterField("alpha needs the parameter field (--param)".into()))?,
            ),
            Expr::Neg(a) => a.eval::<F>()?.neg(),
            Expr::Add(a, b) => a.eval::<F>()?.add(&b.eval()?),
            Expr::Sub(a, b) => a.eval::<F>()?.sub(&b.eval()?),
            Expr::Mul(a, b) => a.eval::<F>()?.mul(&b.eval()?),
            Expr::Div(a, b) => a.eval::<F>()?.div(&b.eval()?).ok_or(Error::DivisionByZero)?,
            Expr::Pow(a, b) => {
                let k = b
                    .eval::<F>()?
                    .as_constant()
                    .and_then(|c| c.as_rational())
                    .filter(|q| q.is_integer())
                    .ok_or_else(|| Error::InvalidArgument("exponents must be integer constants".into()))?;
                let k = k
                    .to_integer()
                    .to_i64()
                    .filter(|k| k.abs() <= MAX_EXPONENT)
                    .ok_or_else(|| Error::InvalidArgument(format!("exponent magnitude exceeds {MAX_EXPONENT}")))?;
                a.eval::<F>()?.pow(k).ok_or(Error::DivisionByZero)?
            }
        })
    }

    fn write(&self, out: &mut String) {
        let child = |e: &Expr, min: u8, out: &mut String| {
            if e.precedence() < min {
                out.push('(');
                e.write(out);
                out.push(')');
            } else {
                e.write(out);
            }
        };
        match self {
            Expr::Num(n) => out.push_str(&n.to_string()),
            Expr::X => out.push('x'),
            Expr::Alpha => out.push_str("alpha"),
            Expr::Neg(a) => {
                out.push('-');
                child(a, 3, out);
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                child(a, 1, out);
                out.push_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " });
                child(b, 2, out);
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                child(a, 2, out);
                out.push(if matches!(self, Expr::Mul(..)) { '*' } else { '/' });
                child(b, 3, out);
            }
            Expr::Pow(a, b) => {
                child(a, 5, out);
                out.push('^');
                child(b, 3, out);
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write(&mut s);
        f.write_str(&s)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax { offset: self.pos, message: message.to_string() }
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

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            return Ok(Expr::Pow(Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
                Ok(Expr::Num(digits.parse().expect("digit run")))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                match &self.src[start..self.pos] {
                    b"x" => Ok(Expr::X),
                    b"alpha" => Ok(Expr::Alpha),
                    _ => {
                        self.pos = start;
                        Err(self.error("unknown identifier (expected x or alpha)"))
                    }
                }
            }
            Some(_) => Err(self.error("expected a number, x, alpha or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

/// Parses and evaluates one rational function.
pub fn parse_ratfunc<F: CoeffField>(text: &str) -> Result<RatFunc<F>> {
    Expr::parse(text)?.eval()
}

/// Splits `[e1, e2, …]` at top-level commas, returning each element with
/// its byte offset in `text`.
fn split_bracketed(text: &str, base: usize) -> Result<Vec<(usize, &str)>> {
    let trimmed_start = text.len() - text.trim_start().len();
    let inner = text.trim();
    if !inner.starts_with('[') || !inner.ends_with(']') || inner.len() < 2 {
        return Err(Error::Syntax { offset: base + trimmed_start, message: "expected a bracketed list".into() });
    }
    let body_start = trimmed_start + 1;
    let body = &inner[1..inner.len() - 1];
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut last = 0;
    for (i, c) in body.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push((base + body_start + last, &body[last..i]));
                last = i + 1;
            }
            _ => {}
        }
    }
    out.push((base + body_start + last, &body[last..]));
    Ok(out)
}

fn shift_offset(e: Error, by: usize) -> Error {
    match e {
        Error::Syntax { offset, message } => Error::Syntax { offset: offset + by, message },
        other => other,
    }
}

/// Parses `[e1, e2, …]`.
pub fn parse_list<F: CoeffField>(text: &str) -> Result<Vec<RatFunc<F>>> {
    split_bracketed(text, 0)?
        .into_iter()
        .map(|(off, s)| parse_ratfunc(s).map_err(|e| shift_offset(e, off)))
        .collect()
}

/// Parses `[[a, b], [c, d]]` into rows.
pub fn parse_matrix<F: CoeffField>(text: &str) -> Result<Vec<Vec<RatFunc<F>>>> {
    split_bracketed(text, 0)?
        .into_iter()
        .map(|(off, row)| {
            split_bracketed(row, off)?
                .into_iter()
                .map(|(o, s)| parse_ratfunc(s).map_err(|e| shift_offset(e, o)))
                .collect()
        })
        .collect()
}
