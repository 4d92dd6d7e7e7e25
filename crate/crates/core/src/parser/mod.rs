//! Text front end.
//!
//! ```text
//! equation    := side '=' side
//! side        := product (('+' | '-') product)*
//! product     := unary (('*' | '/') unary | <implicit before y>)*
//! unary       := ('-' | '+') unary | power
//! power       := atom ('^' exponent)?
//! exponent    := 't' | '(' 't' ('+'|'-') int ')' | ['-'] int | '(' ['-'] int ')'
//! atom        := number | 't' | 'y' '(' 't' [('+'|'-') int] ')'
//!              | ('cos' | 'sin') '(' [int '*'] 'pi' '*' 't' ')' | '(' side ')'
//! ```
//!
//! Numbers are exact: `2.5` is `5/2`. `y(t+k)` terms may appear on either
//! side and must have constant coefficients. Negative shifts are removed by
//! multiplying the whole equation by `T^k`.

mod lexer;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::rational::{parse_rational, pow};
use crate::algebra::{Rational, TPoly};
use crate::expr::{ExprError, SequenceExpr, TrigPart};
use crate::operator::OperatorPoly;
use crate::solver::Equation;
use lexer::{tokenize, Tok, Token};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// Malformed input.
    Syntax,
    /// Well-formed but meaningless, e.g. a variable coefficient on `y`.
    Semantic,
    /// A right-hand-side term outside `c · λ^t · p(t) · {1, cos nπt, sin nπt}`.
    UnsupportedRhs,
    NonConsecutiveConditions,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::Semantic => "semantic error",
            ParseErrorKind::UnsupportedRhs => "unsupported right-hand side",
            ParseErrorKind::NonConsecutiveConditions => "non-consecutive initial conditions",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{kind} at byte {offset}: expected {expected}\n{snippet}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset of the first offending byte (the input length at end of input).
    pub offset: usize,
    pub expected: String,
    /// The source line with a caret under `offset`.
    pub snippet: String,
}

impl ParseError {
    pub(crate) fn new(
        kind: ParseErrorKind,
        src: &str,
        offset: usize,
        expected: impl Into<String>,
    ) -> Self {
        let offset = offset.min(src.len());
        let caret_col = src[..offset].chars().count();
        let snippet = format!("  {src}\n  {}^", " ".repeat(caret_col));
        ParseError {
            kind,
            offset,
            expected: expected.into(),
            snippet,
        }
    }
}

/// Parses `lhs = rhs` into an operator and right-hand side.
pub fn parse_equation(src: &str) -> Result<Equation, ParseError> {
    let mut p = Parser::new(src)?;
    let left = p.sum()?;
    p.expect(Tok::Equals, "`=`")?;
    let right = p.sum()?;
    p.expect(Tok::Eof, "end of input")?;

    let mut ys = left.ys;
    for (k, c) in right.ys {
        *ys.entry(k).or_insert_with(Rational::zero) -= c;
    }
    ys.retain(|_, c| !c.is_zero());
    let rhs = right.expr.sub(&left.expr);
    let (Some(&min), Some(&max)) = (ys.keys().next(), ys.keys().next_back()) else {
        return Err(ParseError::new(
            ParseErrorKind::Semantic,
            src,
            0,
            "at least one y(t+k) term with a nonzero net coefficient",
        ));
    };
    // y(t-k): multiply the whole equation by T^k
    let lift = (-min).max(0);
    let degree = (max + lift) as usize;
    let mut coeffs = vec![Rational::zero(); degree + 1];
    for (k, c) in ys {
        coeffs[(k + lift) as usize] = c;
    }
    let rhs = if lift > 0 { rhs.shift(lift) } else { rhs };
    Equation::new(OperatorPoly::new(coeffs), rhs)
        .map_err(|e| ParseError::new(ParseErrorKind::Semantic, src, 0, e.to_string()))
}

/// Parses `y(0)=1, y(1)=3/2, …`; the abscissae must be consecutive integers
/// (in any order). Returned sorted by `t`.
pub fn parse_initial(src: &str) -> Result<Vec<(i64, Rational)>, ParseError> {
    let mut p = Parser::new(src)?;
    let mut conds: Vec<(i64, Rational, usize)> = Vec::new();
    if p.peek() == &Tok::Eof {
        return Ok(Vec::new());
    }
    loop {
        let start = p.peek_offset();
        p.expect_ident("y")?;
        p.expect(Tok::LParen, "`(`")?;
        let t = p.signed_int()?;
        p.expect(Tok::RParen, "`)`")?;
        p.expect(Tok::Equals, "`=`")?;
        let value_start = p.peek_offset();
        let value = p.sum()?;
        if !value.ys.is_empty() {
            return Err(p.error_at(ParseErrorKind::Semantic, value_start, "a constant value"));
        }
        let Some(v) = value.expr.as_constant() else {
            return Err(p.error_at(ParseErrorKind::Semantic, value_start, "a constant value"));
        };
        conds.push((t, v, start));
        match p.peek() {
            Tok::Comma => {
                p.bump();
            }
            Tok::Eof => break,
            _ => return Err(p.unexpected("`,` or end of input")),
        }
    }
    conds.sort_by_key(|c| c.0);
    for w in conds.windows(2) {
        if w[1].0 != w[0].0 + 1 {
            let offset = w[0].2.max(w[1].2);
            return Err(p.error_at(
                ParseErrorKind::NonConsecutiveConditions,
                offset,
                format!("y({}) after y({})", w[0].0 + 1, w[0].0),
            ));
        }
    }
    Ok(conds.into_iter().map(|(t, v, _)| (t, v)).collect())
}

/// Parses a sequence expression in canonical display syntax.
pub fn parse_expr(src: &str) -> Result<SequenceExpr, ParseError> {
    let mut p = Parser::new(src)?;
    let start = p.peek_offset();
    let v = p.sum()?;
    p.expect(Tok::Eof, "end of input")?;
    if !v.ys.is_empty() {
        return Err(p.error_at(
            ParseErrorKind::Semantic,
            start,
            "an expression without y(t+k)",
        ));
    }
    Ok(v.expr)
}

/// Parses a polynomial in the translation operator, e.g. `T^2-5*T+4`.
pub fn parse_operator(src: &str) -> Result<OperatorPoly, ParseError> {
    let mut p = Parser::new(src)?;
    let poly = p.op_sum()?;
    p.expect(Tok::Eof, "end of input")?;
    if poly.is_zero() {
        return Err(p.error_at(ParseErrorKind::Semantic, 0, "a nonzero operator"));
    }
    Ok(OperatorPoly::from_poly(poly))
}

/// Linear combination of shifts of `y` plus a free sequence expression.
#[derive(Clone, Debug, Default)]
struct Value {
    ys: BTreeMap<i64, Rational>,
    expr: SequenceExpr,
}

impl Value {
    fn expr(expr: SequenceExpr) -> Self {
        Value {
            ys: BTreeMap::new(),
            expr,
        }
    }

    fn constant(&self) -> Option<Rational> {
        if self.ys.is_empty() {
            self.expr.as_constant()
        } else {
            None
        }
    }

    fn scale(mut self, c: &Rational) -> Self {
        for v in self.ys.values_mut() {
            *v *= c;
        }
        self.ys.retain(|_, v| !v.is_zero());
        self.expr = self.expr.scale(c);
        self
    }

    fn add(mut self, other: Value, sign: &Rational) -> Self {
        for (k, c) in other.ys {
            *self.ys.entry(k).or_insert_with(Rational::zero) += c * sign;
        }
        self.ys.retain(|_, v| !v.is_zero());
        self.expr = self.expr.add(&other.expr.scale(sign));
        self
    }
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        Ok(Parser {
            src,
            toks: tokenize(src)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, n: usize) -> &Tok {
        let i = (self.pos + n).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn peek_offset(&self) -> usize {
        self.toks[self.pos].offset
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(
        &self,
        kind: ParseErrorKind,
        offset: usize,
        expected: impl Into<String>,
    ) -> ParseError {
        ParseError::new(kind, self.src, offset, expected)
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        let found = self.peek().describe();
        self.error_at(
            ParseErrorKind::Syntax,
            self.peek_offset(),
            format!("{expected}, found {found}"),
        )
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token, ParseError> {
        if *self.peek() == tok {
            Ok(self.bump())
        } else {
            Err(self.unexpected(what))
        }
    }

    fn expect_ident(&mut self, name: &str) -> Result<Token, ParseError> {
        match self.peek() {
            Tok::Ident(s) if s == name => Ok(self.bump()),
            _ => Err(self.unexpected(&format!("`{name}`"))),
        }
    }

    fn unsigned_int(&mut self) -> Result<(i64, usize), ParseError> {
        let offset = self.peek_offset();
        match self.peek().clone() {
            Tok::Number(n) if !n.contains('.') => {
                self.bump();
                n.parse::<i64>().map(|v| (v, offset)).map_err(|_| {
                    self.error_at(
                        ParseErrorKind::Semantic,
                        offset,
                        "an integer that fits in 64 bits",
                    )
                })
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    fn signed_int(&mut self) -> Result<i64, ParseError> {
        let neg = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let (v, _) = self.unsigned_int()?;
        Ok(if neg { -v } else { v })
    }

    fn sum(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.product()?;
        loop {
            let sign = match self.peek() {
                Tok::Plus => Rational::one(),
                Tok::Minus => -Rational::one(),
                _ => return Ok(acc),
            };
            self.bump();
            let rhs = self.product()?;
            acc = acc.add(rhs, &sign);
        }
    }

    fn product(&mut self) -> Result<Value, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let at = self.peek_offset();
                    let rhs = self.unary()?;
                    acc = self.multiply(acc, rhs, at)?;
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.peek_offset();
                    let rhs = self.unary()?;
                    let Some(c) = rhs.constant() else {
                        return Err(self.error_at(
                            ParseErrorKind::UnsupportedRhs,
                            at,
                            "a constant divisor",
                        ));
                    };
                    if c.is_zero() {
                        return Err(self.error_at(
                            ParseErrorKind::Semantic,
                            at,
                            "a nonzero divisor",
                        ));
                    }
                    acc = acc.scale(&c.recip());
                }
                // `5y(t+1)`: implicit product in front of y
                Tok::Ident(s) if s == "y" => {
                    let at = self.peek_offset();
                    let rhs = self.unary()?;
                    acc = self.multiply(acc, rhs, at)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn multiply(&self, a: Value, b: Value, at: usize) -> Result<Value, ParseError> {
        if !a.ys.is_empty() && !b.ys.is_empty() {
            return Err(self.error_at(
                ParseErrorKind::Semantic,
                at,
                "a linear equation (y times y)",
            ));
        }
        let (with_y, other) = if b.ys.is_empty() { (a, b) } else { (b, a) };
        if !with_y.ys.is_empty() {
            let Some(c) = other.constant() else {
                return Err(self.error_at(
                    ParseErrorKind::Semantic,
                    at,
                    "a constant coefficient on y",
                ));
            };
            return Ok(with_y.scale(&c));
        }
        let expr = with_y.expr.mul(&other.expr).map_err(|e| match e {
            ExprError::TrigProduct => self.error_at(
                ParseErrorKind::UnsupportedRhs,
                at,
                "at most one cos/sin factor per term",
            ),
            ExprError::ZeroBase => self.error_at(ParseErrorKind::Semantic, at, "a nonzero base"),
        })?;
        Ok(Value::expr(expr))
    }

    fn unary(&mut self) -> Result<Value, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(self.unary()?.scale(&-Rational::one()))
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Value, ParseError> {
        let base_at = self.peek_offset();
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let exp_at = self.peek_offset();
        // λ^t, λ^(t+k)
        let geometric_shift = match (self.peek(), self.peek_at(1)) {
            (Tok::Ident(s), _) if s == "t" => {
                self.bump();
                Some(0)
            }
            (Tok::LParen, Tok::Ident(s)) if s == "t" => {
                self.bump();
                self.bump();
                let k = match self.peek() {
                    Tok::Plus | Tok::Minus => self.signed_int()?,
                    _ => 0,
                };
                self.expect(Tok::RParen, "`)`")?;
                Some(k)
            }
            _ => None,
        };
        if let Some(k) = geometric_shift {
            let Some(b) = base.constant() else {
                return Err(self.error_at(
                    ParseErrorKind::UnsupportedRhs,
                    exp_at,
                    "a constant base under a `^t` exponent",
                ));
            };
            if b.is_zero() {
                return Err(self.error_at(ParseErrorKind::Semantic, base_at, "a nonzero base"));
            }
            return Ok(Value::expr(
                SequenceExpr::geometric(b.clone()).scale(&pow(&b, k)),
            ));
        }
        let paren = *self.peek() == Tok::LParen;
        if paren {
            self.bump();
        }
        let n = self.signed_int()?;
        if paren {
            self.expect(Tok::RParen, "`)`")?;
        }
        if let Some(b) = base.constant() {
            if b.is_zero() && n < 0 {
                return Err(self.error_at(ParseErrorKind::Semantic, base_at, "a nonzero base"));
            }
            return Ok(Value::expr(SequenceExpr::constant(pow(&b, n))));
        }
        if !base.ys.is_empty() {
            if n == 1 {
                return Ok(base);
            }
            return Err(self.error_at(
                ParseErrorKind::Semantic,
                exp_at,
                "a linear equation (no powers of y)",
            ));
        }
        if n < 0 {
            return Err(self.error_at(
                ParseErrorKind::UnsupportedRhs,
                exp_at,
                "a nonnegative power of a non-constant expression",
            ));
        }
        let mut acc = SequenceExpr::constant(Rational::one());
        for _ in 0..n {
            acc = acc.mul(&base.expr).map_err(|_| {
                self.error_at(
                    ParseErrorKind::UnsupportedRhs,
                    exp_at,
                    "at most one cos/sin factor per term",
                )
            })?;
        }
        Ok(Value::expr(acc))
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let at = self.peek_offset();
        match self.peek().clone() {
            Tok::Number(n) => {
                self.bump();
                let r = parse_rational(&n)
                    .ok_or_else(|| self.error_at(ParseErrorKind::Syntax, at, "a number"))?;
                Ok(Value::expr(SequenceExpr::constant(r)))
            }
            Tok::LParen => {
                self.bump();
                let v = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(v)
            }
            Tok::Ident(name) => match name.as_str() {
                "t" => {
                    self.bump();
                    Ok(Value::expr(SequenceExpr::from_poly(TPoly::x())))
                }
                "y" => {
                    self.bump();
                    let k = self.shift_argument()?;
                    let mut ys = BTreeMap::new();
                    ys.insert(k, Rational::one());
                    Ok(Value {
                        ys,
                        expr: SequenceExpr::zero(),
                    })
                }
                "cos" | "sin" => {
                    self.bump();
                    let n = self.trig_argument()?;
                    let trig = if name == "cos" {
                        TrigPart::Cos(n)
                    } else {
                        TrigPart::Sin(n)
                    };
                    Ok(Value::expr(SequenceExpr::trig(trig)))
                }
                _ => Err(self.error_at(
                    ParseErrorKind::Syntax,
                    at,
                    format!(
                        "a number, `t`, `y(...)`, `cos(...)`, `sin(...)` or `(`, found `{name}`"
                    ),
                )),
            },
            _ => Err(self.unexpected("a number, `t`, `y(...)`, `cos(...)`, `sin(...)` or `(`")),
        }
    }

    /// `(t)`, `(t+k)`, `(t-k)`.
    fn shift_argument(&mut self) -> Result<i64, ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        self.expect_ident("t")?;
        let k = match self.peek() {
            Tok::Plus | Tok::Minus => self.signed_int()?,
            _ => 0,
        };
        self.expect(Tok::RParen, "`)`")?;
        Ok(k)
    }

    /// `(pi*t)` or `(n*pi*t)`.
    fn trig_argument(&mut self) -> Result<u32, ParseError> {
        self.expect(Tok::LParen, "`(`")?;
        let n = match self.peek().clone() {
            Tok::Number(text) => {
                let at = self.peek_offset();
                if text.contains('.') {
                    return Err(self.error_at(
                        ParseErrorKind::UnsupportedRhs,
                        at,
                        "an integer multiple of pi",
                    ));
                }
                let (v, _) = self.unsigned_int()?;
                self.expect(Tok::Star, "`*`")?;
                v.to_u32().ok_or_else(|| {
                    self.error_at(ParseErrorKind::UnsupportedRhs, at, "a small frequency")
                })?
            }
            _ => 1,
        };
        self.expect_ident("pi")?;
        self.expect(Tok::Star, "`*`")?;
        self.expect_ident("t")?;
        self.expect(Tok::RParen, "`)`")?;
        Ok(n)
    }

    // ---- operator polynomials in T ----

    fn op_sum(&mut self) -> Result<TPoly, ParseError> {
        let mut acc = self.op_product()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.op_product()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.op_product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn op_product(&mut self) -> Result<TPoly, ParseError> {
        let mut acc = self.op_unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.op_unary()?;
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.peek_offset();
                    let d = self.op_unary()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(self.error_at(
                            ParseErrorKind::Semantic,
                            at,
                            "a nonzero constant divisor",
                        ));
                    }
                    acc = acc.scale(&d.coeff(0).recip());
                }
                Tok::Ident(s) if s == "T" => {
                    acc = &acc * &self.op_unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn op_unary(&mut self) -> Result<TPoly, ParseError> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-self.op_unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.op_unary()
            }
            _ => {
                let base = self.op_atom()?;
                if *self.peek() != Tok::Caret {
                    return Ok(base);
                }
                self.bump();
                let exp_at = self.peek_offset();
                let n = self.signed_int()?;
                if n < 0 {
                    if base.is_constant() && !base.is_zero() {
                        return Ok(TPoly::constant(pow(&base.coeff(0), n)));
                    }
                    return Err(self.error_at(
                        ParseErrorKind::Semantic,
                        exp_at,
                        "a nonnegative exponent",
                    ));
                }
                Ok(base.pow(n as u32))
            }
        }
    }

    fn op_atom(&mut self) -> Result<TPoly, ParseError> {
        let at = self.peek_offset();
        match self.peek().clone() {
            Tok::Number(n) => {
                self.bump();
                parse_rational(&n)
                    .map(TPoly::constant)
                    .ok_or_else(|| self.error_at(ParseErrorKind::Syntax, at, "a number"))
            }
            Tok::Ident(s) if s == "T" => {
                self.bump();
                Ok(TPoly::x())
            }
            Tok::LParen => {
                self.bump();
                let v = self.op_sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(v)
            }
            _ => Err(self.unexpected("a number, `T` or `(`")),
        }
    }
}
