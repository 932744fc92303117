//! Text syntax for free-field expressions.
//!
//! ```text
//! sum    := term (('+' | '-') term)*
//! term   := rational? factor | rational
//! factor := 'd^' INT factor | atom | ':' term term+ ':' | '(' sum ')'
//! atom   := ('beta' | 'gamma' | 'b' | 'c') '_' INT
//! ```
//!
//! A normal order nested inside another must be parenthesized.

use std::fmt;

use num_traits::One;
use vsa_core::freefield::{normal_order, FieldPoly, FreeFieldContext, GeneratorSymbol, Kind};
use vsa_core::rational::{fmt_q, parse_q};
use vsa_core::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldExpr {
    Gen(GeneratorSymbol),
    Scalar(Q),
    Deriv(u32, Box<FieldExpr>),
    /// `:e1 e2 ... ek:`, nested as `:e1 :e2 ... ek::`.
    NormalOrder(Vec<FieldExpr>),
    Scaled(Q, Box<FieldExpr>),
    Sum(Vec<FieldExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("index {index} of `{kind}` out of range (rank {rank})")]
    IndexOutOfRange { kind: String, index: u32, rank: u32 },
    #[error("unbalanced `:`")]
    UnbalancedColon,
    #[error("unbalanced parenthesis")]
    UnbalancedParen,
    #[error("expected {0}")]
    Expected(String),
    #[error("normal order needs at least two operands")]
    ShortNormalOrder,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    ctx: Option<FreeFieldContext>,
}

impl<'a> Parser<'a> {
    fn err(&self, at: usize, kind: ParseErrorKind) -> ParseError {
        let before = &self.src[..at.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        ParseError { line, col, kind }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek_tok(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek_tok() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn int(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let at = self.pos;
        self.digits().and_then(|d| d.parse().ok()).ok_or_else(|| self.err(at, ParseErrorKind::Expected("an integer".into())))
    }

    fn starts_rational(&mut self) -> bool {
        matches!(self.peek_tok(), Some(c) if c.is_ascii_digit() || c == '-')
    }

    fn rational(&mut self) -> Result<Q, ParseError> {
        self.skip_ws();
        let at = self.pos;
        let neg = self.eat('-');
        self.skip_ws();
        let num = self.digits().ok_or_else(|| self.err(at, ParseErrorKind::Expected("a rational".into())))?;
        let mut text = num.to_string();
        let save = self.pos;
        if self.eat('/') {
            self.skip_ws();
            match self.digits() {
                Some(den) => text = format!("{text}/{den}"),
                None => self.pos = save,
            }
        }
        let v = parse_q(&text).ok_or_else(|| self.err(at, ParseErrorKind::Expected("a rational".into())))?;
        Ok(if neg { -v } else { v })
    }

    fn ident(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| (start, &self.src[start..self.pos]))
    }

    fn sum(&mut self) -> Result<FieldExpr, ParseError> {
        let mut terms = vec![self.term()?];
        loop {
            if self.eat('+') {
                terms.push(self.term()?);
            } else if self.peek_tok() == Some('-') {
                self.pos += 1;
                let t = self.term()?;
                terms.push(negate(t));
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 { terms.pop().expect("one term") } else { FieldExpr::Sum(terms) })
    }

    fn term(&mut self) -> Result<FieldExpr, ParseError> {
        if self.starts_rational() {
            let c = self.rational()?;
            if self.starts_factor() {
                return Ok(FieldExpr::Scaled(c, Box::new(self.factor()?)));
            }
            return Ok(FieldExpr::Scalar(c));
        }
        self.factor()
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek_tok(), Some(c) if c == ':' || c == '(' || c.is_ascii_alphabetic())
    }

    fn factor(&mut self) -> Result<FieldExpr, ParseError> {
        self.skip_ws();
        let at = self.pos;
        match self.peek() {
            Some(':') => {
                self.pos += 1;
                let mut items = Vec::new();
                loop {
                    match self.peek_tok() {
                        Some(':') => {
                            self.pos += 1;
                            break;
                        }
                        None => return Err(self.err(at, ParseErrorKind::UnbalancedColon)),
                        Some(c) if c.is_ascii_digit() || c == '-' || c == '(' || c.is_ascii_alphabetic() => items.push(self.term()?),
                        Some(_) => return Err(self.err(self.pos, ParseErrorKind::UnbalancedColon)),
                    }
                }
                if items.len() < 2 {
                    return Err(self.err(at, ParseErrorKind::ShortNormalOrder));
                }
                Ok(FieldExpr::NormalOrder(items))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(self.err(at, ParseErrorKind::UnbalancedParen));
                }
                Ok(e)
            }
            _ => {
                let Some((start, name)) = self.ident() else {
                    return Err(self.err(at, ParseErrorKind::Expected("a field".into())));
                };
                if name == "d" && self.peek() == Some('^') {
                    self.pos += 1;
                    let k = self.int()?;
                    return Ok(FieldExpr::Deriv(k, Box::new(self.factor()?)));
                }
                let kind = Kind::from_spelling(name).ok_or_else(|| self.err(start, ParseErrorKind::UnknownSymbol(name.into())))?;
                if self.peek() != Some('_') {
                    return Err(self.err(self.pos, ParseErrorKind::Expected(format!("`_` and an index after `{name}`"))));
                }
                self.pos += 1;
                let index = self.int()?;
                if let Some(ctx) = self.ctx {
                    let rank = ctx.rank(kind);
                    if index == 0 || index > rank {
                        return Err(self.err(start, ParseErrorKind::IndexOutOfRange { kind: name.into(), index, rank }));
                    }
                } else if index == 0 {
                    return Err(self.err(start, ParseErrorKind::IndexOutOfRange { kind: name.into(), index, rank: 0 }));
                }
                Ok(FieldExpr::Gen(GeneratorSymbol::new(kind, index)))
            }
        }
    }
}

fn negate(e: FieldExpr) -> FieldExpr {
    match e {
        FieldExpr::Scalar(c) => FieldExpr::Scalar(-c),
        FieldExpr::Scaled(c, inner) => FieldExpr::Scaled(-c, inner),
        other => FieldExpr::Scaled(-Q::one(), Box::new(other)),
    }
}

/// Parses `src`; with a context, generator indices are range-checked.
pub fn parse_expr(src: &str, ctx: Option<FreeFieldContext>) -> Result<FieldExpr, ParseError> {
    let mut p = Parser { src, pos: 0, ctx };
    let e = p.sum()?;
    match p.peek_tok() {
        None => Ok(e),
        Some(':') => Err(p.err(p.pos, ParseErrorKind::UnbalancedColon)),
        Some(')') => Err(p.err(p.pos, ParseErrorKind::UnbalancedParen)),
        Some(c) => Err(p.err(p.pos, ParseErrorKind::Expected(format!("end of input, found `{c}`")))),
    }
}

/// Parses and evaluates `src` in `ctx`.
pub fn parse_field(src: &str, ctx: FreeFieldContext) -> Result<FieldPoly, ParseError> {
    let e = parse_expr(src, Some(ctx))?;
    Ok(e.eval(ctx).expect("indices checked while parsing"))
}

impl FieldExpr {
    pub fn eval(&self, ctx: FreeFieldContext) -> vsa_core::Result<FieldPoly> {
        Ok(match self {
            FieldExpr::Gen(g) => FieldPoly::generator(ctx, *g)?,
            FieldExpr::Scalar(c) => FieldPoly::scalar(ctx, c.clone()),
            FieldExpr::Deriv(k, e) => e.eval(ctx)?.derivative_n(*k),
            FieldExpr::NormalOrder(items) => {
                let mut it = items.iter().rev();
                let mut acc = it.next().expect("at least two operands").eval(ctx)?;
                for e in it {
                    acc = normal_order(&e.eval(ctx)?, &acc)?;
                }
                acc
            }
            FieldExpr::Scaled(c, e) => e.eval(ctx)?.scaled(c),
            FieldExpr::Sum(items) => {
                let mut acc = FieldPoly::zero(ctx);
                for e in items {
                    acc = acc.plus(&e.eval(ctx)?)?;
                }
                acc
            }
        })
    }

    /// Smallest context containing every generator used.
    pub fn min_context(&self) -> (u32, u32) {
        fn go(e: &FieldExpr, acc: &mut (u32, u32)) {
            match e {
                FieldExpr::Gen(g) => match g.kind {
                    Kind::Beta | Kind::Gamma => acc.0 = acc.0.max(g.index),
                    Kind::B | Kind::C => acc.1 = acc.1.max(g.index),
                },
                FieldExpr::Scalar(_) => {}
                FieldExpr::Deriv(_, e) | FieldExpr::Scaled(_, e) => go(e, acc),
                FieldExpr::NormalOrder(v) | FieldExpr::Sum(v) => v.iter().for_each(|e| go(e, acc)),
            }
        }
        let mut acc = (0, 0);
        go(self, &mut acc);
        acc
    }
}

impl fmt::Display for FieldExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldExpr::Gen(g) => write!(f, "{g}"),
            FieldExpr::Scalar(c) => f.write_str(&fmt_q(c)),
            FieldExpr::Deriv(k, e) => match **e {
                FieldExpr::Sum(_) | FieldExpr::Scaled(..) | FieldExpr::Scalar(_) => write!(f, "d^{k} ({e})"),
                _ => write!(f, "d^{k} {e}"),
            },
            FieldExpr::NormalOrder(items) => {
                f.write_str(":")?;
                for (i, e) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    match e {
                        FieldExpr::Sum(_) | FieldExpr::Scaled(..) | FieldExpr::Scalar(_) | FieldExpr::NormalOrder(_) => write!(f, "({e})")?,
                        _ => write!(f, "{e}")?,
                    }
                }
                f.write_str(":")
            }
            FieldExpr::Scaled(c, e) => match **e {
                FieldExpr::Sum(_) | FieldExpr::Scaled(..) | FieldExpr::Scalar(_) => write!(f, "{} ({e})", fmt_q(c)),
                _ => write!(f, "{} {e}", fmt_q(c)),
            },
            FieldExpr::Sum(items) => {
                for (i, e) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    match e {
                        FieldExpr::Sum(_) => write!(f, "({e})")?,
                        _ => write!(f, "{e}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use vsa_core::freefield::virasoro_s;
    use vsa_core::rational::{q, qr};

    fn ctx(bg: u32, bc: u32) -> FreeFieldContext {
        FreeFieldContext::new(bg, bc).unwrap()
    }

    #[test]
    fn simple_product() {
        let e = parse_expr(":beta_1 gamma_1:", None).unwrap();
        assert_eq!(e, FieldExpr::NormalOrder(vec![FieldExpr::Gen(GeneratorSymbol::beta(1)), FieldExpr::Gen(GeneratorSymbol::gamma(1))]));
        let p = parse_field(":beta_1 gamma_1:", ctx(1, 0)).unwrap();
        assert_eq!(p.to_text(), ":beta_1 gamma_1:");
    }

    #[test]
    fn virasoro_of_one_pair() {
        let p = parse_field("1/2 :beta_1 d^1 gamma_1: + -1/2 :d^1 beta_1 gamma_1:", ctx(1, 0)).unwrap();
        assert_eq!(p, virasoro_s(ctx(1, 0)).unwrap());
        let minus = parse_field("1/2 :beta_1 d^1 gamma_1: - 1/2 :d^1 beta_1 gamma_1:", ctx(1, 0)).unwrap();
        assert_eq!(p, minus);
    }

    #[test]
    fn whitespace_insensitive() {
        let a = parse_field(":beta_1gamma_1:+2c_1", ctx(1, 1)).unwrap();
        let b = parse_field("  :beta_1   gamma_1:\n + 2 c_1 ", ctx(1, 1)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.coeff(&parse_field("c_1", ctx(1, 1)).unwrap().terms().next().unwrap().0.clone()), q(2));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_expr(":beta_1 gamma_2", None).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnbalancedColon);
        assert_eq!((e.line, e.col), (1, 1));
        let e = parse_expr("beta_1 +\n  delta_1", None).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownSymbol("delta".into()));
        assert_eq!((e.line, e.col), (2, 3));
        let e = parse_field("gamma_3", ctx(2, 0)).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::IndexOutOfRange { index: 3, rank: 2, .. }));
        assert!(parse_expr(":beta_1:", None).is_err());
        assert!(parse_expr("(beta_1", None).is_err());
        assert!(parse_expr("beta_1)", None).is_err());
    }

    #[test]
    fn nested_normal_order_is_right_nested() {
        let c = ctx(1, 1);
        let a = parse_field(":beta_1 gamma_1 b_1:", c).unwrap();
        let b = parse_field(":beta_1 (:gamma_1 b_1:):", c).unwrap();
        assert_eq!(a, b);
        let composite = parse_field(":(:beta_1 gamma_1:) beta_1:", c).unwrap();
        // :(:beta gamma:) beta: differs from the free monomial by a derivative term
        let plain = parse_field(":beta_1 beta_1 gamma_1:", c).unwrap();
        assert_ne!(composite, plain);
        assert_eq!(parse_field("d^2 gamma_1", c).unwrap(), parse_field("gamma_1", c).unwrap().derivative_n(2));
        assert_eq!(parse_field("-3/4", c).unwrap(), FieldPoly::scalar(c, qr(-3, 4)));
    }
}
