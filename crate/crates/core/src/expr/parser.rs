//! Recursive-descent parser.
//!
//! Grammar, lowest precedence first:
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?
//! primary := number | 'pi' | name | func '(' sum ')' | '(' sum ')'
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so `-u^2`
//! is `-(u^2)` and `2^-u` is accepted.

use std::f64::consts::PI;
use std::sync::Arc;

use thiserror::Error;

use super::lexer::{tokenize, Token, TokenKind};
use super::{BinaryOp, Expr, UnaryOp};

#[derive(Debug, Clone, PartialEq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    /// Character index into the source; equals the length for end-of-input errors.
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

/// Parses `source`, accepting only the identifiers listed in `allowed_vars`
/// (plus the constant `pi` and the builtin function names).
pub fn parse(source: &str, allowed_vars: &[&str]) -> Result<Expr, ParseError> {
    if source.trim().is_empty() {
        return Err(ParseError::new(0, "empty expression"));
    }
    let tokens = tokenize(source)?;
    let mut p = Parser {
        tokens,
        cursor: 0,
        allowed: allowed_vars,
    };
    let e = p.sum()?;
    let tok = p.peek();
    if tok.kind != TokenKind::Eof {
        return Err(ParseError::new(tok.pos, "unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    cursor: usize,
    allowed: &'a [&'a str],
}

fn node(op: BinaryOp, a: Expr, b: Expr) -> Expr {
    Expr::Binary(op, Arc::new(a), Arc::new(b))
}

impl Parser<'_> {
    fn peek(&self) -> &Token {
        &self.tokens[self.cursor]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.cursor].clone();
        if t.kind != TokenKind::Eof {
            self.cursor += 1;
        }
        t
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        loop {
            let op = match self.peek().kind {
                TokenKind::Plus => BinaryOp::Add,
                TokenKind::Minus => BinaryOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.product()?;
            lhs = node(op, lhs, rhs);
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek().kind {
                TokenKind::Star => BinaryOp::Mul,
                TokenKind::Slash => BinaryOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = node(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek().kind == TokenKind::Minus {
            self.bump();
            let inner = self.unary()?;
            return Ok(Expr::Unary(UnaryOp::Neg, Arc::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if self.peek().kind == TokenKind::Caret {
            self.bump();
            let exponent = self.unary()?;
            return Ok(node(BinaryOp::Pow, base, exponent));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let tok = self.bump();
        match tok.kind {
            TokenKind::Number(v) => Ok(Expr::Const(v)),
            TokenKind::LParen => {
                let e = self.sum()?;
                self.expect_rparen(tok.pos)?;
                Ok(e)
            }
            TokenKind::Ident(name) => {
                if let Some(op) = UnaryOp::from_function_name(&name) {
                    let open = self.bump();
                    if open.kind != TokenKind::LParen {
                        return Err(ParseError::new(
                            open.pos,
                            format!("expected `(` after function `{name}`"),
                        ));
                    }
                    let arg = self.sum()?;
                    self.expect_rparen(open.pos)?;
                    return Ok(Expr::Unary(op, Arc::new(arg)));
                }
                if name == "pi" {
                    return Ok(Expr::Const(PI));
                }
                if self.allowed.contains(&name.as_str()) {
                    Ok(Expr::Var(Arc::from(name.as_str())))
                } else {
                    Err(ParseError::new(tok.pos, format!("unknown identifier `{name}`")))
                }
            }
            TokenKind::Eof => Err(ParseError::new(tok.pos, "unexpected end of input")),
            other => Err(ParseError::new(tok.pos, format!("unexpected token {other:?}"))),
        }
    }

    fn expect_rparen(&mut self, open_pos: usize) -> Result<(), ParseError> {
        let tok = self.bump();
        match tok.kind {
            TokenKind::RParen => Ok(()),
            TokenKind::Eof => Err(ParseError::new(
                tok.pos,
                format!("unclosed `(` opened at position {open_pos}"),
            )),
            _ => Err(ParseError::new(tok.pos, "expected `)`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Expr {
        parse(s, &["u", "v", "t"]).unwrap()
    }

    #[test]
    fn product_of_functions() {
        let expected = node(
            BinaryOp::Mul,
            Expr::Unary(UnaryOp::Sin, Arc::new(Expr::var("u"))),
            Expr::Unary(UnaryOp::Cos, Arc::new(Expr::var("v"))),
        );
        assert_eq!(p("sin(u)*cos(v)"), expected);
    }

    #[test]
    fn unbalanced_paren_reports_end_position() {
        let err = parse("sin(", &["u"]).unwrap_err();
        assert_eq!(err.position, 4);
    }

    #[test]
    fn unknown_identifier_rejected() {
        let err = parse("u + w", &["u"]).unwrap_err();
        assert_eq!(err.position, 4);
        assert!(err.message.contains('w'));
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(p("2^3^2").eval(&[] as &[(&str, f64)]).unwrap(), 512.0);
        assert_eq!(p("-2^2").eval(&[] as &[(&str, f64)]).unwrap(), -4.0);
        assert_eq!(p("8/4/2").eval(&[] as &[(&str, f64)]).unwrap(), 1.0);
        assert_eq!(p("1-2-3").eval(&[] as &[(&str, f64)]).unwrap(), -4.0);
        assert_eq!(p("2^-1").eval(&[] as &[(&str, f64)]).unwrap(), 0.5);
        assert_eq!(p("2 * -3").eval(&[] as &[(&str, f64)]).unwrap(), -6.0);
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(p(" sin ( u ) * v "), p("sin(u)*v"));
    }

    #[test]
    fn errors() {
        assert!(parse("", &[]).is_err());
        assert!(parse("u +", &["u"]).is_err());
        assert!(parse("(u", &["u"]).is_err());
        assert!(parse("u)", &["u"]).is_err());
        assert!(parse("sin u", &["u"]).is_err());
        assert!(parse("u v", &["u", "v"]).is_err());
    }
}
