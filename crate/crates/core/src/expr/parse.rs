//! Recursive-descent parser.
//!
//! ```text
//! expr  := term (("+" | "-") term)*
//! term  := unary (("*" | "/" | <juxtaposition>) unary)*
//! unary := "-" unary | power
//! power := atom ("^" unary)?
//! atom  := number | "x" | "pi" | "e" | ident "(" expr ")" | ident atom | "(" expr ")"
//! ```
//!
//! `t` is accepted as a synonym for `x`. Juxtaposed factors cannot start with
//! a minus sign, so `x -1` is a subtraction.

use std::fmt;

use super::{Constant, Expr, Func};
use crate::poly::{parse_decimal, Rational};

/// Parse failure with the byte offset where it was detected.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct SyntaxError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at offset {}: expected one of {}, found {}",
            self.offset,
            self.expected.join(", "),
            self.found
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Var,
    Const(Constant),
    Func(Func),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(_) => "number".into(),
            Tok::Var => "`x`".into(),
            Tok::Const(c) => format!("`{}`", c.name()),
            Tok::Func(f) => format!("`{}`", f.name()),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self, Tok::Num(_) | Tok::Var | Tok::Const(_) | Tok::Func(_) | Tok::LParen)
    }
}

const ATOM_START: &[&str] = &["number", "x", "pi", "e", "function name", "("];
const NAMES: &[&str] = &["sqrt", "sin", "cos", "tan", "exp", "ln", "pi", "x", "t", "e"];

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((i, tok));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || c == b'.' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            let value = parse_decimal(&src[start..i]).ok_or_else(|| SyntaxError {
                offset: start,
                expected: vec!["number"],
                found: format!("`{}`", &src[start..i]),
            })?;
            out.push((start, Tok::Num(value)));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let end = (i..bytes.len())
                .find(|&j| !bytes[j].is_ascii_alphabetic())
                .unwrap_or(bytes.len());
            // Split a run of letters greedily into known names ("sinx" = sin x).
            while i < end {
                let word = &src[i..end];
                let Some(name) = NAMES
                    .iter()
                    .filter(|n| word.starts_with(**n))
                    .max_by_key(|n| n.len())
                else {
                    return Err(SyntaxError {
                        offset: i,
                        expected: ATOM_START.to_vec(),
                        found: format!("`{word}`"),
                    });
                };
                let tok = match *name {
                    "x" | "t" => Tok::Var,
                    "pi" => Tok::Const(Constant::Pi),
                    "e" => Tok::Const(Constant::E),
                    other => Tok::Func(Func::from_name(other).expect("known name")),
                };
                out.push((i, tok));
                i += name.len();
            }
            continue;
        }
        let ch = src[i..].chars().next().unwrap_or('?');
        return Err(SyntaxError {
            offset: i,
            expected: ATOM_START.to_vec(),
            found: format!("`{ch}`"),
        });
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, expected: &[&'static str]) -> SyntaxError {
        SyntaxError {
            offset: self.offset(),
            expected: expected.to_vec(),
            found: self.peek().describe(),
        }
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = lhs + self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    lhs = lhs - self.term()?;
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = lhs * self.unary()?;
                }
                Tok::Slash => {
                    self.bump();
                    lhs = lhs / self.unary()?;
                }
                tok if tok.starts_atom() => {
                    lhs = lhs * self.power()?;
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, SyntaxError> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let exp = self.unary()?;
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek().clone() {
            Tok::Num(r) => {
                self.bump();
                Ok(Expr::Num(r))
            }
            Tok::Var => {
                self.bump();
                Ok(Expr::Var)
            }
            Tok::Const(c) => {
                self.bump();
                Ok(Expr::Const(c))
            }
            Tok::Func(f) => {
                self.bump();
                if !self.peek().starts_atom() {
                    return Err(self.error(ATOM_START));
                }
                // `ident "(" expr ")"` is the parenthesised case of `ident atom`.
                let arg = self.atom()?;
                Ok(Expr::apply(f, arg))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["+", "-", "*", "/", "^", ")"]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(ATOM_START)),
        }
    }
}

/// Parses a function body such as `"1/(4x)"` or `"sin x + x^2"`.
pub fn parse(text: &str) -> Result<Expr, SyntaxError> {
    let mut parser = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let e = parser.expr()?;
    if *parser.peek() != Tok::End {
        return Err(parser.error(&["+", "-", "*", "/", "^", "end of input"]));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Expr {
        Expr::Var
    }

    #[test]
    fn power_of_variable() {
        assert_eq!(parse("x^2").unwrap(), x().powi(2));
    }

    #[test]
    fn implicit_multiplication_in_denominator() {
        assert_eq!(parse("1/(4x)").unwrap(), Expr::num(1) / (Expr::num(4) * x()));
        assert_eq!(
            parse("2sin(x)").unwrap(),
            Expr::num(2) * Expr::apply(Func::Sin, x())
        );
    }

    #[test]
    fn truncated_input_reports_offset() {
        let err = parse("sin x + ").unwrap_err();
        assert_eq!(err.offset, 8);
        assert!(err.expected.contains(&"number"));
        assert_eq!(parse("x^^2").unwrap_err().offset, 2);
        assert_eq!(parse("(x + 1").unwrap_err().offset, 6);
        assert_eq!(parse("x $ 1").unwrap_err().offset, 2);
        assert_eq!(parse("foo(x)").unwrap_err().offset, 0);
        assert_eq!(parse("1.2.3").unwrap_err().offset, 0);
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(parse("-x^2").unwrap(), -(x().powi(2)));
        assert_eq!(
            parse("2^3^2").unwrap(),
            Expr::num(2).pow(Expr::num(3).pow(Expr::num(2)))
        );
        assert_eq!(parse("x - 1 - 2").unwrap(), (x() - Expr::num(1)) - Expr::num(2));
        assert_eq!(parse("x -1").unwrap(), x() - Expr::num(1));
        assert_eq!(parse("x^-2").unwrap(), x().pow(-Expr::num(2)));
        assert_eq!(parse("a").is_err(), true);
    }

    #[test]
    fn function_application_forms() {
        let sinx = Expr::apply(Func::Sin, x());
        assert_eq!(parse("sin x").unwrap(), sinx);
        assert_eq!(parse("sinx").unwrap(), sinx);
        // A bare argument is a single atom; `^` applies to the application.
        assert_eq!(parse("sin x^2").unwrap(), sinx.clone().powi(2));
        assert_eq!(parse("sin(x)^2").unwrap(), sinx.powi(2));
        assert_eq!(parse("exp x").unwrap(), Expr::apply(Func::Exp, x()));
        assert_eq!(parse("ex").unwrap(), Expr::Const(Constant::E) * x());
        assert!(parse("sin -x").is_err());
        assert!(parse("sqrt").is_err());
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse("0.1").unwrap(), Expr::ratio(1, 10));
        assert_eq!(parse("t").unwrap(), x());
    }
}
