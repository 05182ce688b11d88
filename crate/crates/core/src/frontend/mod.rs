//! Text syntax for equations and candidate functions.
//!
//! ```text
//! equation := expr "=" expr
//! expr     := ["+"|"-"] term (("+"|"-") term)*
//! term     := unary (("*"|"/") unary | unary)*     implicit "*" only after a number
//! unary    := "-" unary | power
//! power    := atom ("^" uint)?
//! atom     := uint | "z" | fvar | "exp" "(" expr ")" | "(" expr ")"
//! fvar     := "f" "'"* | "f^(" uint ")"
//! ```
//!
//! On the left side, the largest pure power of `f` is `f^n`. A term written
//! as constants times powers of `f` totalling `n-2` and ending in `f'` is the
//! `a`-term. Everything else goes to `P_d`.

mod lexer;
mod parser;
mod printer;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use parser::{parse_equation, parse_function};
pub use printer::{print_equation, print_function};

/// Byte range plus 1-based line and column of its start.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub col: usize,
}

impl SourceSpan {
    /// Smallest span covering both.
    pub fn join(self, other: Self) -> Self {
        let first = if self.start <= other.start { self } else { other };
        Self { end: self.end.max(other.end), ..first }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ParseErrorKind {
    Syntax,
    Shape,
    NonPolynomialExponent,
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[error("{} at {span}: {message}", kind_name(*.kind))]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub message: String,
    pub span: SourceSpan,
}

fn kind_name(k: ParseErrorKind) -> &'static str {
    match k {
        ParseErrorKind::Syntax => "syntax error",
        ParseErrorKind::Shape => "shape error",
        ParseErrorKind::NonPolynomialExponent => "non-polynomial exponent",
    }
}

impl ParseError {
    pub(crate) fn new(kind: ParseErrorKind, span: SourceSpan, message: impl Into<String>) -> Self {
        Self { kind, message: message.into(), span }
    }

    /// The offending line with a caret marker under the span.
    pub fn render(&self, source: &str) -> String {
        let line = source.lines().nth(self.span.line - 1).unwrap_or("");
        let width = (self.span.end - self.span.start).max(1);
        format!("{self}\n  {line}\n  {}{}", " ".repeat(self.span.col - 1), "^".repeat(width))
    }
}
