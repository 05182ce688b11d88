use num_bigint::BigInt;

use super::{ParseError, ParseErrorKind, SourceSpan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Num(BigInt),
    Z,
    /// `f` differentiated `order` times.
    F(u32),
    Exp,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eq,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Num(n) => format!("number {n}"),
            Tok::Z => "'z'".into(),
            Tok::F(_) => "f".into(),
            Tok::Exp => "'exp'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Eq => "'='".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let (mut line, mut line_start) = (1, 0);
    let span = |s: usize, e: usize, line: usize, line_start: usize| SourceSpan {
        start: s,
        end: e,
        line,
        col: src[line_start..s].chars().count() + 1,
    };
    while i < bytes.len() {
        let c = bytes[i];
        if c == b'\n' {
            i += 1;
            line += 1;
            line_start = i;
            continue;
        }
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok =
            match c {
                b'0'..=b'9' => {
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    Tok::Num(src[start..i].parse().expect("digits"))
                }
                b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                    while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                        i += 1;
                    }
                    match &src[start..i] {
                        "z" => Tok::Z,
                        "exp" => Tok::Exp,
                        "f" => Tok::F(f_order(src, &mut i).map_err(|e| {
                            ParseError::new(ParseErrorKind::Syntax, span(start, i, line, line_start), e)
                        })?),
                        word => {
                            return Err(ParseError::new(
                                ParseErrorKind::Syntax,
                                span(start, i, line, line_start),
                                format!("unknown name '{word}'"),
                            ))
                        }
                    }
                }
                _ => {
                    i += 1;
                    match c {
                        b'+' => Tok::Plus,
                        b'-' => Tok::Minus,
                        b'*' => Tok::Star,
                        b'/' => Tok::Slash,
                        b'^' => Tok::Caret,
                        b'(' => Tok::LParen,
                        b')' => Tok::RParen,
                        b'=' => Tok::Eq,
                        _ => {
                            let ch = src[start..].chars().next().expect("in bounds");
                            let end = start + ch.len_utf8();
                            return Err(ParseError::new(
                                ParseErrorKind::Syntax,
                                span(start, end, line, line_start),
                                format!("unexpected character '{ch}'"),
                            ));
                        }
                    }
                }
            };
        out.push(Token { tok, span: span(start, i, line, line_start) });
    }
    out.push(Token { tok: Tok::Eof, span: span(bytes.len(), bytes.len(), line, line_start) });
    Ok(out)
}

/// Reads the primes or `^(k)` after an `f`, advancing `i`.
fn f_order(src: &str, i: &mut usize) -> Result<u32, String> {
    let b = src.as_bytes();
    if b.get(*i) == Some(&b'\'') {
        let mut k = 0;
        while b.get(*i) == Some(&b'\'') {
            k += 1;
            *i += 1;
        }
        return Ok(k);
    }
    if src[*i..].starts_with("^(") {
        let digits_start = *i + 2;
        let mut j = digits_start;
        while j < b.len() && b[j].is_ascii_digit() {
            j += 1;
        }
        if j > digits_start && b.get(j) == Some(&b')') {
            let k = src[digits_start..j].parse().map_err(|_| "derivative order too large".to_string())?;
            *i = j + 1;
            return Ok(k);
        }
        return Err("expected a derivative order like f^(3)".into());
    }
    Ok(0)
}
