//! Line lexer shared by the network and machine formats.
//!
//! A line is a sequence of bare tokens, quoted tokens and the punctuation
//! `( ) , ;`. Lines whose first non-blank character is `#` are comments.

use super::ParseError;
use crate::symbol::{Symbol, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Bare(String),
    Quoted(String),
    Open,
    Close,
    Comma,
    Semi,
}

impl Tok {
    pub(crate) fn text(&self) -> Option<&str> {
        match self {
            Tok::Bare(s) | Tok::Quoted(s) => Some(s),
            _ => None,
        }
    }

    pub(crate) fn is_lambda(&self) -> bool {
        matches!(self, Tok::Bare(s) if s == "~")
    }
}

/// Non-comment, non-blank lines with their 1-based numbers.
pub(crate) fn lines(text: &str) -> Result<Vec<(usize, Vec<Tok>)>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        out.push((i + 1, lex_line(raw, i + 1)?));
    }
    Ok(out)
}

fn lex_line(line: &str, no: usize) -> Result<Vec<Tok>, ParseError> {
    let mut toks = Vec::new();
    let mut chars = line.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' | ')' | ',' | ';' => {
                chars.next();
                toks.push(match c {
                    '(' => Tok::Open,
                    ')' => Tok::Close,
                    ',' => Tok::Comma,
                    _ => Tok::Semi,
                });
            }
            '"' => {
                chars.next();
                let mut s = String::new();
                loop {
                    match chars.next() {
                        None => return Err(ParseError::new(no, "unterminated quoted token")),
                        Some('"') => break,
                        Some('\\') => match chars.next() {
                            Some(e @ ('"' | '\\')) => s.push(e),
                            _ => return Err(ParseError::new(no, "bad escape in quoted token")),
                        },
                        Some(c) => s.push(c),
                    }
                }
                if s.is_empty() || s.chars().any(char::is_whitespace) {
                    return Err(ParseError::new(no, format!("illegal token {s:?}")));
                }
                toks.push(Tok::Quoted(s));
            }
            _ => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || matches!(c, '(' | ')' | ',' | ';' | '"') {
                        break;
                    }
                    s.push(c);
                    chars.next();
                }
                toks.push(Tok::Bare(s));
            }
        }
    }
    Ok(toks)
}

/// Cursor over one line's tokens.
pub(crate) struct Cursor<'a> {
    pub line: usize,
    toks: &'a [Tok],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(line: usize, toks: &'a [Tok]) -> Self {
        Cursor { line, toks, pos: 0 }
    }

    pub(crate) fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, msg)
    }

    pub(crate) fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos)
    }

    pub(crate) fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub(crate) fn next(&mut self) -> Option<&'a Tok> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    pub(crate) fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        match self.next() {
            Some(t) if *t == want => Ok(()),
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    pub(crate) fn token(&mut self, what: &str) -> Result<&'a str, ParseError> {
        match self.next().and_then(Tok::text) {
            Some(s) => Ok(s),
            None => Err(self.err(format!("expected {what}"))),
        }
    }

    pub(crate) fn symbol(&mut self, what: &str) -> Result<Symbol, ParseError> {
        let t = self.next();
        match t {
            Some(t) if t.is_lambda() => Err(self.err(format!("expected {what}, found ~"))),
            Some(Tok::Bare(s)) | Some(Tok::Quoted(s)) => Ok(Symbol::new(s)),
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    pub(crate) fn end(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing tokens"))
        }
    }

    /// Symbols up to the end of the line.
    pub(crate) fn rest_symbols(&mut self) -> Result<Vec<Symbol>, ParseError> {
        let mut out = Vec::new();
        while !self.at_end() {
            out.push(self.symbol("a symbol")?);
        }
        Ok(out)
    }

    /// A word up to the next punctuation or end of line: `~` alone is λ.
    pub(crate) fn word(&mut self) -> Result<Word, ParseError> {
        if matches!(self.peek(), Some(t) if t.is_lambda()) {
            self.next();
            return Ok(Word::empty());
        }
        let mut out = Vec::new();
        while let Some(t) = self.peek() {
            if t.text().is_none() {
                break;
            }
            if t.is_lambda() {
                return Err(self.err("~ must stand alone"));
            }
            out.push(self.symbol("a symbol")?);
        }
        if out.is_empty() {
            return Err(self.err("expected a word (use ~ for the empty word)"));
        }
        Ok(Word::new(out))
    }
}
