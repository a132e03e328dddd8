//! Interned symbols and words.
//!
//! A symbol is an opaque token such as `a`, `B` or `<^{q0,a,q1,b,R}`; a
//! decorated marker is a single symbol, never a sequence of characters.
//! Tokens are interned process-wide so that words are cheap vectors of ids.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::Deref;
use std::sync::{OnceLock, RwLock};

use thiserror::Error;

#[derive(Default)]
struct Interner {
    ids: HashMap<&'static str, u32>,
    names: Vec<&'static str>,
}

fn interner() -> &'static RwLock<Interner> {
    static INTERNER: OnceLock<RwLock<Interner>> = OnceLock::new();
    INTERNER.get_or_init(Default::default)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymbolError {
    #[error("empty symbol token")]
    Empty,
    #[error("symbol token {0:?} contains whitespace")]
    Whitespace(String),
}

/// An interned alphabet symbol. Equality is token equality.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(u32);

impl Symbol {
    /// Interns `token` after checking it is a legal token.
    pub fn try_new(token: &str) -> Result<Self, SymbolError> {
        if token.is_empty() {
            return Err(SymbolError::Empty);
        }
        if token.chars().any(char::is_whitespace) {
            return Err(SymbolError::Whitespace(token.to_string()));
        }
        Ok(Self::intern(token))
    }

    /// Interns `token`. Panics on an illegal token; use [`Symbol::try_new`]
    /// for untrusted input.
    pub fn new(token: &str) -> Self {
        Self::try_new(token).expect("invalid symbol token")
    }

    fn intern(token: &str) -> Self {
        if let Some(&id) = interner().read().unwrap().ids.get(token) {
            return Symbol(id);
        }
        let mut table = interner().write().unwrap();
        if let Some(&id) = table.ids.get(token) {
            return Symbol(id);
        }
        let leaked: &'static str = Box::leak(token.to_owned().into_boxed_str());
        let id = table.names.len() as u32;
        table.names.push(leaked);
        table.ids.insert(leaked, id);
        Symbol(id)
    }

    pub fn as_str(self) -> &'static str {
        interner().read().unwrap().names[self.0 as usize]
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.as_str())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl From<&str> for Symbol {
    fn from(token: &str) -> Self {
        Symbol::new(token)
    }
}

pub type SymbolSet = BTreeSet<Symbol>;

/// Builds a symbol set from whitespace-separated tokens.
pub fn symbols(tokens: &str) -> SymbolSet {
    tokens.split_whitespace().map(Symbol::new).collect()
}

/// Sorts symbols by their token text, which is the canonical external order.
pub fn sorted_by_token<'a>(syms: impl IntoIterator<Item = &'a Symbol>) -> Vec<Symbol> {
    let mut out: Vec<Symbol> = syms.into_iter().copied().collect();
    out.sort_by(|a, b| a.as_str().cmp(b.as_str()));
    out
}

/// A finite sequence of symbols; the empty word is λ.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    /// Whitespace-separated tokens; `~` or an empty string denotes λ.
    pub fn parse_tokens(text: &str) -> Result<Self, SymbolError> {
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "~" {
            return Ok(Word::empty());
        }
        trimmed
            .split_whitespace()
            .map(Symbol::try_new)
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    /// One symbol per (non-whitespace) character.
    pub fn from_chars(text: &str) -> Self {
        let mut buf = [0u8; 4];
        Word(
            text.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| Symbol::new(c.encode_utf8(&mut buf)))
                .collect(),
        )
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    pub fn concat(parts: &[&[Symbol]]) -> Self {
        let len = parts.iter().map(|p| p.len()).sum();
        let mut out = Vec::with_capacity(len);
        for p in parts {
            out.extend_from_slice(p);
        }
        Word(out)
    }

    /// Token texts, used by the file formats.
    pub fn tokens(&self) -> Vec<&'static str> {
        self.0.iter().map(|s| s.as_str()).collect()
    }

    /// Compares by token text rather than interning order.
    pub fn cmp_tokens(&self, other: &Word) -> std::cmp::Ordering {
        self.0
            .iter()
            .map(|s| s.as_str())
            .cmp(other.0.iter().map(|s| s.as_str()))
    }
}

impl Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

impl From<&[Symbol]> for Word {
    fn from(v: &[Symbol]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("λ");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(s.as_str())?;
        }
        Ok(())
    }
}

/// Shorthand used throughout the tests: `w("a b c")`.
pub fn w(tokens: &str) -> Word {
    Word::parse_tokens(tokens).expect("invalid word literal")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_stable() {
        let a = Symbol::new("<^{q0,a,q1,b,R}");
        let b = Symbol::new("<^{q0,a,q1,b,R}");
        assert_eq!(a, b);
        assert_eq!(a.as_str(), "<^{q0,a,q1,b,R}");
    }

    #[test]
    fn rejects_bad_tokens() {
        assert_eq!(Symbol::try_new(""), Err(SymbolError::Empty));
        assert!(matches!(Symbol::try_new("a b"), Err(SymbolError::Whitespace(_))));
    }

    #[test]
    fn word_parsing() {
        assert_eq!(w("~"), Word::empty());
        assert_eq!(w(""), Word::empty());
        assert_eq!(w("a  b").len(), 2);
        assert_eq!(Word::from_chars("ab"), w("a b"));
        assert_eq!(w("a b").to_string(), "a b");
        assert_eq!(Word::empty().to_string(), "λ");
    }
}
