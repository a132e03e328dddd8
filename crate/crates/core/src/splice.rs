//! Splicing rules and the one-step splicing operation.
//!
//! A rule `[(u1,u2);(v1,v2)]` cuts `x` between `u1` and `u2` and `y` between
//! `v1` and `v2`, and yields the single product `x1 u1 v2 y2`.

use std::collections::BTreeSet;
use std::fmt;

use crate::symbol::{Symbol, SymbolSet, Word};

pub type WordSet = BTreeSet<Word>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplicingRule {
    pub u1: Word,
    pub u2: Word,
    pub v1: Word,
    pub v2: Word,
}

impl SplicingRule {
    pub fn new(u1: Word, u2: Word, v1: Word, v2: Word) -> Self {
        SplicingRule { u1, u2, v1, v2 }
    }

    /// The site `u1 u2` searched in the first word.
    pub fn left_site(&self) -> Word {
        Word::concat(&[&self.u1, &self.u2])
    }

    /// The site `v1 v2` searched in the second word.
    pub fn right_site(&self) -> Word {
        Word::concat(&[&self.v1, &self.v2])
    }

    pub fn components(&self) -> [&Word; 4] {
        [&self.u1, &self.u2, &self.v1, &self.v2]
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.components().into_iter().flat_map(|c| c.iter().copied())
    }
}

impl fmt::Debug for SplicingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SplicingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[({},{});({},{})]", self.u1, self.u2, self.v1, self.v2)
    }
}

/// The set of distinct symbols of `w`; `alph(λ) = ∅`.
pub fn alph(w: &[Symbol]) -> SymbolSet {
    w.iter().copied().collect()
}

/// Every start index of `needle` in `hay`, overlapping ones included. An
/// empty needle occurs at all `hay.len() + 1` positions.
fn occurrences(hay: &[Symbol], needle: &[Symbol]) -> Vec<usize> {
    if needle.len() > hay.len() {
        return Vec::new();
    }
    (0..=hay.len() - needle.len())
        .filter(|&i| hay[i..i + needle.len()] == *needle)
        .collect()
}

/// Streams every product of `rule` over the ordered pairs `xs × ys` into
/// `emit`. Stops at the first error returned by `emit`.
pub(crate) fn splice_products<'a, E>(
    rule: &SplicingRule,
    xs: impl IntoIterator<Item = &'a Word>,
    ys: impl IntoIterator<Item = &'a Word> + Clone,
    emit: &mut impl FnMut(Word) -> Result<(), E>,
) -> Result<(), E> {
    let left = rule.left_site();
    let right = rule.right_site();
    // cut points in each y: the suffix kept starts after v1
    let mut y_cuts: Vec<(&Word, Vec<usize>)> = Vec::new();
    for y in ys {
        let occ = occurrences(y, &right);
        if !occ.is_empty() {
            y_cuts.push((y, occ.into_iter().map(|j| j + rule.v1.len()).collect()));
        }
    }
    if y_cuts.is_empty() {
        return Ok(());
    }
    for x in xs {
        for i in occurrences(x, &left) {
            let prefix = &x[..i + rule.u1.len()];
            for (y, cuts) in &y_cuts {
                for &j in cuts {
                    emit(Word::concat(&[prefix, &y[j..]]))?;
                }
            }
        }
    }
    Ok(())
}

/// All `z` with `(x, y) ⊢_r z`.
pub fn splice_pair(rule: &SplicingRule, x: &Word, y: &Word) -> WordSet {
    let mut out = WordSet::new();
    let _ = splice_products::<()>(rule, [x], [y], &mut |z| {
        out.insert(z);
        Ok(())
    });
    out
}

/// `σ_R(L)`: products of every rule over every ordered pair of `L`, a word
/// paired with itself included. `L` itself is not part of the result.
pub fn sigma<'r>(rules: impl IntoIterator<Item = &'r SplicingRule>, lang: &WordSet) -> WordSet {
    let mut out = WordSet::new();
    for rule in rules {
        let _ = splice_products::<()>(rule, lang, lang, &mut |z| {
            out.insert(z);
            Ok(())
        });
    }
    out
}
