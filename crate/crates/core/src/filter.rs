//! Random-context filters.

use std::fmt;
use std::str::FromStr;

use crate::splice::WordSet;
use crate::symbol::{Symbol, SymbolSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FilterMode {
    /// every permitting symbol present, no forbidding symbol
    Strong,
    /// some permitting symbol present, no forbidding symbol
    Weak,
}

impl fmt::Display for FilterMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FilterMode::Strong => "s",
            FilterMode::Weak => "w",
        })
    }
}

impl FromStr for FilterMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "s" | "strong" => Ok(FilterMode::Strong),
            "w" | "weak" => Ok(FilterMode::Weak),
            other => Err(format!("unknown filter mode {other:?} (expected s or w)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Filter {
    pub permit: SymbolSet,
    pub forbid: SymbolSet,
    pub mode: FilterMode,
}

impl Filter {
    pub fn new(permit: SymbolSet, forbid: SymbolSet, mode: FilterMode) -> Self {
        Filter { permit, forbid, mode }
    }

    pub fn strong(permit: SymbolSet, forbid: SymbolSet) -> Self {
        Self::new(permit, forbid, FilterMode::Strong)
    }

    pub fn weak(permit: SymbolSet, forbid: SymbolSet) -> Self {
        Self::new(permit, forbid, FilterMode::Weak)
    }

    /// Symbols declared both permitting and forbidding.
    pub fn overlap(&self) -> SymbolSet {
        self.permit.intersection(&self.forbid).copied().collect()
    }

    pub fn passes(&self, z: &[Symbol]) -> bool {
        passes(z, self)
    }
}

/// The filter predicate, evaluated literally. With `P = ∅` strong mode only
/// checks `F` and weak mode rejects every word.
pub fn passes(z: &[Symbol], f: &Filter) -> bool {
    if z.iter().any(|s| f.forbid.contains(s)) {
        return false;
    }
    match f.mode {
        FilterMode::Strong => f.permit.iter().all(|p| z.contains(p)),
        FilterMode::Weak => z.iter().any(|s| f.permit.contains(s)),
    }
}

/// The members of `lang` that pass `f`.
pub fn filter_set(lang: &WordSet, f: &Filter) -> WordSet {
    lang.iter().filter(|z| passes(z, f)).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::{symbols, w};

    fn f(p: &str, fb: &str, mode: FilterMode) -> Filter {
        Filter::new(symbols(p), symbols(fb), mode)
    }

    #[test]
    fn predicate_examples() {
        let strong = f("a b", "d", FilterMode::Strong);
        let weak = f("a b", "d", FilterMode::Weak);
        assert!(passes(&w("a b c"), &strong));
        assert!(!passes(&w("a c"), &strong));
        assert!(passes(&w("a c"), &weak));
        assert!(!passes(&w("a d"), &weak));
    }

    #[test]
    fn empty_word_and_empty_permit() {
        assert!(passes(&w("~"), &f("", "d", FilterMode::Strong)));
        assert!(!passes(&w("~"), &f("", "d", FilterMode::Weak)));
    }

    #[test]
    fn filter_set_examples() {
        let lang: WordSet = ["a b c", "a c", "a d"].iter().map(|s| w(s)).collect();
        let strong = filter_set(&lang, &f("a b", "d", FilterMode::Strong));
        assert_eq!(strong, [w("a b c")].into_iter().collect());
        let weak = filter_set(&lang, &f("a b", "d", FilterMode::Weak));
        assert_eq!(weak, [w("a b c"), w("a c")].into_iter().collect());
        assert!(filter_set(&WordSet::new(), &f("a b", "d", FilterMode::Weak)).is_empty());
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("s".parse::<FilterMode>().unwrap(), FilterMode::Strong);
        assert_eq!("weak".parse::<FilterMode>().unwrap(), FilterMode::Weak);
        assert!("x".parse::<FilterMode>().is_err());
    }
}
