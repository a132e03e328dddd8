//! Nondeterministic single-tape Turing machines and a breadth-first
//! reference simulator.
//!
//! The tape is infinite to the right only: moving right past the last cell
//! appends a blank, moving left from cell 0 kills the branch. A machine
//! accepts as soon as some branch is in an accepting state.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use crate::symbol::{Symbol, SymbolSet, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    Left,
    Right,
}

impl Move {
    pub fn letter(self) -> char {
        match self {
            Move::Left => 'L',
            Move::Right => 'R',
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A machine state name.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State(pub Symbol);

impl State {
    pub fn new(name: &str) -> Self {
        State(Symbol::new(name))
    }

    pub fn as_str(self) -> &'static str {
        self.0.as_str()
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `(q, a, s, b, D)`: in state `q` reading `a`, write `b`, enter `s`, move `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub state: State,
    pub read: Symbol,
    pub next: State,
    pub write: Symbol,
    pub dir: Move,
}

impl Transition {
    pub fn new(state: &str, read: &str, next: &str, write: &str, dir: Move) -> Self {
        Transition {
            state: State::new(state),
            read: Symbol::new(read),
            next: State::new(next),
            write: Symbol::new(write),
            dir,
        }
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{},{})", self.state, self.read, self.next, self.write, self.dir)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuringMachine {
    pub states: BTreeSet<State>,
    pub input_alphabet: SymbolSet,
    pub tape_alphabet: SymbolSet,
    pub blank: Symbol,
    pub initial: State,
    pub accepting: BTreeSet<State>,
    /// Declaration order; duplicates are not allowed.
    pub transitions: Vec<Transition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MachineError {
    #[error("blank {0} must not be an input symbol")]
    BlankInInput(Symbol),
    #[error("blank {0} is not a tape symbol")]
    BlankNotOnTape(Symbol),
    #[error("input symbol {0} is not a tape symbol")]
    InputNotOnTape(Symbol),
    #[error("state {0} is not declared")]
    UnknownState(State),
    #[error("tape symbol {0} is not declared")]
    UnknownTapeSymbol(Symbol),
    #[error("duplicate transition {0}")]
    DuplicateTransition(Transition),
    #[error("input symbol {0} is not in the input alphabet")]
    SymbolOutsideInput(Symbol),
}

impl TuringMachine {
    pub fn validate(&self) -> Result<(), MachineError> {
        if self.input_alphabet.contains(&self.blank) {
            return Err(MachineError::BlankInInput(self.blank));
        }
        if !self.tape_alphabet.contains(&self.blank) {
            return Err(MachineError::BlankNotOnTape(self.blank));
        }
        if let Some(&s) = self.input_alphabet.iter().find(|s| !self.tape_alphabet.contains(s)) {
            return Err(MachineError::InputNotOnTape(s));
        }
        let known = |q: &State| self.states.contains(q);
        if let Some(&q) = std::iter::once(&self.initial)
            .chain(&self.accepting)
            .find(|q| !known(q))
        {
            return Err(MachineError::UnknownState(q));
        }
        let mut seen = HashSet::new();
        for t in &self.transitions {
            for q in [t.state, t.next] {
                if !known(&q) {
                    return Err(MachineError::UnknownState(q));
                }
            }
            for s in [t.read, t.write] {
                if !self.tape_alphabet.contains(&s) {
                    return Err(MachineError::UnknownTapeSymbol(s));
                }
            }
            if !seen.insert(*t) {
                return Err(MachineError::DuplicateTransition(*t));
            }
        }
        Ok(())
    }

    pub fn initial_configuration(&self, input: &Word) -> Result<TmConfiguration, MachineError> {
        if let Some(&s) = input.iter().find(|s| !self.input_alphabet.contains(s)) {
            return Err(MachineError::SymbolOutsideInput(s));
        }
        let tape = if input.is_empty() { vec![self.blank] } else { input.to_vec() };
        Ok(TmConfiguration { tape, head: 0, state: self.initial })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TmConfiguration {
    pub tape: Vec<Symbol>,
    pub head: usize,
    pub state: State,
}

/// One successor per applicable transition.
pub fn tm_successors(m: &TuringMachine, c: &TmConfiguration) -> Vec<TmConfiguration> {
    let read = c.tape[c.head];
    m.transitions
        .iter()
        .filter(|t| t.state == c.state && t.read == read)
        .filter_map(|t| {
            let mut tape = c.tape.clone();
            tape[c.head] = t.write;
            let head = match t.dir {
                Move::Left => c.head.checked_sub(1)?,
                Move::Right => {
                    if c.head + 1 == tape.len() {
                        tape.push(m.blank);
                    }
                    c.head + 1
                }
            };
            Some(TmConfiguration { tape, head, state: t.next })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TmVerdict {
    /// Minimal depth of an accepting configuration.
    Accept { depth: usize },
    /// The frontier became empty at `depth`.
    Reject { depth: usize },
    BoundExceeded,
}

impl TmVerdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, TmVerdict::Accept { .. })
    }
}

impl fmt::Display for TmVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TmVerdict::Accept { depth } => write!(f, "accept depth={depth}"),
            TmVerdict::Reject { depth } => write!(f, "reject depth={depth}"),
            TmVerdict::BoundExceeded => f.write_str("bound-exceeded"),
        }
    }
}

/// Breadth-first search over configuration sets. Configurations already
/// explored at a smaller depth are not expanded again.
pub fn tm_run(m: &TuringMachine, input: &Word, step_bound: usize) -> Result<TmVerdict, MachineError> {
    let start = m.initial_configuration(input)?;
    let mut visited: HashSet<TmConfiguration> = HashSet::from([start.clone()]);
    let mut frontier = vec![start];
    let mut depth = 0;
    loop {
        if frontier.iter().any(|c| m.accepting.contains(&c.state)) {
            return Ok(TmVerdict::Accept { depth });
        }
        if depth == step_bound {
            return Ok(TmVerdict::BoundExceeded);
        }
        let mut next = Vec::new();
        for c in &frontier {
            for s in tm_successors(m, c) {
                if visited.insert(s.clone()) {
                    next.push(s);
                }
            }
        }
        depth += 1;
        if next.is_empty() {
            return Ok(TmVerdict::Reject { depth });
        }
        frontier = next;
    }
}
