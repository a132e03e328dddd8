//! The machine file.
//!
//! ```text
//! states q0 q1 acc
//! input-alphabet a b
//! tape-alphabet a b B
//! blank B
//! initial q0
//! accepting acc
//! trans q0 a -> q1 b R
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::lex::{lines, Cursor, Tok};
use super::{quote_token, ParseError};
use crate::symbol::{sorted_by_token, Symbol, SymbolSet};
use crate::tm::{MachineError, Move, State, Transition, TuringMachine};

pub fn parse_machine(text: &str) -> Result<TuringMachine, ParseError> {
    let mut states: Option<BTreeSet<State>> = None;
    let mut input: Option<SymbolSet> = None;
    let mut tape: Option<SymbolSet> = None;
    let mut blank: Option<Symbol> = None;
    let mut initial: Option<State> = None;
    let mut accepting: Option<BTreeSet<State>> = None;
    let mut transitions: Vec<(usize, Transition)> = Vec::new();
    let mut lines_of = [0usize; 6];

    fn set<T>(slot: &mut Option<T>, v: T, cur: &Cursor, what: &str) -> Result<(), ParseError> {
        if slot.is_some() {
            return Err(cur.err(format!("duplicate `{what}` line")));
        }
        *slot = Some(v);
        Ok(())
    }

    for (no, toks) in lines(text)? {
        let mut cur = Cursor::new(no, &toks);
        let Some(Tok::Bare(keyword)) = cur.next() else {
            return Err(cur.err("expected a section keyword"));
        };
        match keyword.as_str() {
            "states" => {
                lines_of[0] = no;
                let v = cur.rest_symbols()?.into_iter().map(State).collect();
                set(&mut states, v, &cur, keyword)?;
            }
            "input-alphabet" => {
                lines_of[1] = no;
                let v = cur.rest_symbols()?.into_iter().collect();
                set(&mut input, v, &cur, keyword)?;
            }
            "tape-alphabet" => {
                lines_of[2] = no;
                let v = cur.rest_symbols()?.into_iter().collect();
                set(&mut tape, v, &cur, keyword)?;
            }
            "blank" => {
                lines_of[3] = no;
                let b = cur.symbol("blank symbol")?;
                cur.end()?;
                set(&mut blank, b, &cur, keyword)?;
            }
            "initial" => {
                lines_of[4] = no;
                let q = State(cur.symbol("initial state")?);
                cur.end()?;
                set(&mut initial, q, &cur, keyword)?;
            }
            "accepting" => {
                lines_of[5] = no;
                let v = cur.rest_symbols()?.into_iter().map(State).collect();
                set(&mut accepting, v, &cur, keyword)?;
            }
            "trans" => {
                let q = cur.symbol("state")?;
                let a = cur.symbol("read symbol")?;
                if cur.token("`->`")? != "->" {
                    return Err(cur.err("expected `->`"));
                }
                let s = cur.symbol("next state")?;
                let b = cur.symbol("written symbol")?;
                let dir = match cur.token("R or L")? {
                    "R" => Move::Right,
                    "L" => Move::Left,
                    other => return Err(cur.err(format!("bad direction {other:?} (expected R or L)"))),
                };
                cur.end()?;
                let t = Transition { state: State(q), read: a, next: State(s), write: b, dir };
                transitions.push((no, t));
            }
            other => return Err(cur.err(format!("unknown section {other:?}"))),
        }
    }

    let end = text.lines().count().max(1);
    let missing = |what: &str| ParseError::new(end, format!("missing `{what}` line"));
    let m = TuringMachine {
        states: states.ok_or_else(|| missing("states"))?,
        input_alphabet: input.ok_or_else(|| missing("input-alphabet"))?,
        tape_alphabet: tape.ok_or_else(|| missing("tape-alphabet"))?,
        blank: blank.ok_or_else(|| missing("blank"))?,
        initial: initial.ok_or_else(|| missing("initial"))?,
        accepting: accepting.unwrap_or_default(),
        transitions: transitions.iter().map(|(_, t)| *t).collect(),
    };
    m.validate().map_err(|e| {
        let line = match &e {
            MachineError::BlankInInput(_) | MachineError::InputNotOnTape(_) => lines_of[1],
            MachineError::BlankNotOnTape(_) => lines_of[3],
            MachineError::UnknownState(q) => transitions
                .iter()
                .find(|(_, t)| t.state == *q || t.next == *q)
                .map(|(no, _)| *no)
                .unwrap_or(lines_of[4].max(lines_of[5])),
            MachineError::UnknownTapeSymbol(s) => transitions
                .iter()
                .find(|(_, t)| t.read == *s || t.write == *s)
                .map(|(no, _)| *no)
                .unwrap_or(end),
            MachineError::DuplicateTransition(t) => transitions
                .iter()
                .filter(|(_, u)| u == t)
                .nth(1)
                .map(|(no, _)| *no)
                .unwrap_or(end),
            MachineError::SymbolOutsideInput(_) => end,
        };
        ParseError::new(line, e.to_string())
    })?;
    Ok(m)
}

fn names<'a>(syms: impl IntoIterator<Item = &'a Symbol>) -> String {
    sorted_by_token(syms).into_iter().map(|s| format!(" {}", quote_token(s.as_str()))).collect()
}

/// Canonical text; transitions keep their declaration order.
pub fn emit_machine(m: &TuringMachine) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "states{}", names(m.states.iter().map(|q| &q.0)));
    let _ = writeln!(out, "input-alphabet{}", names(&m.input_alphabet));
    let _ = writeln!(out, "tape-alphabet{}", names(&m.tape_alphabet));
    let _ = writeln!(out, "blank {}", quote_token(m.blank.as_str()));
    let _ = writeln!(out, "initial {}", quote_token(m.initial.as_str()));
    let _ = writeln!(out, "accepting{}", names(m.accepting.iter().map(|q| &q.0)));
    for t in &m.transitions {
        let _ = writeln!(
            out,
            "trans {} {} -> {} {} {}",
            quote_token(t.state.as_str()),
            quote_token(t.read.as_str()),
            quote_token(t.next.as_str()),
            quote_token(t.write.as_str()),
            t.dir
        );
    }
    out
}
