//! Compiles a nondeterministic Turing machine into a network of uniform
//! splicing processors using a rotate-and-simulate encoding.
//!
//! # Encoding
//!
//! A machine configuration is a circular word
//!
//! ```text
//! <^{q} h ... $ ... >'      head on the first body symbol
//! <'^{q} ... $ ... h >''    head on the last body symbol
//! ```
//!
//! Read circularly, the body is the tape with `$` sitting between the last
//! and the first cell. `$` under a left-end head is the blank cell just past
//! the end of the tape. A left move whose new head cell would be `$` has
//! fallen off cell 0; its rules require a tape symbol there, so that branch
//! dies. Every move only ever carries the written
//! symbol from one end to the other, so each end is edited by one splice.
//!
//! # Nodes
//!
//! * `In` turns `<w>` into `<^{q0} w B $ >'` in two splicing steps.
//! * `Sim` copies the word once per transition leaving the current state and
//!   swaps the state marker for a transition marker.
//! * `T<i>.head` checks the read symbol and writes at the head end;
//!   `T<i>.tail` edits the opposite end. Each leaves a dirty marker at the end
//!   it edited.
//! * `Res` cleans both dirty markers in two splicing steps, producing either
//!   a fresh state marker (back to `Sim`) or the accept marker (to `Halt`).
//!
//! Every rule has an axiom-only glue symbol on one side, so axioms never
//! splice with each other and stored words never splice with each other.
//! Copies with a wrong guess match no rule and disappear at the next splicing
//! step; the network relies on the literal splicing semantics for that.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::filter::Filter;
use crate::network::{InputError, Network, NodeId, Persistence, UniformProcessor};
use crate::splice::SplicingRule;
use crate::symbol::{sorted_by_token, Symbol, SymbolSet, Word};
use crate::tm::{MachineError, Move, State, Transition, TuringMachine};

/// Half-steps per simulated machine move (Sim, head, tail, Res twice; each a
/// splice plus a communication).
pub const STEPS_PER_MOVE: usize = 10;
/// Upper bound on the fixed part of `Time(w)`: bootstrap in `In`, the
/// acceptance hop, and the direct accept path for an accepting start state.
pub const STEP_OVERHEAD: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeRole {
    Input,
    Sim,
    Res,
    Halt,
    /// First node of the pair for transition `i`.
    TransitionHead(usize),
    /// Second node of the pair for transition `i`.
    TransitionTail(usize),
}

impl fmt::Display for NodeRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeRole::Input => f.write_str("In"),
            NodeRole::Sim => f.write_str("Sim"),
            NodeRole::Res => f.write_str("Res"),
            NodeRole::Halt => f.write_str("Halt"),
            NodeRole::TransitionHead(i) => write!(f, "transition {i} head"),
            NodeRole::TransitionTail(i) => write!(f, "transition {i} tail"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("machine has no transitions")]
    NoTransitions,
    #[error(transparent)]
    InvalidMachine(#[from] MachineError),
    #[error("generated symbol {token} ({meaning}) collides with {other}")]
    NameCollision { token: String, meaning: String, other: String },
}

#[derive(Debug, Clone)]
pub struct CompiledNetwork {
    pub network: Network,
    pub machine: TuringMachine,
    /// Meaning of every generated symbol.
    pub symbol_legend: BTreeMap<Symbol, String>,
    /// Parallel to `network.nodes`.
    pub node_roles: Vec<NodeRole>,
    /// Left-end markers; every word of a run carries exactly one.
    pub phase_markers: SymbolSet,
    /// Right-end markers; every word of a run carries exactly one.
    pub end_markers: SymbolSet,
    pub separator: Symbol,
    pub accept_marker: Symbol,
}

impl CompiledNetwork {
    pub fn persistence(&self) -> Persistence {
        self.network.persistence
    }

    pub fn node_of(&self, role: NodeRole) -> Option<NodeId> {
        self.node_roles.iter().position(|r| *r == role)
    }

    /// `c1, c0` such that an input accepted at machine depth `d` is accepted
    /// by the network within `c1·d + c0` steps.
    pub fn nominal_overhead(&self) -> (usize, usize) {
        (STEPS_PER_MOVE, STEP_OVERHEAD)
    }

    /// `<^{q0} w B $ >'`, the word `In` hands to `Sim`.
    pub fn bootstrap_word(&self, input: &Word) -> Word {
        let mut out = vec![self.state_marker(self.machine.initial)];
        out.extend_from_slice(input);
        out.extend([self.machine.blank, self.separator, Symbol::new(HEAD_LEFT_END)]);
        Word::new(out)
    }

    fn state_marker(&self, q: State) -> Symbol {
        Symbol::new(&format!("<^{{{q}}}"))
    }
}

/// Input `w` as placed in `In`: `<w>`.
pub fn encode_input(cn: &CompiledNetwork, input: &Word) -> Result<Word, InputError> {
    cn.network.encode_input(input)
}

const LEFT_INPUT: &str = "<";
const RIGHT_INPUT: &str = ">";
const HEAD_LEFT_END: &str = ">'";
const HEAD_RIGHT_END: &str = ">''";
const SEPARATOR: &str = "$";
const GLUE: &str = "#";
const GLUE_LEFT_BOOT: &str = "#E";
const GLUE_RIGHT_BOOT: &str = "#G";
const ACCEPT: &str = "<^accept";
const FINAL: &str = "<^final";

/// Which end of the word holds the head cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum HeadEnd {
    Left,
    Right,
}

impl HeadEnd {
    const BOTH: [HeadEnd; 2] = [HeadEnd::Left, HeadEnd::Right];

    /// After a right move the head cell is the first body symbol, after a
    /// left move the last one.
    fn after(dir: Move) -> HeadEnd {
        match dir {
            Move::Right => HeadEnd::Left,
            Move::Left => HeadEnd::Right,
        }
    }
}

struct SymbolTable<'m> {
    machine: &'m TuringMachine,
    legend: BTreeMap<Symbol, String>,
}

impl<'m> SymbolTable<'m> {
    fn fresh(&mut self, token: String, meaning: String) -> Result<Symbol, CompileError> {
        let collision = |other: String| CompileError::NameCollision {
            token: token.clone(),
            meaning: meaning.clone(),
            other,
        };
        let sym = Symbol::try_new(&token).map_err(|_| collision("an invalid token".into()))?;
        if self.machine.tape_alphabet.contains(&sym) {
            return Err(collision("a tape symbol".into()));
        }
        match self.legend.get(&sym) {
            Some(existing) if *existing != meaning => Err(collision(existing.clone())),
            Some(_) => Ok(sym),
            None => {
                self.legend.insert(sym, meaning);
                Ok(sym)
            }
        }
    }

    fn tag(t: &Transition) -> String {
        format!("{},{},{},{},{}", t.state, t.read, t.next, t.write, t.dir)
    }

    fn state(&mut self, q: State, end: HeadEnd) -> Result<Symbol, CompileError> {
        match end {
            HeadEnd::Left => {
                self.fresh(format!("<^{{{q}}}"), format!("state {q}, head on first body symbol"))
            }
            HeadEnd::Right => {
                self.fresh(format!("<'^{{{q}}}"), format!("state {q}, head on last body symbol"))
            }
        }
    }

    fn guess(&mut self, t: &Transition, end: HeadEnd) -> Result<Symbol, CompileError> {
        let tag = Self::tag(t);
        match end {
            HeadEnd::Left => self.fresh(format!("<^{{{tag}}}"), format!("applying {t}, head first")),
            HeadEnd::Right => self.fresh(format!("<'^{{{tag}}}"), format!("applying {t}, head last")),
        }
    }

    fn left_done(&mut self, t: &Transition, end: HeadEnd) -> Result<Symbol, CompileError> {
        let tag = Self::tag(t);
        match end {
            HeadEnd::Left => {
                self.fresh(format!("<*^{{{tag}}}"), format!("left end edited for {t}, head first"))
            }
            HeadEnd::Right => {
                self.fresh(format!("<'*^{{{tag}}}"), format!("left end edited for {t}, head last"))
            }
        }
    }

    fn right_done(&mut self, t: &Transition, end: HeadEnd) -> Result<Symbol, CompileError> {
        let tag = Self::tag(t);
        match end {
            HeadEnd::Left => {
                self.fresh(format!(">*^{{{tag}}}"), format!("right end edited for {t}, head first"))
            }
            HeadEnd::Right => {
                self.fresh(format!(">'*^{{{tag}}}"), format!("right end edited for {t}, head last"))
            }
        }
    }
}

/// `N · glue` as axiom, `[(N, glue); (site, λ)]` as rule: replaces the prefix
/// `site` of a word by `N`.
fn prefix_rule(proc_: &mut UniformProcessor, site: Vec<Symbol>, new: Vec<Symbol>, glue: Symbol) {
    let new = Word::new(new);
    proc_.axioms.insert(Word::concat(&[&new, &[glue]]));
    proc_.rules.insert(SplicingRule::new(new, Word::new(vec![glue]), Word::new(site), Word::empty()));
}

/// `glue · N` as axiom, `[(λ, site); (glue, N)]` as rule: replaces the suffix
/// `site` of a word by `N`.
fn suffix_rule(proc_: &mut UniformProcessor, site: Vec<Symbol>, new: Vec<Symbol>, glue: Symbol) {
    let new = Word::new(new);
    proc_.axioms.insert(Word::concat(&[&[glue], &new]));
    proc_.rules.insert(SplicingRule::new(Word::empty(), Word::new(site), Word::new(vec![glue]), new));
}

pub fn compile(m: &TuringMachine) -> Result<CompiledNetwork, CompileError> {
    compile_with(m, Persistence::Literal)
}

pub fn compile_with(m: &TuringMachine, persistence: Persistence) -> Result<CompiledNetwork, CompileError> {
    m.validate()?;
    if m.transitions.is_empty() {
        return Err(CompileError::NoTransitions);
    }
    let mut syms = SymbolTable { machine: m, legend: BTreeMap::new() };
    let left_in = syms.fresh(LEFT_INPUT.into(), "input left marker".into())?;
    let right_in = syms.fresh(RIGHT_INPUT.into(), "input right marker".into())?;
    let head_left = syms.fresh(HEAD_LEFT_END.into(), "right end, head on first body symbol".into())?;
    let head_right = syms.fresh(HEAD_RIGHT_END.into(), "right end, head on last body symbol".into())?;
    let sep = syms.fresh(SEPARATOR.into(), "boundary between last and first tape cell".into())?;
    let glue = syms.fresh(GLUE.into(), "axiom glue (never in stored words)".into())?;
    let glue_l = syms.fresh(GLUE_LEFT_BOOT.into(), "In glue, left bootstrap axiom".into())?;
    let glue_r = syms.fresh(GLUE_RIGHT_BOOT.into(), "In glue, right bootstrap axiom".into())?;
    let accept = syms.fresh(ACCEPT.into(), "accept, admitted only by Halt".into())?;
    let end_marker = |end: HeadEnd| match end {
        HeadEnd::Left => head_left,
        HeadEnd::Right => head_right,
    };
    let accepting = |q: State| m.accepting.contains(&q);

    // Collect every generated marker up front so filters can name families.
    let q0 = syms.state(m.initial, HeadEnd::Left)?;
    let final_marker = if accepting(m.initial) {
        Some(syms.fresh(FINAL.into(), "start state accepts; Res turns it into accept".into())?)
    } else {
        None
    };
    let mut states = SymbolSet::from([q0]);
    let mut guesses = SymbolSet::new();
    let mut left_dirty = SymbolSet::new();
    let mut right_dirty = SymbolSet::new();
    for t in &m.transitions {
        for end in HeadEnd::BOTH {
            states.insert(syms.state(t.state, end)?);
            guesses.insert(syms.guess(t, end)?);
            left_dirty.insert(syms.left_done(t, end)?);
            right_dirty.insert(syms.right_done(t, end)?);
            if !accepting(t.next) {
                states.insert(syms.state(t.next, HeadEnd::after(t.dir))?);
            }
        }
    }

    let mut network_alphabet: SymbolSet = m.tape_alphabet.clone();
    network_alphabet.extend(syms.legend.keys().copied());
    let mut net = Network::new(m.input_alphabet.clone(), network_alphabet, left_in, right_in);
    net.persistence = persistence;
    let mut roles = Vec::new();

    // In: two splices, one per end, in either order.
    let mut input = UniformProcessor::new(Filter::weak([q0].into(), [right_in].into()));
    prefix_rule(&mut input, vec![left_in], vec![q0], glue_l);
    input.axioms.insert(Word::new(vec![glue_r, m.blank, sep, head_left]));
    input.rules.insert(SplicingRule::new(
        Word::empty(),
        Word::new(vec![right_in]),
        Word::new(vec![glue_r]),
        Word::new(vec![m.blank]),
    ));
    let in_id = net.add_node("In", input);
    roles.push(NodeRole::Input);

    // Sim: one copy per transition out of the current state.
    let mut sim_permit = states.clone();
    sim_permit.extend(&guesses);
    sim_permit.extend(final_marker);
    let mut sim = UniformProcessor::new(Filter::weak(sim_permit, right_dirty.clone()));
    for t in &m.transitions {
        for end in HeadEnd::BOTH {
            let from = syms.state(t.state, end)?;
            let to = syms.guess(t, end)?;
            prefix_rule(&mut sim, vec![from], vec![to], glue);
        }
    }
    if let Some(fin) = final_marker {
        prefix_rule(&mut sim, vec![q0], vec![fin], glue);
    }
    let sim_id = net.add_node("Sim", sim);
    roles.push(NodeRole::Sim);

    // Res: clean both ends.
    let mut res_permit = right_dirty.clone();
    res_permit.extend(&states);
    res_permit.insert(accept);
    res_permit.extend(final_marker);
    let mut res = UniformProcessor::new(Filter::weak(res_permit, guesses.clone()));
    for t in &m.transitions {
        let after = HeadEnd::after(t.dir);
        for end in HeadEnd::BOTH {
            let left = if accepting(t.next) { accept } else { syms.state(t.next, after)? };
            prefix_rule(&mut res, vec![syms.left_done(t, end)?], vec![left], glue);
            suffix_rule(&mut res, vec![syms.right_done(t, end)?], vec![end_marker(after)], glue);
        }
    }
    if let Some(fin) = final_marker {
        prefix_rule(&mut res, vec![fin], vec![accept], glue);
    }
    let res_id = net.add_node("Res", res);
    roles.push(NodeRole::Res);

    let halt = UniformProcessor::new(Filter::weak([accept].into(), states.clone()));
    let halt_id = net.add_node("Halt", halt);
    roles.push(NodeRole::Halt);

    for (i, t) in m.transitions.iter().enumerate() {
        let (g_l, g_r) = (syms.guess(t, HeadEnd::Left)?, syms.guess(t, HeadEnd::Right)?);
        let (ld_l, ld_r) = (syms.left_done(t, HeadEnd::Left)?, syms.left_done(t, HeadEnd::Right)?);
        let (rd_l, rd_r) = (syms.right_done(t, HeadEnd::Left)?, syms.right_done(t, HeadEnd::Right)?);
        let (a, b) = (t.read, t.write);

        // head node: check `a` next to the transition marker and write `b`
        let mut head = UniformProcessor::new(Filter::weak(
            [g_l, g_r, ld_l, rd_r].into(),
            [ld_r, rd_l].into(),
        ));
        let mut reads = vec![a];
        if a == m.blank {
            // the cell just past the end of the tape
            reads.push(sep);
        }
        for h in reads {
            let mut new = vec![ld_l];
            if t.dir == Move::Left {
                new.push(b);
            }
            if h == sep {
                new.push(sep);
            }
            prefix_rule(&mut head, vec![g_l, h], new, glue);
        }
        match t.dir {
            // the new head cell sits left of `a`; `$` there means the head
            // fell off cell 0
            Move::Left => {
                for &c in &m.tape_alphabet {
                    suffix_rule(&mut head, vec![c, a, head_right], vec![c, rd_r], glue);
                }
            }
            Move::Right => suffix_rule(&mut head, vec![a, head_right], vec![b, rd_r], glue),
        }

        // tail node: the opposite end
        let mut tail_forbid = states.clone();
        tail_forbid.insert(accept);
        tail_forbid.insert(g_l);
        let mut tail =
            UniformProcessor::new(Filter::weak([ld_l, rd_r, rd_l, ld_r].into(), tail_forbid));
        match t.dir {
            Move::Right => suffix_rule(&mut tail, vec![head_left], vec![b, rd_l], glue),
            Move::Left => {
                for &c in &m.tape_alphabet {
                    suffix_rule(&mut tail, vec![c, head_left], vec![c, rd_l], glue);
                }
            }
        }
        let new = match t.dir {
            Move::Left => vec![ld_r, b],
            Move::Right => vec![ld_r],
        };
        prefix_rule(&mut tail, vec![g_r], new, glue);

        let head_id = net.add_node(format!("T{i}.head"), head);
        roles.push(NodeRole::TransitionHead(i));
        let tail_id = net.add_node(format!("T{i}.tail"), tail);
        roles.push(NodeRole::TransitionTail(i));
        net.add_edge(sim_id, head_id);
        net.add_edge(head_id, tail_id);
        net.add_edge(tail_id, res_id);
    }
    net.add_edge(in_id, sim_id);
    net.add_edge(res_id, sim_id);
    net.add_edge(res_id, halt_id);
    net.input_node = in_id;
    net.halt_node = halt_id;

    let mut phase_markers: SymbolSet = [left_in, accept].into();
    phase_markers.extend(&states);
    phase_markers.extend(&guesses);
    phase_markers.extend(&left_dirty);
    phase_markers.extend(final_marker);
    let mut end_markers: SymbolSet = [right_in, head_left, head_right].into();
    end_markers.extend(&right_dirty);

    Ok(CompiledNetwork {
        network: net,
        machine: m.clone(),
        symbol_legend: syms.legend,
        node_roles: roles,
        phase_markers,
        end_markers,
        separator: sep,
        accept_marker: accept,
    })
}

fn join(syms: &SymbolSet) -> String {
    sorted_by_token(syms).iter().map(|s| s.as_str()).collect::<Vec<_>>().join(" ")
}

/// Human-readable dump of roles, processors and the symbol legend.
pub fn explain(cn: &CompiledNetwork) -> String {
    let net = &cn.network;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "network: {} nodes, {} transitions, persistence {}",
        net.nodes.len(),
        cn.machine.transitions.len(),
        net.persistence
    );
    out.push_str("\nroles:\n");
    for (node, role) in net.nodes.iter().zip(&cn.node_roles) {
        let _ = writeln!(out, "role {} = {}", node.name, role);
    }
    let describe = |out: &mut String, id: NodeId| {
        let p = &net.nodes[id].processor;
        let _ = writeln!(out, "  node {} ({})", net.nodes[id].name, cn.node_roles[id]);
        let _ = writeln!(
            out,
            "    filter mode {} permit [{}] forbid [{}]",
            p.filter.mode,
            join(&p.filter.permit),
            join(&p.filter.forbid)
        );
        for r in &p.rules {
            let _ = writeln!(out, "    rule {r}");
        }
        for a in &p.axioms {
            let _ = writeln!(out, "    axiom {a}");
        }
    };
    out.push_str("\nfixed nodes:\n");
    for role in [NodeRole::Input, NodeRole::Sim, NodeRole::Res, NodeRole::Halt] {
        if let Some(id) = cn.node_of(role) {
            describe(&mut out, id);
        }
    }
    for (i, t) in cn.machine.transitions.iter().enumerate() {
        let _ = writeln!(out, "\ntransition {i} {t}:");
        for role in [NodeRole::TransitionHead(i), NodeRole::TransitionTail(i)] {
            if let Some(id) = cn.node_of(role) {
                describe(&mut out, id);
            }
        }
    }
    out.push_str("\nlegend:\n");
    for s in sorted_by_token(cn.symbol_legend.keys()) {
        let _ = writeln!(out, "  {} : {}", s, cn.symbol_legend[&s]);
    }
    let tape: BTreeSet<Symbol> = cn.machine.tape_alphabet.clone();
    let _ = writeln!(out, "  tape symbols: {}", join(&tape));
    out
}
