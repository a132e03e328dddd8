//! Network structure: uniform processors on an undirected graph.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::filter::Filter;
use crate::splice::{SplicingRule, WordSet};
use crate::symbol::{Symbol, SymbolSet, Word};

/// How a splicing step treats words that take part in no splicing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Persistence {
    /// `C'(x) = σ(C(x) ∪ A_x)`; idle words disappear.
    #[default]
    Literal,
    /// `C'(x) = C(x) ∪ σ(C(x) ∪ A_x)`.
    Preserve,
}

impl fmt::Display for Persistence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Persistence::Literal => "literal",
            Persistence::Preserve => "preserve",
        })
    }
}

impl FromStr for Persistence {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "literal" => Ok(Persistence::Literal),
            "preserve" => Ok(Persistence::Preserve),
            other => Err(format!("unknown persistence mode {other:?}")),
        }
    }
}

/// A splicing processor whose input and output filters coincide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformProcessor {
    pub rules: BTreeSet<SplicingRule>,
    /// Auxiliary words, available at every splicing step but never stored.
    pub axioms: WordSet,
    pub filter: Filter,
}

impl UniformProcessor {
    pub fn new(filter: Filter) -> Self {
        UniformProcessor { rules: BTreeSet::new(), axioms: WordSet::new(), filter }
    }

    pub fn with_rule(mut self, rule: SplicingRule) -> Self {
        self.rules.insert(rule);
        self
    }

    pub fn with_axiom(mut self, axiom: Word) -> Self {
        self.axioms.insert(axiom);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub name: String,
    pub processor: UniformProcessor,
}

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    pub input_alphabet: SymbolSet,
    pub network_alphabet: SymbolSet,
    pub left_marker: Symbol,
    pub right_marker: Symbol,
    pub persistence: Persistence,
    /// Declaration order is significant: traces and emitted files follow it.
    pub nodes: Vec<Node>,
    /// Unordered pairs stored as `(min, max)`.
    pub edges: BTreeSet<(NodeId, NodeId)>,
    pub input_node: NodeId,
    pub halt_node: NodeId,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("input symbol {0} is not in the input alphabet")]
    SymbolOutsideInput(Symbol),
}

impl Network {
    /// A network with the given alphabets and no nodes.
    pub fn new(
        input_alphabet: SymbolSet,
        network_alphabet: SymbolSet,
        left_marker: Symbol,
        right_marker: Symbol,
    ) -> Self {
        Network {
            input_alphabet,
            network_alphabet,
            left_marker,
            right_marker,
            persistence: Persistence::Literal,
            nodes: Vec::new(),
            edges: BTreeSet::new(),
            input_node: 0,
            halt_node: 0,
        }
    }

    pub fn add_node(&mut self, name: impl Into<String>, processor: UniformProcessor) -> NodeId {
        self.nodes.push(Node { name: name.into(), processor });
        self.nodes.len() - 1
    }

    pub fn add_edge(&mut self, a: NodeId, b: NodeId) {
        self.edges.insert((a.min(b), a.max(b)));
    }

    pub fn node_id(&self, name: &str) -> Option<NodeId> {
        self.nodes.iter().position(|n| n.name == name)
    }

    pub fn node_names(&self) -> Vec<String> {
        self.nodes.iter().map(|n| n.name.clone()).collect()
    }

    /// Adjacency lists in declaration order; self-loops are ignored.
    pub fn neighbors(&self) -> Vec<Vec<NodeId>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(a, b) in &self.edges {
            if a != b && a < self.nodes.len() && b < self.nodes.len() {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// `⟨w⟩`, the word placed in the input node.
    pub fn encode_input(&self, input: &Word) -> Result<Word, InputError> {
        if let Some(&s) = input.iter().find(|s| !self.input_alphabet.contains(s)) {
            return Err(InputError::SymbolOutsideInput(s));
        }
        let mut out = Vec::with_capacity(input.len() + 2);
        out.push(self.left_marker);
        out.extend_from_slice(input);
        out.push(self.right_marker);
        Ok(Word::new(out))
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }
}

/// Node contents; axioms are never stored here.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub contents: Vec<WordSet>,
}

impl Configuration {
    pub fn empty(nodes: usize) -> Self {
        Configuration { contents: vec![WordSet::new(); nodes] }
    }

    pub fn is_empty(&self) -> bool {
        self.contents.iter().all(|c| c.is_empty())
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.contents.iter().map(|c| c.len()).collect()
    }
}

/// `C_0`: `{⟨w⟩}` in the input node, nothing elsewhere.
pub fn initial_configuration(net: &Network, input: &Word) -> Result<Configuration, InputError> {
    let mut c = Configuration::empty(net.nodes.len());
    c.contents[net.input_node].insert(net.encode_input(input)?);
    Ok(c)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    InputNotInNetworkAlphabet(Symbol),
    MarkerInInputAlphabet(Symbol),
    MarkerNotInNetworkAlphabet(Symbol),
    IdenticalMarkers,
    DuplicateNode(String),
    SelfLoop(String),
    UnknownEdgeEndpoint(NodeId),
    UnknownNode(&'static str, NodeId),
    InputIsHalt,
    FilterOverlap { node: String, symbols: Vec<Symbol> },
    ForeignSymbol { node: String, symbol: Symbol },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::InputNotInNetworkAlphabet(s) => {
                write!(f, "input symbol {s} is not in the network alphabet")
            }
            Violation::MarkerInInputAlphabet(s) => {
                write!(f, "marker {s} belongs to the input alphabet")
            }
            Violation::MarkerNotInNetworkAlphabet(s) => {
                write!(f, "marker {s} is not in the network alphabet")
            }
            Violation::IdenticalMarkers => write!(f, "left and right markers coincide"),
            Violation::DuplicateNode(n) => write!(f, "duplicate node name {n}"),
            Violation::SelfLoop(n) => write!(f, "self-loop on node {n}"),
            Violation::UnknownEdgeEndpoint(i) => write!(f, "edge endpoint {i} is not a node"),
            Violation::UnknownNode(role, i) => write!(f, "{role} node {i} does not exist"),
            Violation::InputIsHalt => write!(f, "input node and halting node coincide"),
            Violation::FilterOverlap { node, symbols } => {
                let list: Vec<_> = symbols.iter().map(|s| s.as_str()).collect();
                write!(f, "node {node}: permitting and forbidding sets share {}", list.join(" "))
            }
            Violation::ForeignSymbol { node, symbol } => {
                write!(f, "node {node}: symbol {symbol} is not in the network alphabet")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Warning {
    EmptyPermit(String),
    EmptyForbid(String),
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::EmptyPermit(n) => write!(f, "node {n}: empty permitting set"),
            Warning::EmptyForbid(n) => write!(f, "node {n}: empty forbidding set"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Warning>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "error: {v}")?;
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

/// Reports every structural problem of `net`.
pub fn validate(net: &Network) -> ValidationReport {
    let mut report = ValidationReport::default();
    let v = &mut report.violations;
    let u = &net.network_alphabet;

    for &s in &net.input_alphabet {
        if !u.contains(&s) {
            v.push(Violation::InputNotInNetworkAlphabet(s));
        }
    }
    for m in [net.left_marker, net.right_marker] {
        if net.input_alphabet.contains(&m) {
            v.push(Violation::MarkerInInputAlphabet(m));
        }
        if !u.contains(&m) {
            v.push(Violation::MarkerNotInNetworkAlphabet(m));
        }
    }
    if net.left_marker == net.right_marker {
        v.push(Violation::IdenticalMarkers);
    }

    let mut seen = BTreeSet::new();
    for node in &net.nodes {
        if !seen.insert(node.name.as_str()) {
            v.push(Violation::DuplicateNode(node.name.clone()));
        }
    }

    for &(a, b) in &net.edges {
        for end in [a, b] {
            if end >= net.nodes.len() {
                v.push(Violation::UnknownEdgeEndpoint(end));
            }
        }
        if a == b && a < net.nodes.len() {
            v.push(Violation::SelfLoop(net.nodes[a].name.clone()));
        }
    }

    if net.input_node >= net.nodes.len() {
        v.push(Violation::UnknownNode("input", net.input_node));
    }
    if net.halt_node >= net.nodes.len() {
        v.push(Violation::UnknownNode("halting", net.halt_node));
    }
    if net.input_node == net.halt_node {
        v.push(Violation::InputIsHalt);
    }

    for node in &net.nodes {
        let p = &node.processor;
        let overlap = p.filter.overlap();
        if !overlap.is_empty() {
            v.push(Violation::FilterOverlap {
                node: node.name.clone(),
                symbols: overlap.into_iter().collect(),
            });
        }
        let mut foreign = BTreeSet::new();
        let used = p
            .rules
            .iter()
            .flat_map(|r| r.symbols())
            .chain(p.axioms.iter().flat_map(|a| a.iter().copied()))
            .chain(p.filter.permit.iter().copied())
            .chain(p.filter.forbid.iter().copied());
        for s in used {
            if !u.contains(&s) && foreign.insert(s) {
                v.push(Violation::ForeignSymbol { node: node.name.clone(), symbol: s });
            }
        }
        if p.filter.permit.is_empty() {
            report.warnings.push(Warning::EmptyPermit(node.name.clone()));
        }
        if p.filter.forbid.is_empty() {
            report.warnings.push(Warning::EmptyForbid(node.name.clone()));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filter::Filter;
    use crate::symbol::{symbols, w};

    pub(crate) fn two_node() -> Network {
        let mut net = Network::new(symbols("a b"), symbols("a b < >"), "<".into(), ">".into());
        let x = net.add_node("x", UniformProcessor::new(Filter::weak(symbols("a"), symbols("b"))));
        let y = net.add_node("y", UniformProcessor::new(Filter::weak(symbols("b"), symbols("a"))));
        net.add_edge(x, y);
        net.input_node = x;
        net.halt_node = y;
        net
    }

    #[test]
    fn well_formed_two_node_net() {
        let report = two_node().validate();
        assert!(report.is_ok(), "{report}");
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn self_loop_is_reported() {
        let mut net = two_node();
        net.add_edge(0, 0);
        let report = net.validate();
        assert!(report.violations.contains(&Violation::SelfLoop("x".into())));
        assert!(report.to_string().contains("self-loop"));
    }

    #[test]
    fn marker_in_input_alphabet() {
        let mut net = two_node();
        net.input_alphabet.insert("<".into());
        let report = net.validate();
        assert!(report.violations.contains(&Violation::MarkerInInputAlphabet("<".into())));
    }

    #[test]
    fn other_violations_and_warnings() {
        let mut net = two_node();
        net.halt_node = 0;
        net.edges.insert((1, 7));
        net.nodes[1].processor.filter = Filter::weak(symbols("a"), symbols("a"));
        net.nodes[0].processor.filter = Filter::weak(symbols(""), symbols(""));
        net.nodes[0].processor.axioms.insert(w("zz"));
        let report = net.validate();
        assert!(report.violations.contains(&Violation::InputIsHalt));
        assert!(report.violations.contains(&Violation::UnknownEdgeEndpoint(7)));
        assert!(report.violations.iter().any(|v| matches!(v, Violation::FilterOverlap { .. })));
        assert!(report.violations.iter().any(|v| matches!(v, Violation::ForeignSymbol { .. })));
        assert_eq!(report.warnings.len(), 2);
    }

    #[test]
    fn initial_configuration_places_bracketed_input() {
        let net = two_node();
        let c = initial_configuration(&net, &w("a b")).unwrap();
        assert_eq!(c.contents[0], [w("< a b >")].into_iter().collect());
        assert!(c.contents[1].is_empty());
        let c = initial_configuration(&net, &w("~")).unwrap();
        assert_eq!(c.contents[0], [w("< >")].into_iter().collect());
        assert_eq!(
            initial_configuration(&net, &w("c")),
            Err(InputError::SymbolOutsideInput("c".into()))
        );
    }
}
