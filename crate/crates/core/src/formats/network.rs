//! The network file.
//!
//! ```text
//! alphabet input a b
//! alphabet network a b < > X
//! markers < >
//! persistence literal
//! node In
//!   mode w
//!   permit <
//!   forbid X
//!   axiom X b
//!   rule (<, a);(X, ~)
//! edge In Out
//! input-node In
//! halt-node Out
//! ```
//!
//! Node attribute lines belong to the most recent `node` line; indentation
//! is cosmetic. Every symbol must be declared in `alphabet network`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::lex::{lines, Cursor, Tok};
use super::{quote_token, ParseError};
use crate::filter::{Filter, FilterMode};
use crate::network::{Network, Node, Persistence, UniformProcessor};
use crate::splice::SplicingRule;
use crate::symbol::{sorted_by_token, Symbol, SymbolSet, Word};

#[derive(Default)]
struct NodeDraft {
    line: usize,
    name: String,
    mode: Option<FilterMode>,
    permit: SymbolSet,
    forbid: SymbolSet,
    processor: Option<UniformProcessor>,
}

fn once<T>(slot: &mut Option<T>, value: T, cur: &Cursor, what: &str) -> Result<(), ParseError> {
    if slot.is_some() {
        return Err(cur.err(format!("duplicate {what}")));
    }
    *slot = Some(value);
    Ok(())
}

pub fn parse_network(text: &str) -> Result<Network, ParseError> {
    let mut input: Option<SymbolSet> = None;
    let mut alphabet: Option<(SymbolSet, usize)> = None;
    let mut markers: Option<(Symbol, Symbol)> = None;
    let mut persistence: Option<Persistence> = None;
    let mut nodes: Vec<NodeDraft> = Vec::new();
    let mut edges: Vec<(usize, String, String)> = Vec::new();
    let mut input_node: Option<(usize, String)> = None;
    let mut halt_node: Option<(usize, String)> = None;
    // symbol uses to check against the declared alphabet, with line numbers
    let mut uses: Vec<(usize, Symbol)> = Vec::new();

    for (no, toks) in lines(text)? {
        let mut cur = Cursor::new(no, &toks);
        let Some(Tok::Bare(keyword)) = cur.next() else {
            return Err(cur.err("expected a section keyword"));
        };
        match keyword.as_str() {
            "alphabet" => {
                let which = cur.token("`input` or `network`")?;
                let set: SymbolSet = cur.rest_symbols()?.into_iter().collect();
                match which {
                    "input" => once(&mut input, set, &cur, "input alphabet")?,
                    "network" => once(&mut alphabet, (set, no), &cur, "network alphabet")?,
                    other => return Err(cur.err(format!("unknown alphabet {other:?}"))),
                }
            }
            "markers" => {
                let l = cur.symbol("left marker")?;
                let r = cur.symbol("right marker")?;
                cur.end()?;
                uses.extend([(no, l), (no, r)]);
                once(&mut markers, (l, r), &cur, "markers line")?;
            }
            "persistence" => {
                let p = cur.token("persistence mode")?.parse().map_err(|e: String| cur.err(e))?;
                cur.end()?;
                once(&mut persistence, p, &cur, "persistence line")?;
            }
            "node" => {
                let name = cur.token("node name")?.to_string();
                cur.end()?;
                if nodes.iter().any(|n| n.name == name) {
                    return Err(cur.err(format!("duplicate node {name:?}")));
                }
                nodes.push(NodeDraft { line: no, name, ..Default::default() });
            }
            "mode" | "permit" | "forbid" | "axiom" | "rule" => {
                let Some(node) = nodes.last_mut() else {
                    return Err(cur.err(format!("`{keyword}` outside a node block")));
                };
                let proc = node
                    .processor
                    .get_or_insert_with(|| UniformProcessor::new(Filter::weak(SymbolSet::new(), SymbolSet::new())));
                match keyword.as_str() {
                    "mode" => {
                        let m = cur.token("s or w")?.parse().map_err(|e: String| cur.err(e))?;
                        cur.end()?;
                        once(&mut node.mode, m, &cur, "mode line")?;
                    }
                    "permit" | "forbid" => {
                        let syms = cur.rest_symbols()?;
                        uses.extend(syms.iter().map(|&s| (no, s)));
                        let target = if keyword == "permit" { &mut node.permit } else { &mut node.forbid };
                        target.extend(syms);
                    }
                    "axiom" => {
                        let word = cur.word()?;
                        cur.end()?;
                        uses.extend(word.iter().map(|&s| (no, s)));
                        proc.axioms.insert(word);
                    }
                    _ => {
                        let rule = parse_rule(&mut cur)?;
                        uses.extend(rule.symbols().map(|s| (no, s)));
                        proc.rules.insert(rule);
                    }
                }
            }
            "edge" => {
                let a = cur.token("node name")?.to_string();
                let b = cur.token("node name")?.to_string();
                cur.end()?;
                edges.push((no, a, b));
            }
            "input-node" | "halt-node" => {
                let name = cur.token("node name")?.to_string();
                cur.end()?;
                let slot = if keyword == "input-node" { &mut input_node } else { &mut halt_node };
                once(slot, (no, name), &cur, keyword)?;
            }
            other => return Err(cur.err(format!("unknown section {other:?}"))),
        }
    }

    let end = text.lines().count().max(1);
    let input = input.ok_or_else(|| ParseError::new(end, "missing `alphabet input`"))?;
    let (alphabet, alpha_line) = alphabet.ok_or_else(|| ParseError::new(end, "missing `alphabet network`"))?;
    let (left, right) = markers.ok_or_else(|| ParseError::new(end, "missing `markers`"))?;
    if let Some(s) = input.iter().find(|s| !alphabet.contains(s)) {
        return Err(ParseError::new(alpha_line, format!("input symbol {s} is not in the network alphabet")));
    }
    if let Some((no, s)) = uses.iter().find(|(_, s)| !alphabet.contains(s)) {
        return Err(ParseError::new(*no, format!("undeclared symbol {s}")));
    }

    let mut net = Network::new(input, alphabet, left, right);
    net.persistence = persistence.unwrap_or_default();
    for d in nodes {
        let mode = d.mode.ok_or_else(|| ParseError::new(d.line, format!("node {:?} has no mode line", d.name)))?;
        let mut proc = d.processor.unwrap_or_else(|| UniformProcessor::new(Filter::weak(SymbolSet::new(), SymbolSet::new())));
        proc.filter = Filter::new(d.permit, d.forbid, mode);
        net.nodes.push(Node { name: d.name, processor: proc });
    }
    let lookup = |no: usize, name: &str, net: &Network| {
        net.node_id(name).ok_or_else(|| ParseError::new(no, format!("undeclared node {name:?}")))
    };
    for (no, a, b) in edges {
        let (a, b) = (lookup(no, &a, &net)?, lookup(no, &b, &net)?);
        if a == b {
            return Err(ParseError::new(no, "self-loop edge"));
        }
        net.add_edge(a, b);
    }
    let (no, name) = input_node.ok_or_else(|| ParseError::new(end, "missing `input-node`"))?;
    net.input_node = lookup(no, &name, &net)?;
    let (no, name) = halt_node.ok_or_else(|| ParseError::new(end, "missing `halt-node`"))?;
    net.halt_node = lookup(no, &name, &net)?;
    Ok(net)
}

fn parse_rule(cur: &mut Cursor) -> Result<SplicingRule, ParseError> {
    cur.expect(Tok::Open, "`(`")?;
    let u1 = cur.word()?;
    cur.expect(Tok::Comma, "`,`")?;
    let u2 = cur.word()?;
    cur.expect(Tok::Close, "`)`")?;
    cur.expect(Tok::Semi, "`;`")?;
    cur.expect(Tok::Open, "`(`")?;
    let v1 = cur.word()?;
    cur.expect(Tok::Comma, "`,`")?;
    let v2 = cur.word()?;
    cur.expect(Tok::Close, "`)`")?;
    cur.end()?;
    Ok(SplicingRule::new(u1, u2, v1, v2))
}

fn emit_word(w: &Word) -> String {
    if w.is_empty() {
        return "~".into();
    }
    w.tokens().into_iter().map(quote_token).collect::<Vec<_>>().join(" ")
}

fn emit_set(set: &SymbolSet) -> String {
    sorted_by_token(set).into_iter().map(|s| format!(" {}", quote_token(s.as_str()))).collect()
}

/// Canonical text: sets sorted by token, nodes in declaration order.
pub fn emit_network(net: &Network) -> String {
    emit_network_with_legend(net, &BTreeMap::new())
}

/// As [`emit_network`], preceded by one comment line per legend entry.
pub fn emit_network_with_legend(net: &Network, legend: &BTreeMap<Symbol, String>) -> String {
    let mut out = String::new();
    if !legend.is_empty() {
        out.push_str("# legend\n");
        let mut entries: Vec<_> = legend.iter().collect();
        entries.sort_by_key(|(s, _)| s.as_str());
        for (s, meaning) in entries {
            let _ = writeln!(out, "#   {} : {}", quote_token(s.as_str()), meaning);
        }
    }
    let _ = writeln!(out, "alphabet input{}", emit_set(&net.input_alphabet));
    let _ = writeln!(out, "alphabet network{}", emit_set(&net.network_alphabet));
    let _ = writeln!(
        out,
        "markers {} {}",
        quote_token(net.left_marker.as_str()),
        quote_token(net.right_marker.as_str())
    );
    let _ = writeln!(out, "persistence {}", net.persistence);
    for node in &net.nodes {
        let p = &node.processor;
        let _ = writeln!(out, "\nnode {}", quote_token(&node.name));
        let _ = writeln!(out, "  mode {}", p.filter.mode);
        let _ = writeln!(out, "  permit{}", emit_set(&p.filter.permit));
        let _ = writeln!(out, "  forbid{}", emit_set(&p.filter.forbid));
        let mut axioms: Vec<&Word> = p.axioms.iter().collect();
        axioms.sort_by(|a, b| a.cmp_tokens(b));
        for a in axioms {
            let _ = writeln!(out, "  axiom {}", emit_word(a));
        }
        let mut rules: Vec<&SplicingRule> = p.rules.iter().collect();
        rules.sort_by(|a, b| {
            a.components()
                .iter()
                .zip(b.components())
                .map(|(x, y)| x.cmp_tokens(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        for r in rules {
            let _ = writeln!(
                out,
                "  rule ({}, {});({}, {})",
                emit_word(&r.u1),
                emit_word(&r.u2),
                emit_word(&r.v1),
                emit_word(&r.v2)
            );
        }
    }
    out.push('\n');
    let mut edges: Vec<(&str, &str)> = net
        .edges
        .iter()
        .map(|&(a, b)| (net.nodes[a].name.as_str(), net.nodes[b].name.as_str()))
        .collect();
    // declaration order of endpoints keeps compiled files readable
    edges.sort_by_key(|&(a, b)| (net.node_id(a), net.node_id(b)));
    for (a, b) in edges {
        let _ = writeln!(out, "edge {} {}", quote_token(a), quote_token(b));
    }
    let _ = writeln!(out, "input-node {}", quote_token(&net.nodes[net.input_node].name));
    let _ = writeln!(out, "halt-node {}", quote_token(&net.nodes[net.halt_node].name));
    out
}
