mod common;

use nusp::compiler::compile;
use nusp::formats::{
    check_alternation, emit_machine, emit_network, parse_machine, parse_network, parse_trace, write_trace,
};
use nusp::runtime::{RunLimits, Simulator};
use nusp::symbol::Word;

#[test]
fn shipped_networks_round_trip() {
    let files = common::shipped("networks", "net");
    assert!(files.len() >= 5);
    for path in files {
        let net = parse_network(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let once = emit_network(&net);
        let again = parse_network(&once).unwrap();
        assert_eq!(again, net, "{}", path.display());
        assert_eq!(emit_network(&again), once, "{}", path.display());
    }
}

#[test]
fn shipped_machines_round_trip() {
    let files = common::shipped("machines", "tm");
    assert_eq!(files.len(), common::MACHINES.len());
    for path in files {
        let m = parse_machine(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let once = emit_machine(&m);
        assert_eq!(parse_machine(&once).unwrap(), m, "{}", path.display());
        assert_eq!(emit_machine(&parse_machine(&once).unwrap()), once);
    }
}

#[test]
fn six_node_network_has_six_blocks() {
    let cn = compile(&common::machine("accept_start")).unwrap();
    let text = emit_network(&cn.network);
    assert_eq!(text.lines().filter(|l| l.starts_with("node ")).count(), 6);
}

#[test]
fn equal_networks_emit_equal_bytes() {
    let a = compile(&common::machine("palindromes")).unwrap().network;
    let b = parse_network(&emit_network(&a)).unwrap();
    assert_eq!(emit_network(&a), emit_network(&b));
}

#[test]
fn undeclared_edge_endpoint_has_a_line_number() {
    let mut text = std::fs::read_to_string(common::root().join("networks/contains_b.net")).unwrap();
    text = text.replace("edge In Halt", "edge In Elsewhere");
    let line = text.lines().position(|l| l.contains("Elsewhere")).unwrap() + 1;
    let e = parse_network(&text).unwrap_err();
    assert_eq!(e.line, line);
    assert!(e.to_string().starts_with(&format!("line {line}:")));
}

#[test]
fn traces_of_real_runs_alternate() {
    let net = common::network("anbn");
    let sim = Simulator::new(&net, RunLimits::default());
    for (input, full) in [("a b", false), ("a a b b", true), ("b a", true)] {
        let (_, trace) = sim.run(&Word::parse_tokens(input).unwrap(), full).unwrap();
        let mut buf = Vec::new();
        write_trace(&mut buf, &trace, full).unwrap();
        let records = parse_trace(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(records.len(), trace.events.len());
        check_alternation(&records).unwrap();
        assert_eq!(records.iter().all(|r| r.contents.is_some()), full);
    }
}
