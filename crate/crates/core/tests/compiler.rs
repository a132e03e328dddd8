mod common;

use nusp::compiler::{compile, compile_with, explain, CompileError, NodeRole};
use nusp::formats::parse_network;
use nusp::network::Persistence;
use nusp::oracle::{all_words, equivalence_check, EquivalenceOptions};
use nusp::runtime::{RunLimits, Simulator};
use nusp::symbol::{Symbol, Word};
use nusp::tm::{Move, Transition};

#[test]
fn size_law_for_one_to_ten_transitions() {
    let base = common::machine("anbn");
    for k in 1..=base.transitions.len() {
        let mut m = base.clone();
        m.transitions.truncate(k);
        let cn = compile(&m).unwrap();
        assert_eq!(cn.network.nodes.len(), 2 * k + 4, "|δ| = {k}");
        assert_eq!(cn.node_roles.len(), cn.network.nodes.len());
    }
}

#[test]
fn roles_are_laid_out_in_order() {
    let cn = compile(&common::machine("even_as")).unwrap();
    assert_eq!(&cn.node_roles[..4], &[NodeRole::Input, NodeRole::Sim, NodeRole::Res, NodeRole::Halt]);
    assert_eq!(cn.node_of(NodeRole::TransitionTail(4)), Some(13));
    assert_eq!(cn.network.input_node, 0);
    assert_eq!(cn.network.halt_node, 3);
}

#[test]
fn every_generated_symbol_is_explained() {
    for name in common::MACHINES {
        let cn = compile(&common::machine(name)).unwrap();
        for s in &cn.network.network_alphabet {
            assert!(
                cn.symbol_legend.contains_key(s) || cn.machine.tape_alphabet.contains(s),
                "{name}: {s} has no legend entry"
            );
        }
        let text = explain(&cn);
        let pairs = text.lines().filter(|l| l.starts_with("transition ")).count();
        assert_eq!(pairs, cn.machine.transitions.len());
    }
}

#[test]
fn reserved_names_are_refused() {
    let mut m = common::machine("even_as");
    m.states.insert(nusp::tm::State::new("accept"));
    m.transitions.push(Transition::new("o", "B", "accept", "B", Move::Right));
    // state `accept` is fine on its own; its marker only clashes with `<^accept`
    // if the generated names coincide, which they do not
    assert!(compile(&m).is_ok());

    let mut m = common::machine("even_as");
    m.tape_alphabet.insert(Symbol::new(">'"));
    m.transitions.push(Transition::new("o", ">'", "o", ">'", Move::Right));
    assert!(matches!(compile(&m), Err(CompileError::NameCollision { .. })));
}

/// Every stored word carries exactly one left-end marker and one right-end
/// marker, at the two ends.
#[test]
fn phase_marker_discipline() {
    for name in common::MACHINES {
        let m = common::machine(name);
        let cn = compile(&m).unwrap();
        let sim = Simulator::new(&cn.network, RunLimits::default().with_max_steps(200));
        let inputs: Vec<Symbol> = m.input_alphabet.iter().copied().collect();
        for w in all_words(&inputs, 4) {
            let (_, trace) = sim.run(&w, true).unwrap();
            for e in &trace.events {
                for (x, set) in e.contents.as_ref().unwrap().iter().enumerate() {
                    for z in set {
                        let phase = z.iter().filter(|s| cn.phase_markers.contains(s)).count();
                        let ends = z.iter().filter(|s| cn.end_markers.contains(s)).count();
                        assert_eq!(phase, 1, "{name} {{{w}}} step {} node {x}: {{{z}}}", e.step);
                        assert_eq!(ends, 1, "{name} {{{w}}} step {} node {x}: {{{z}}}", e.step);
                        assert!(cn.phase_markers.contains(&z[0]));
                        assert!(cn.end_markers.contains(&z[z.len() - 1]));
                    }
                }
            }
        }
    }
}

/// The word handed from In to Sim appears exactly after the second
/// splicing step, derived from `<w>`.
#[test]
fn bootstrap_after_two_splicing_steps() {
    for name in common::MACHINES {
        let m = common::machine(name);
        let cn = compile(&m).unwrap();
        let sim = Simulator::new(&cn.network, RunLimits::default().with_max_steps(3));
        let inputs: Vec<Symbol> = m.input_alphabet.iter().copied().collect();
        for w in all_words(&inputs, 4) {
            let (_, trace) = sim.run(&w, true).unwrap();
            let boot = cn.bootstrap_word(&w);
            let has = |i: usize| trace.events[i].contents.as_ref().unwrap().iter().any(|s| s.contains(&boot));
            // events[i] holds C_{i+1}
            assert!(!has(0) && !has(1), "{name} {{{w}}} too early");
            let c3 = trace.events[2].contents.as_ref().unwrap();
            assert!(c3[cn.network.input_node].contains(&boot), "{name} {{{w}}}");
        }
    }
}

#[test]
fn deleting_a_rule_breaks_equivalence() {
    let m = common::machine("even_as");
    let mut cn = compile(&m).unwrap();
    let head = cn.node_of(NodeRole::TransitionHead(0)).unwrap();
    // the head-first read/write rule; even_as never moves left, so the
    // head-last rules are unused
    let rules = &cn.network.nodes[head].processor.rules;
    let victim = rules.iter().find(|r| !r.u1.is_empty()).unwrap().clone();
    cn.network.nodes[head].processor.rules.remove(&victim);
    let report = equivalence_check("even_as-corrupted", &m, &cn, 4, EquivalenceOptions::default());
    assert!(!report.mismatches.is_empty());
}

#[test]
fn shipped_networks_match_the_compiler() {
    for name in common::MACHINES {
        let cn = compile(&common::machine(name)).unwrap();
        assert_eq!(common::network(name), cn.network, "networks/{name}.net is stale");
    }
}

#[test]
fn preserve_mode_is_recorded() {
    let m = common::machine("even_as");
    let cn = compile_with(&m, Persistence::Preserve).unwrap();
    assert_eq!(cn.persistence(), Persistence::Preserve);
    let text = nusp::formats::emit_network(&cn.network);
    assert!(text.contains("persistence preserve"));
    assert_eq!(parse_network(&text).unwrap().persistence, Persistence::Preserve);
}

/// Preserve mode keeps every word that ever entered a node, so wrong guesses
/// linger; acceptance still matches on short inputs.
#[test]
fn preserve_mode_on_short_inputs() {
    let m = common::machine("even_as");
    let cn = compile_with(&m, Persistence::Preserve).unwrap();
    let sim = Simulator::new(&cn.network, RunLimits::default().with_max_steps(80));
    for w in all_words(&m.input_alphabet.iter().copied().collect::<Vec<_>>(), 3) {
        let tm = nusp::tm_run(&m, &w, 100).unwrap();
        let (v, _) = sim.run(&w, false).unwrap();
        assert_eq!(tm.is_accept(), v.is_accepted(), "{{{w}}} tm={tm} nusp={v}");
    }
}

#[test]
fn empty_input_encodes_to_bare_markers() {
    let cn = compile(&common::machine("even_as")).unwrap();
    let enc = nusp::compiler::encode_input(&cn, &Word::empty()).unwrap();
    assert_eq!(enc.to_string(), "< >");
}
