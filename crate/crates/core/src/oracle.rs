//! Reference implementations and differential checks.
//!
//! Nothing in here calls into the occurrence search of [`crate::splice`]:
//! the naive σ enumerates factorizations explicitly, and the naive step
//! functions are written against that naive σ.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::compiler::CompiledNetwork;
use crate::filter::{passes, Filter};
use crate::network::{Configuration, Network, Persistence};
use crate::runtime::{RunLimits, Simulator, Verdict};
use crate::splice::{sigma, SplicingRule, WordSet};
use crate::symbol::{sorted_by_token, Symbol, Word};
use crate::tm::{tm_run, TmVerdict, TuringMachine};

/// Every way to write `w` as `a · mid · c` with `mid` of the given length.
fn factorizations(w: &[Symbol], mid: usize) -> impl Iterator<Item = (&[Symbol], &[Symbol], &[Symbol])> {
    (0..=w.len()).filter(move |&i| i + mid <= w.len()).map(move |i| {
        let (a, rest) = w.split_at(i);
        let (m, c) = rest.split_at(mid);
        (a, m, c)
    })
}

/// `σ_R(L)` straight from the definition: for every rule and every ordered
/// pair, try every factorization `x = x1 u1 u2 x2`, `y = y1 v1 v2 y2`.
pub fn naive_sigma(rules: &[SplicingRule], lang: &WordSet) -> WordSet {
    let mut out = WordSet::new();
    for r in rules {
        let (u1, u2, v1, v2) = (&r.u1[..], &r.u2[..], &r.v1[..], &r.v2[..]);
        for x in lang {
            for y in lang {
                for (x1, mx, _x2) in factorizations(x, u1.len() + u2.len()) {
                    if mx[..u1.len()] != *u1 || mx[u1.len()..] != *u2 {
                        continue;
                    }
                    for (_y1, my, y2) in factorizations(y, v1.len() + v2.len()) {
                        if my[..v1.len()] != *v1 || my[v1.len()..] != *v2 {
                            continue;
                        }
                        let mut z = x1.to_vec();
                        z.extend_from_slice(u1);
                        z.extend_from_slice(v2);
                        z.extend_from_slice(y2);
                        out.insert(Word::new(z));
                    }
                }
            }
        }
    }
    out
}

/// Shape of generated σ instances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstanceParams {
    pub alphabet_size: usize,
    pub max_word_len: usize,
    pub max_set_size: usize,
    pub max_component_len: usize,
    pub max_rules: usize,
    /// Chance that a rule component is λ.
    pub lambda_prob: f64,
    pub seed: u64,
}

impl Default for InstanceParams {
    fn default() -> Self {
        InstanceParams {
            alphabet_size: 3,
            max_word_len: 5,
            max_set_size: 4,
            max_component_len: 2,
            max_rules: 3,
            lambda_prob: 0.3,
            seed: 7,
        }
    }
}

impl InstanceParams {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn alphabet(&self) -> Vec<Symbol> {
        (0..self.alphabet_size)
            .map(|i| Symbol::new(&((b'a' + (i % 26) as u8) as char).to_string().repeat(1 + i / 26)))
            .collect()
    }

    /// Instance `case` of the stream for this seed. Each case has its own
    /// generator stream, so cases can be produced in any order.
    pub fn instance(&self, case: u64) -> (Vec<SplicingRule>, WordSet) {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(case);
        let alpha = self.alphabet();
        let word = |rng: &mut ChaCha8Rng, min: usize, max: usize| -> Word {
            let n = rng.gen_range(min..=max);
            (0..n).map(|_| alpha[rng.gen_range(0..alpha.len())]).collect()
        };
        let component = |rng: &mut ChaCha8Rng| {
            if self.max_component_len == 0 || rng.gen_bool(self.lambda_prob) {
                Word::empty()
            } else {
                word(rng, 1, self.max_component_len)
            }
        };
        let n_rules = rng.gen_range(1..=self.max_rules.max(1));
        let rules = (0..n_rules)
            .map(|_| {
                let parts = [(); 4].map(|_| component(&mut rng));
                let [u1, u2, v1, v2] = parts;
                SplicingRule::new(u1, u2, v1, v2)
            })
            .collect();
        let n_words = rng.gen_range(1..=self.max_set_size.max(1));
        let mut lang = WordSet::new();
        for _ in 0..n_words {
            lang.insert(word(&mut rng, 0, self.max_word_len));
        }
        (rules, lang)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaCounterexample {
    pub case: u64,
    pub rules: Vec<SplicingRule>,
    pub lang: WordSet,
    pub expected: WordSet,
    pub actual: WordSet,
}

impl fmt::Display for SigmaCounterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: &WordSet| s.iter().map(|w| format!("{{{w}}}")).collect::<Vec<_>>().join(" ");
        writeln!(f, "case {}", self.case)?;
        for r in &self.rules {
            writeln!(f, "  rule {r}")?;
        }
        writeln!(f, "  L = {}", show(&self.lang))?;
        let missing: WordSet = self.expected.difference(&self.actual).cloned().collect();
        let extra: WordSet = self.actual.difference(&self.expected).cloned().collect();
        writeln!(f, "  missing: {}", show(&missing))?;
        write!(f, "  unexpected: {}", show(&extra))
    }
}

/// Compares [`sigma`] against [`naive_sigma`] on `cases` instances.
pub fn differential_sigma(params: &InstanceParams, cases: u64) -> Result<(), Box<SigmaCounterexample>> {
    differential_sigma_with(params, cases, |rules, lang| sigma(rules, lang))
}

/// As [`differential_sigma`] with the implementation under test supplied by
/// the caller. Reports the lowest failing case.
pub fn differential_sigma_with<F>(params: &InstanceParams, cases: u64, under_test: F) -> Result<(), Box<SigmaCounterexample>>
where
    F: Fn(&[SplicingRule], &WordSet) -> WordSet + Sync,
{
    let failure = (0..cases).into_par_iter().find_map_first(|case| {
        let (rules, lang) = params.instance(case);
        let expected = naive_sigma(&rules, &lang);
        let actual = under_test(&rules, &lang);
        (expected != actual).then(|| Box::new(SigmaCounterexample { case, rules, lang, expected, actual }))
    });
    match failure {
        Some(cx) => Err(cx),
        None => Ok(()),
    }
}

/// Splicing step from the formula, using [`naive_sigma`].
pub fn naive_splicing_step(net: &Network, c: &Configuration) -> Configuration {
    let contents = net
        .nodes
        .iter()
        .zip(&c.contents)
        .map(|(node, stored)| {
            let p = &node.processor;
            let pool: WordSet = stored.union(&p.axioms).cloned().collect();
            let rules: Vec<SplicingRule> = p.rules.iter().cloned().collect();
            let mut next = naive_sigma(&rules, &pool);
            if net.persistence == Persistence::Preserve {
                next.extend(stored.iter().cloned());
            }
            next
        })
        .collect();
    Configuration { contents }
}

/// Communication step from the formula; also returns the lost words.
pub fn naive_communication_step(net: &Network, c: &Configuration) -> (Configuration, WordSet) {
    let n = net.nodes.len();
    let filter = |x: usize| -> &Filter { &net.nodes[x].processor.filter };
    let adjacent = |x: usize, y: usize| x != y && net.edges.contains(&(x.min(y), x.max(y)));
    let mut contents = Vec::with_capacity(n);
    for x in 0..n {
        let mut set: WordSet = c.contents[x].iter().filter(|z| !passes(z, filter(x))).cloned().collect();
        for y in (0..n).filter(|&y| adjacent(x, y)) {
            for z in &c.contents[y] {
                if passes(z, filter(y)) && passes(z, filter(x)) {
                    set.insert(z.clone());
                }
            }
        }
        contents.push(set);
    }
    let mut lost = WordSet::new();
    for y in 0..n {
        for z in &c.contents[y] {
            if passes(z, filter(y)) && !(0..n).any(|x| adjacent(x, y) && passes(z, filter(x))) {
                lost.insert(z.clone());
            }
        }
    }
    (Configuration { contents }, lost)
}

/// A hand-derived communication step.
#[derive(Debug, Clone)]
pub struct CommFixture {
    pub name: String,
    pub net: Network,
    pub before: Configuration,
    pub after: Configuration,
    pub lost: WordSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureDiff {
    pub fixture: String,
    /// `None` for the lost set.
    pub node: Option<String>,
    pub missing: Vec<Word>,
    pub unexpected: Vec<Word>,
}

impl fmt::Display for FixtureDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let place = self.node.as_deref().map_or("lost set".to_string(), |n| format!("node {n}"));
        let list = |ws: &[Word]| ws.iter().map(|w| format!("{{{w}}}")).collect::<Vec<_>>().join(" ");
        write!(
            f,
            "fixture {}: {place}: missing [{}], unexpected [{}]",
            self.fixture,
            list(&self.missing),
            list(&self.unexpected)
        )
    }
}

fn set_diff(fixture: &str, node: Option<String>, want: &WordSet, got: &WordSet) -> Option<FixtureDiff> {
    (want != got).then(|| FixtureDiff {
        fixture: fixture.to_string(),
        node,
        missing: want.difference(got).cloned().collect(),
        unexpected: got.difference(want).cloned().collect(),
    })
}

/// Runs each fixture through the simulator's communication step and reports
/// the first disagreement.
pub fn communication_fixture_check(fixtures: &[CommFixture]) -> Result<(), FixtureDiff> {
    for fx in fixtures {
        let sim = Simulator::new(&fx.net, RunLimits::default());
        let (after, lost) = sim
            .communication_step(&fx.before)
            .unwrap_or_else(|e| panic!("fixture {}: {e}", fx.name));
        for (x, node) in fx.net.nodes.iter().enumerate() {
            let empty = WordSet::new();
            let want = fx.after.contents.get(x).unwrap_or(&empty);
            let got = after.contents.get(x).unwrap_or(&empty);
            if let Some(d) = set_diff(&fx.name, Some(node.name.clone()), want, got) {
                return Err(d);
            }
        }
        if let Some(d) = set_diff(&fx.name, None, &fx.lost, &lost) {
            return Err(d);
        }
    }
    Ok(())
}

/// The three hand-derived communication steps: a word lost between two
/// strong filters, a word moved between two weak filters, and a word lost
/// from an isolated node.
pub fn standard_fixtures() -> Vec<CommFixture> {
    use crate::network::UniformProcessor;
    use crate::symbol::symbols;

    let ab = || Word::parse_tokens("a b").unwrap();
    let set = |ws: &[Word]| ws.iter().cloned().collect::<WordSet>();
    let base = || Network::new(symbols("a b"), symbols("a b < >"), Symbol::new("<"), Symbol::new(">"));
    let pair = |name: &str, fx: Filter, fy: Filter, after_y: WordSet, lost: WordSet| {
        let mut net = base();
        let x = net.add_node("x", UniformProcessor::new(fx));
        let y = net.add_node("y", UniformProcessor::new(fy));
        net.add_edge(x, y);
        net.input_node = x;
        net.halt_node = y;
        CommFixture {
            name: name.into(),
            net,
            before: Configuration { contents: vec![set(&[ab()]), WordSet::new()] },
            after: Configuration { contents: vec![WordSet::new(), after_y] },
            lost,
        }
    };
    let lost = pair(
        "strong-lost",
        Filter::strong(symbols("a"), symbols("")),
        Filter::strong(symbols("a"), symbols("b")),
        WordSet::new(),
        set(&[ab()]),
    );
    let transfer = pair(
        "weak-transfer",
        Filter::weak(symbols("a"), symbols("")),
        Filter::weak(symbols("b"), symbols("")),
        set(&[ab()]),
        WordSet::new(),
    );
    let mut net = base();
    net.add_node("x", UniformProcessor::new(Filter::weak(symbols("a"), symbols(""))));
    net.add_node("h", UniformProcessor::new(Filter::weak(symbols("<"), symbols(""))));
    net.input_node = 0;
    net.halt_node = 1;
    let isolated = CommFixture {
        name: "isolated-lost".into(),
        net,
        before: Configuration { contents: vec![set(&[ab()]), WordSet::new()] },
        after: Configuration::empty(2),
        lost: set(&[ab()]),
    };
    vec![lost, transfer, isolated]
}

/// All words over `alphabet` of length at most `max_len`, shortest first,
/// then by token order.
pub fn all_words(alphabet: &[Symbol], max_len: usize) -> Vec<Word> {
    let alpha = sorted_by_token(alphabet);
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alpha.len());
        for w in &layer {
            for &s in &alpha {
                let mut v = w.to_vec();
                v.push(s);
                next.push(Word::new(v));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceOptions {
    /// Step bound for the machine oracle.
    pub tm_bound: usize,
    /// Multiplier on the nominal budget `c1·d + c0` given to the network.
    pub budget_factor: usize,
    pub max_word_length: usize,
    pub max_words_per_node: usize,
}

impl Default for EquivalenceOptions {
    fn default() -> Self {
        EquivalenceOptions { tm_bound: 2_000, budget_factor: 4, max_word_length: 10_000, max_words_per_node: 100_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub word: Word,
    pub tm: TmVerdict,
    pub nusp: Verdict,
}

/// One accepted word: machine depth and network time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimingSample {
    pub word: Word,
    pub depth: usize,
    pub time: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub machine: String,
    pub tested: usize,
    pub mismatches: Vec<Mismatch>,
    /// Fitted over every accepted word; `None` when nothing was accepted.
    pub fitted: Option<(usize, usize)>,
    /// Largest step count any network run used.
    pub max_steps: usize,
    /// Step budget the network runs were given.
    pub budget: usize,
    pub samples: Vec<TimingSample>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "machine {}", self.machine)?;
        writeln!(f, "tested {} words, step budget {}", self.tested, self.budget)?;
        writeln!(f, "accepted {}", self.samples.len())?;
        match self.fitted {
            Some((c1, c0)) => writeln!(f, "fitted c1={c1} c0={c0}")?,
            None => writeln!(f, "fitted none")?,
        }
        writeln!(f, "max steps {}", self.max_steps)?;
        writeln!(f, "mismatches {}", self.mismatches.len())?;
        for m in &self.mismatches {
            writeln!(f, "  {{{}}} tm={} nusp={}", m.word, m.tm, m.nusp)?;
        }
        Ok(())
    }
}

/// Smallest-slope linear upper bound `c1·d + c0` through the samples: `c1`
/// is the steepest rise between any two depths, `c0` then covers every
/// sample.
pub fn fit_overhead(samples: &[(usize, usize)]) -> Option<(usize, usize)> {
    let mut by_depth: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for &(d, t) in samples {
        let e = by_depth.entry(d).or_insert((t, t));
        e.0 = e.0.min(t);
        e.1 = e.1.max(t);
    }
    if by_depth.is_empty() {
        return None;
    }
    let mut c1 = 0;
    for (&d0, &(lo, _)) in &by_depth {
        for (&d1, &(_, hi)) in by_depth.range(d0 + 1..) {
            if hi > lo {
                c1 = c1.max((hi - lo).div_ceil(d1 - d0));
            }
        }
    }
    let c0 = by_depth.iter().map(|(&d, &(_, hi))| hi.saturating_sub(c1 * d)).max().unwrap_or(0);
    Some((c1, c0))
}

/// Samples whose time exceeds `c1·depth + c0`.
pub fn bound_violations(samples: &[TimingSample], c1: usize, c0: usize) -> Vec<TimingSample> {
    samples.iter().filter(|s| s.time > c1 * s.depth + c0).cloned().collect()
}

/// Runs the machine oracle and the compiled network on every input word of
/// length at most `max_len`.
///
/// The network has no rejection signal; a word counts as rejected by the
/// network when it is not accepted within `budget_factor · (c1·D + c0)`
/// steps, where `D` is the largest machine depth seen and `c1, c0` are the
/// compiler's nominal constants.
pub fn equivalence_check(
    name: &str,
    m: &TuringMachine,
    cn: &CompiledNetwork,
    max_len: usize,
    opts: EquivalenceOptions,
) -> EquivalenceReport {
    let alphabet: Vec<Symbol> = m.input_alphabet.iter().copied().collect();
    let words = all_words(&alphabet, max_len);
    let tm: Vec<TmVerdict> = words
        .par_iter()
        .map(|w| tm_run(m, w, opts.tm_bound).unwrap_or(TmVerdict::BoundExceeded))
        .collect();
    let max_depth = tm
        .iter()
        .map(|v| match *v {
            TmVerdict::Accept { depth } | TmVerdict::Reject { depth } => depth,
            TmVerdict::BoundExceeded => opts.tm_bound,
        })
        .max()
        .unwrap_or(0);
    let (c1, c0) = cn.nominal_overhead();
    let budget = opts.budget_factor.max(1) * (c1 * max_depth + c0);
    let limits = RunLimits {
        max_steps: budget,
        max_word_length: opts.max_word_length,
        max_words_per_node: opts.max_words_per_node,
    };
    let sim = Simulator::new(&cn.network, limits);
    let nusp: Vec<(Verdict, usize)> = words
        .par_iter()
        .map(|w| match sim.run(w, false) {
            Ok((v, trace)) => (v, trace.events.len()),
            Err(_) => (Verdict::ResourceLimitReached, 0),
        })
        .collect();

    let mut report = EquivalenceReport {
        machine: name.to_string(),
        tested: words.len(),
        mismatches: Vec::new(),
        fitted: None,
        max_steps: 0,
        budget,
        samples: Vec::new(),
    };
    for ((word, tv), (nv, used)) in words.into_iter().zip(tm).zip(nusp) {
        report.max_steps = report.max_steps.max(used);
        if tv.is_accept() != nv.is_accepted() {
            report.mismatches.push(Mismatch { word: word.clone(), tm: tv, nusp: nv });
        }
        if let (TmVerdict::Accept { depth }, Some(time)) = (tv, nv.accepted_step()) {
            report.samples.push(TimingSample { word, depth, time });
        }
    }
    let pts: Vec<(usize, usize)> = report.samples.iter().map(|s| (s.depth, s.time)).collect();
    report.fitted = fit_overhead(&pts);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::w;

    fn set(ws: &[&str]) -> WordSet {
        ws.iter().map(|s| w(s)).collect()
    }

    #[test]
    fn naive_sigma_examples() {
        let r = SplicingRule::new(w("a"), w("b"), w("c"), w("d"));
        assert_eq!(naive_sigma(&[r], &set(&["a b", "c d"])), set(&["a d"]));
        assert!(naive_sigma(&[], &set(&["a b"])).is_empty());
        let aa = SplicingRule::new(w("a"), w("a"), w("a"), w("a"));
        assert_eq!(naive_sigma(&[aa], &set(&["a a a"])), set(&["a a", "a a a", "a a a a"]));
    }

    #[test]
    fn instances_are_replayable() {
        let p = InstanceParams::default();
        assert_eq!(p.instance(17), p.instance(17));
        assert_ne!(p.instance(17), p.with_seed(8).instance(17));
    }

    #[test]
    fn zero_cases_pass() {
        assert!(differential_sigma_with(&InstanceParams::default(), 0, |_, _| WordSet::new()).is_ok());
    }

    #[test]
    fn fixtures_pass_and_wrong_lost_is_named() {
        let mut fx = standard_fixtures();
        communication_fixture_check(&fx).unwrap();
        communication_fixture_check(&[]).unwrap();
        fx[1].lost = set(&["b a"]);
        let d = communication_fixture_check(&fx).unwrap_err();
        assert_eq!(d.node, None);
        assert_eq!(d.missing, vec![w("b a")]);
        assert!(d.to_string().contains("{b a}"));
    }

    #[test]
    fn all_words_count() {
        assert_eq!(all_words(&[Symbol::new("a"), Symbol::new("b")], 6).len(), 127);
        assert_eq!(all_words(&[Symbol::new("a")], 0), vec![Word::empty()]);
    }

    #[test]
    fn overhead_fit() {
        let pts: Vec<_> = [(0, 8)].into_iter().chain((1..6).map(|d| (d, 10 * d + 2))).collect();
        assert_eq!(fit_overhead(&pts), Some((10, 8)));
        assert_eq!(fit_overhead(&[(3, 7)]), Some((0, 7)));
        assert_eq!(fit_overhead(&[]), None);
    }
}
