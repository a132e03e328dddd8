//! Alternating splicing / communication semantics.
//!
//! `C_{2i} ⇒ C_{2i+1}` is a splicing step and `C_{2i+1} ⊨ C_{2i+2}` a
//! communication step. Both are two-phase: every node reads the previous
//! configuration only, so per-node work may run on a thread pool without
//! changing the result.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::filter::passes;
use crate::network::{
    initial_configuration, Configuration, InputError, Network, NodeId, Persistence,
    ValidationReport,
};
use crate::splice::{sigma, splice_products, WordSet};
use crate::symbol::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunLimits {
    pub max_steps: usize,
    pub max_word_length: usize,
    pub max_words_per_node: usize,
}

impl Default for RunLimits {
    fn default() -> Self {
        RunLimits { max_steps: 100_000, max_word_length: 10_000, max_words_per_node: 100_000 }
    }
}

impl RunLimits {
    pub fn with_max_steps(mut self, max_steps: usize) -> Self {
        self.max_steps = max_steps;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LimitBreach {
    #[error("node {node}: word of length {len} exceeds the word length cap")]
    WordTooLong { node: NodeId, len: usize },
    #[error("node {node}: more than {cap} words")]
    TooManyWords { node: NodeId, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// `m` is the first index with a nonempty halting node, i.e. `Time(w)`.
    Accepted { step: usize },
    StepLimitReached,
    ResourceLimitReached,
    CycleDetected,
    Exhausted,
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted { .. })
    }

    pub fn accepted_step(&self) -> Option<usize> {
        match self {
            Verdict::Accepted { step } => Some(*step),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accepted { step } => write!(f, "accepted step={step}"),
            Verdict::StepLimitReached => f.write_str("step-limit-reached"),
            Verdict::ResourceLimitReached => f.write_str("resource-limit-reached"),
            Verdict::CycleDetected => f.write_str("cycle-detected"),
            Verdict::Exhausted => f.write_str("exhausted"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    Splice,
    Communicate,
}

impl StepKind {
    /// Transitions out of even-indexed configurations splice.
    pub fn for_step(step: usize) -> Self {
        if step.is_multiple_of(2) {
            StepKind::Splice
        } else {
            StepKind::Communicate
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            StepKind::Splice => "splice",
            StepKind::Communicate => "communicate",
        }
    }
}

/// One transition `C_step → C_{step+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEvent {
    pub step: usize,
    pub kind: StepKind,
    /// Node cardinalities of `C_{step+1}` in declaration order.
    pub sizes: Vec<usize>,
    pub lost: usize,
    pub contents: Option<Vec<WordSet>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    pub node_names: Vec<String>,
    pub events: Vec<TraceEvent>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    #[error("invalid network:\n{0}")]
    Invalid(ValidationReport),
    #[error(transparent)]
    Input(#[from] InputError),
}

/// Precomputed per-network state for stepping.
pub struct Simulator<'n> {
    net: &'n Network,
    limits: RunLimits,
    neighbors: Vec<Vec<NodeId>>,
    /// σ over the axioms alone; constant for the whole run.
    axiom_sigma: Vec<WordSet>,
    pool: Option<rayon::ThreadPool>,
}

impl<'n> Simulator<'n> {
    pub fn new(net: &'n Network, limits: RunLimits) -> Self {
        let axiom_sigma = net
            .nodes
            .iter()
            .map(|n| sigma(&n.processor.rules, &n.processor.axioms))
            .collect();
        Simulator { net, limits, neighbors: net.neighbors(), axiom_sigma, pool: None }
    }

    /// Evaluates nodes on `threads` workers; 0 or 1 means sequential.
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.pool = if threads > 1 {
            rayon::ThreadPoolBuilder::new().num_threads(threads).build().ok()
        } else {
            None
        };
        self
    }

    pub fn network(&self) -> &Network {
        self.net
    }

    fn per_node<T: Send>(&self, f: impl Fn(NodeId) -> T + Sync + Send) -> Vec<T> {
        let n = self.net.nodes.len();
        match &self.pool {
            Some(pool) => pool.install(|| (0..n).into_par_iter().map(&f).collect()),
            None => (0..n).map(f).collect(),
        }
    }

    fn check_size(&self, node: NodeId, set: &WordSet) -> Result<(), LimitBreach> {
        if set.len() > self.limits.max_words_per_node {
            return Err(LimitBreach::TooManyWords { node, cap: self.limits.max_words_per_node });
        }
        Ok(())
    }

    fn splice_node(&self, node: NodeId, current: &WordSet) -> Result<WordSet, LimitBreach> {
        let p = &self.net.nodes[node].processor;
        let mut out = self.axiom_sigma[node].clone();
        if self.net.persistence == Persistence::Preserve {
            out.extend(current.iter().cloned());
        }
        if let Some(long) = out.iter().find(|z| z.len() > self.limits.max_word_length) {
            return Err(LimitBreach::WordTooLong { node, len: long.len() });
        }
        self.check_size(node, &out)?;
        if current.is_empty() || p.rules.is_empty() {
            return Ok(out);
        }
        // Pairs drawn only from the axioms are already in `out`; what remains
        // are the ordered pairs with at least one stored word.
        let fresh: Vec<&Word> = current.iter().filter(|z| !p.axioms.contains(*z)).collect();
        let all: Vec<&Word> = fresh.iter().copied().chain(p.axioms.iter()).collect();
        let limits = self.limits;
        let mut emit = |z: Word| {
            if z.len() > limits.max_word_length {
                return Err(LimitBreach::WordTooLong { node, len: z.len() });
            }
            out.insert(z);
            if out.len() > limits.max_words_per_node {
                return Err(LimitBreach::TooManyWords { node, cap: limits.max_words_per_node });
            }
            Ok(())
        };
        for rule in &p.rules {
            splice_products(rule, fresh.iter().copied(), all.iter().copied(), &mut emit)?;
            splice_products(rule, p.axioms.iter(), fresh.iter().copied(), &mut emit)?;
        }
        Ok(out)
    }

    pub fn splicing_step(&self, c: &Configuration) -> Result<Configuration, LimitBreach> {
        let contents = self
            .per_node(|x| self.splice_node(x, &c.contents[x]))
            .into_iter()
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Configuration { contents })
    }

    /// Returns the next configuration and the words that left a node but
    /// were admitted by no neighbour.
    pub fn communication_step(
        &self,
        c: &Configuration,
    ) -> Result<(Configuration, WordSet), LimitBreach> {
        let nodes = &self.net.nodes;
        let filter = |x: NodeId| &nodes[x].processor.filter;
        let next = self.per_node(|x| {
            let mut set: WordSet =
                c.contents[x].iter().filter(|z| !passes(z, filter(x))).cloned().collect();
            for &y in &self.neighbors[x] {
                set.extend(
                    c.contents[y]
                        .iter()
                        .filter(|z| passes(z, filter(y)) && passes(z, filter(x)))
                        .cloned(),
                );
            }
            self.check_size(x, &set).map(|_| set)
        });
        let contents = next.into_iter().collect::<Result<Vec<_>, _>>()?;
        let lost_parts = self.per_node(|y| {
            c.contents[y]
                .iter()
                .filter(|z| {
                    passes(z, filter(y)) && !self.neighbors[y].iter().any(|&x| passes(z, filter(x)))
                })
                .cloned()
                .collect::<Vec<_>>()
        });
        let lost = lost_parts.into_iter().flatten().collect();
        Ok((Configuration { contents }, lost))
    }

    pub fn is_halting(&self, c: &Configuration) -> bool {
        is_halting(self.net, c)
    }

    /// True when no word can ever appear again.
    fn is_exhausted(&self, c: &Configuration) -> bool {
        c.is_empty() && self.axiom_sigma.iter().all(|s| s.is_empty())
    }

    pub fn run(&self, input: &Word, record_contents: bool) -> Result<(Verdict, Trace), RunError> {
        let report = self.net.validate();
        if !report.is_ok() {
            return Err(RunError::Invalid(report));
        }
        let mut current = initial_configuration(self.net, input)?;
        let mut trace = Trace { node_names: self.net.node_names(), events: Vec::new() };
        let mut seen: HashSet<Configuration> = HashSet::new();
        seen.insert(current.clone());

        let mut step = 0;
        let verdict = loop {
            if step >= self.limits.max_steps {
                break Verdict::StepLimitReached;
            }
            let kind = StepKind::for_step(step);
            let outcome = match kind {
                StepKind::Splice => self.splicing_step(&current).map(|c| (c, 0)),
                StepKind::Communicate => {
                    self.communication_step(&current).map(|(c, lost)| (c, lost.len()))
                }
            };
            let Ok((next, lost)) = outcome else {
                break Verdict::ResourceLimitReached;
            };
            trace.events.push(TraceEvent {
                step,
                kind,
                sizes: next.sizes(),
                lost,
                contents: record_contents.then(|| next.contents.clone()),
            });
            current = next;
            step += 1;
            if self.is_halting(&current) {
                break Verdict::Accepted { step };
            }
            if step % 2 == 0 {
                if self.is_exhausted(&current) {
                    break Verdict::Exhausted;
                }
                if !seen.insert(current.clone()) {
                    break Verdict::CycleDetected;
                }
            }
        };
        Ok((verdict, trace))
    }
}

pub fn splicing_step(
    net: &Network,
    c: &Configuration,
    limits: RunLimits,
) -> Result<Configuration, LimitBreach> {
    Simulator::new(net, limits).splicing_step(c)
}

pub fn communication_step(
    net: &Network,
    c: &Configuration,
    limits: RunLimits,
) -> Result<(Configuration, WordSet), LimitBreach> {
    Simulator::new(net, limits).communication_step(c)
}

/// Axioms are not stored in configurations, so they never count here.
pub fn is_halting(net: &Network, c: &Configuration) -> bool {
    c.contents.get(net.halt_node).is_some_and(|s| !s.is_empty())
}

pub fn run(net: &Network, input: &Word, limits: RunLimits) -> Result<(Verdict, Trace), RunError> {
    Simulator::new(net, limits).run(input, false)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("input {word} was not accepted: {verdict}")]
    NotAccepted { word: Word, verdict: Verdict },
    #[error(transparent)]
    Run(#[from] RunError),
}

/// Maximum accepting step per input length over the supplied words.
pub fn time_profile(
    net: &Network,
    words: &[Word],
    limits: RunLimits,
) -> Result<BTreeMap<usize, usize>, ProfileError> {
    let sim = Simulator::new(net, limits);
    let mut table = BTreeMap::new();
    for word in words {
        let (verdict, _) = sim.run(word, false)?;
        let Some(m) = verdict.accepted_step() else {
            return Err(ProfileError::NotAccepted { word: word.clone(), verdict });
        };
        let entry = table.entry(word.len()).or_insert(0);
        *entry = (*entry).max(m);
    }
    Ok(table)
}
