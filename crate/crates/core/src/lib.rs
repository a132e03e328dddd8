//! Networks of uniform splicing processors.
//!
//! The crate provides the splicing operation and random-context filters, a
//! step-exact simulator for networks whose nodes share one filter for input
//! and output, a compiler from nondeterministic Turing machines into such
//! networks, and independent oracles used to cross-check all of the above.

pub mod cli;
pub mod compiler;
pub mod filter;
pub mod formats;
pub mod network;
pub mod oracle;
pub mod runtime;
pub mod splice;
pub mod symbol;
pub mod tm;

pub use compiler::{compile, compile_with, encode_input, explain, CompiledNetwork, NodeRole};
pub use filter::{filter_set, passes, Filter, FilterMode};
pub use network::{initial_configuration, validate, Configuration, Network, Persistence, UniformProcessor};
pub use runtime::{run, time_profile, RunLimits, Simulator, Trace, TraceEvent, Verdict};
pub use splice::{alph, sigma, splice_pair, SplicingRule, WordSet};
pub use symbol::{Symbol, SymbolSet, Word};
pub use tm::{tm_run, tm_successors, Move, State, TmVerdict, Transition, TuringMachine};
