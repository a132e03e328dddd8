//! The `nusp` command line.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::compiler::{compile_with, explain};
use crate::formats::network::emit_network_with_legend;
use crate::formats::{parse_machine, parse_network, write_trace};
use crate::network::{Network, Persistence};
use crate::oracle::{differential_sigma, equivalence_check, EquivalenceOptions, InstanceParams};
use crate::runtime::{time_profile, ProfileError, RunError, RunLimits, Simulator};
use crate::symbol::Word;
use crate::tm::TuringMachine;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "nusp", version, about = "Networks of uniform splicing processors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a network on one input word.
    Run {
        #[arg(long)]
        network: PathBuf,
        /// Whitespace-separated tokens; empty for the empty word.
        #[arg(long, allow_hyphen_values = true)]
        input: String,
        #[arg(long, default_value_t = RunLimits::default().max_steps)]
        max_steps: usize,
        /// Write a JSON Lines trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Include node contents in the trace.
        #[arg(long, requires = "trace")]
        full: bool,
        /// Split the input into single-character tokens.
        #[arg(long)]
        chars: bool,
        /// Worker threads for in-step evaluation.
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Compile a Turing machine file into a network file.
    Compile {
        #[arg(long)]
        tm: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        #[arg(long, default_value = "literal")]
        persistence: Persistence,
    },
    /// Compare the splicing operation with the reference oracle.
    CheckSigma {
        #[arg(long, default_value_t = 1000)]
        cases: u64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Compare a machine with its compiled network on all short inputs.
    CheckEquiv {
        #[arg(long)]
        tm: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[arg(long, default_value_t = EquivalenceOptions::default().budget_factor)]
        budget_factor: usize,
    },
    /// Print the maximum accepting step per input length.
    Profile {
        #[arg(long)]
        network: PathBuf,
        /// One input word per line.
        #[arg(long)]
        inputs: PathBuf,
        #[arg(long, default_value_t = RunLimits::default().max_steps)]
        max_steps: usize,
        #[arg(long)]
        chars: bool,
    },
    /// Check a network file for structural problems.
    Validate {
        #[arg(long)]
        network: PathBuf,
    },
    /// Describe the network compiled from a machine.
    Explain {
        #[arg(long)]
        tm: PathBuf,
        #[arg(long, default_value = "literal")]
        persistence: Persistence,
    },
}

/// Parses `text` as an input word.
pub fn parse_input(text: &str, chars: bool) -> Result<Word, String> {
    if chars {
        Ok(Word::from_chars(text))
    } else {
        Word::parse_tokens(text).map_err(|e| e.to_string())
    }
}

struct Failure(i32, String);

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure(EXIT_INVALID, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(EXIT_INVALID, format!("{}: {e}", path.display())))
}

fn load_network(path: &Path) -> Result<Network, Failure> {
    parse_network(&read(path)?).map_err(|e| Failure(EXIT_INVALID, format!("{}: {e}", path.display())))
}

fn load_machine(path: &Path) -> Result<TuringMachine, Failure> {
    parse_machine(&read(path)?).map_err(|e| Failure(EXIT_INVALID, format!("{}: {e}", path.display())))
}

fn invalid(e: impl ToString) -> Failure {
    Failure(EXIT_INVALID, e.to_string())
}

/// Runs the command line and returns the process exit code.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Run { network, input, max_steps, trace, full, chars, threads } => {
            let net = load_network(&network)?;
            let word = parse_input(&input, chars).map_err(invalid)?;
            let limits = RunLimits::default().with_max_steps(max_steps);
            let sim = Simulator::new(&net, limits).with_threads(threads);
            let (verdict, tr) = sim.run(&word, full).map_err(|e| match e {
                RunError::Invalid(r) => Failure(EXIT_INVALID, format!("invalid network\n{r}")),
                RunError::Input(e) => invalid(e),
            })?;
            if let Some(path) = trace {
                let mut f = io::BufWriter::new(fs::File::create(&path)?);
                write_trace(&mut f, &tr, full)?;
                f.flush()?;
            }
            writeln!(out, "{verdict}")?;
            match verdict.accepted_step() {
                Some(m) => {
                    writeln!(out, "time={m}")?;
                    Ok(EXIT_OK)
                }
                None => {
                    writeln!(out, "time=undefined")?;
                    Ok(EXIT_REJECT)
                }
            }
        }
        Command::Compile { tm, output, persistence } => {
            let m = load_machine(&tm)?;
            let cn = compile_with(&m, persistence).map_err(invalid)?;
            let text = emit_network_with_legend(&cn.network, &cn.symbol_legend);
            fs::write(&output, text)?;
            writeln!(
                out,
                "nodes={} edges={} persistence={}",
                cn.network.nodes.len(),
                cn.network.edges.len(),
                cn.persistence()
            )?;
            Ok(EXIT_OK)
        }
        Command::CheckSigma { cases, seed } => {
            let params = InstanceParams::default().with_seed(seed);
            match differential_sigma(&params, cases) {
                Ok(()) => {
                    writeln!(out, "pass cases={cases} seed={seed}")?;
                    Ok(EXIT_OK)
                }
                Err(cx) => {
                    writeln!(out, "fail seed={seed}\n{cx}")?;
                    Ok(EXIT_REJECT)
                }
            }
        }
        Command::CheckEquiv { tm, max_len, budget_factor } => {
            let m = load_machine(&tm)?;
            let cn = compile_with(&m, Persistence::Literal).map_err(invalid)?;
            let opts = EquivalenceOptions { budget_factor, ..Default::default() };
            let name = tm.file_stem().map_or("machine".into(), |s| s.to_string_lossy().into_owned());
            let report = equivalence_check(&name, &m, &cn, max_len, opts);
            write!(out, "{report}")?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_REJECT })
        }
        Command::Profile { network, inputs, max_steps, chars } => {
            let net = load_network(&network)?;
            let words = read(&inputs)?
                .lines()
                .filter(|l| !l.trim_start().starts_with('#'))
                .filter(|l| chars || !l.trim().is_empty())
                .map(|l| parse_input(l.trim(), chars))
                .collect::<Result<Vec<_>, _>>()
                .map_err(invalid)?;
            let limits = RunLimits::default().with_max_steps(max_steps);
            match time_profile(&net, &words, limits) {
                Ok(table) => {
                    writeln!(out, "n\ttime")?;
                    for (n, t) in table {
                        writeln!(out, "{n}\t{t}")?;
                    }
                    Ok(EXIT_OK)
                }
                Err(ProfileError::NotAccepted { word, verdict }) => {
                    writeln!(out, "not accepted: {{{word}}} {verdict}")?;
                    Ok(EXIT_REJECT)
                }
                Err(ProfileError::Run(RunError::Invalid(r))) => Err(Failure(EXIT_INVALID, format!("invalid network\n{r}"))),
                Err(ProfileError::Run(e)) => Err(invalid(e)),
            }
        }
        Command::Validate { network } => {
            let net = load_network(&network)?;
            let report = net.validate();
            if report.violations.is_empty() && report.warnings.is_empty() {
                writeln!(out, "ok")?;
            } else {
                write!(out, "{report}")?;
            }
            Ok(if report.is_ok() { EXIT_OK } else { EXIT_INVALID })
        }
        Command::Explain { tm, persistence } => {
            let m = load_machine(&tm)?;
            let cn = compile_with(&m, persistence).map_err(invalid)?;
            write!(out, "{}", explain(&cn))?;
            Ok(EXIT_OK)
        }
    }
}

pub fn main() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_cli(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
