//! Library half of the `sfasim` binary: argument types, command handlers and
//! the benchmark harness.

pub mod bench;

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use sfasim_core::automata::{global_mintermise, local_mintermise};
use sfasim_core::reduction::reduce_once;
use sfasim_core::simulation::{check_agreement, run, SimOptions};
use sfasim_core::{
    complete, independent_bits, random_sfa, read_sfa, reduce_iterative, regex_compile, write_sfa, Algebra, Algo,
    Limits, Method, ResourceError, Sfa, SimError,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Resource(ResourceError),
    #[error("{0}")]
    Disagreement(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Resource(_) => 2,
            CliError::Disagreement(_) => 3,
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::Resource(r) => CliError::Resource(r),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<sfasim_core::ReduceError> for CliError {
    fn from(e: sfasim_core::ReduceError) -> Self {
        match e {
            sfasim_core::ReduceError::Sim(s) => s.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "sfasim",
    version,
    about = "Simulation preorders and reduction for symbolic automata"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum AlgoArg {
    Oracle,
    Iny,
    Global,
    Local,
    Nocount,
}

impl From<AlgoArg> for Algo {
    fn from(a: AlgoArg) -> Algo {
        match a {
            AlgoArg::Oracle => Algo::Oracle,
            AlgoArg::Iny => Algo::Iny,
            AlgoArg::Global => Algo::Global,
            AlgoArg::Local => Algo::Local,
            AlgoArg::Nocount => Algo::NoCount,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Sim,
    Bisim,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Scope {
    Global,
    Local,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Family {
    /// Seeded random automaton.
    Random,
    /// State 0 moves on each of `--bits` independent bits to its own accepting loop.
    Bits,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a simulation preorder and write it as CSV.
    Sim {
        #[arg(long, value_enum)]
        algo: AlgoArg,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Complete the automaton first; the relation is reported on the original states.
        #[arg(long)]
        complete: bool,
        /// Milliseconds.
        #[arg(long)]
        timeout: Option<u64>,
        #[arg(long, default_value_t = 1 << 20)]
        cap: usize,
    },
    /// Reduce an automaton by simulation or bisimulation.
    Reduce {
        #[arg(long, value_enum)]
        method: MethodArg,
        #[arg(long)]
        iterative: bool,
        #[arg(long, default_value_t = 10)]
        max_iters: usize,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Per-iteration CSV report.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print mintermisation statistics.
    Minterms {
        #[arg(long, value_enum)]
        scope: Scope,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1 << 20)]
        cap: usize,
    },
    /// Compile a regular expression to an SFA.
    Regex {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate an automaton.
    Gen {
        #[arg(long, value_enum, default_value = "random")]
        family: Family,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 2.5)]
        density: f64,
        /// `unicode`, `interval:LO:HI`, `bitvector:K` or `explicit:a,b,c`.
        #[arg(long, default_value = "unicode")]
        algebra: String,
        #[arg(long, default_value_t = 4)]
        pool: usize,
        #[arg(long, default_value_t = 8)]
        bits: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run algorithms over a directory of .sfa files and write a CSV.
    Bench {
        #[arg(long)]
        dir: PathBuf,
        /// Comma-separated algorithm names.
        #[arg(long, value_delimiter = ',', default_value = "global,local,nocount")]
        algos: Vec<AlgoArg>,
        /// Milliseconds per run.
        #[arg(long, default_value_t = 100_000)]
        timeout: u64,
        #[arg(long, default_value_t = 1 << 20)]
        cap: usize,
        #[arg(long)]
        out: PathBuf,
        /// Drop rows faster than this many milliseconds.
        #[arg(long)]
        min_ms: Option<f64>,
    },
    /// Cross-check every algorithm against the oracle.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

fn load(path: &Path) -> Result<Sfa, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    read_sfa(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn save(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

pub fn parse_algebra(desc: &str) -> Result<Arc<Algebra>, CliError> {
    let parts: Vec<&str> = desc.split(':').collect();
    let num = |s: &str| {
        s.parse::<u32>()
            .map_err(|_| usage(format!("bad number `{s}` in algebra `{desc}`")))
    };
    match parts.as_slice() {
        ["unicode"] => Ok(Algebra::unicode()),
        ["interval", lo, hi] => Algebra::interval(num(lo)?, num(hi)?).map_err(usage),
        ["bitvector", k] => Algebra::bitvector(num(k)?).map_err(usage),
        ["explicit", syms] => Algebra::explicit(syms.split(',')).map_err(usage),
        _ => Err(usage(format!(
            "unknown algebra `{desc}` (expected unicode, interval:LO:HI, bitvector:K or explicit:a,b,c)"
        ))),
    }
}

/// Runs one command; text for standard output is returned.
pub fn execute(cmd: Command) -> Result<String, CliError> {
    match cmd {
        Command::Sim {
            algo,
            input,
            out,
            complete: do_complete,
            timeout,
            cap,
        } => {
            let m = load(&input)?;
            let mut limits = Limits::default().with_cap(cap);
            if let Some(ms) = timeout {
                limits = limits.with_timeout(Duration::from_millis(ms));
            }
            let algo = Algo::from(algo);
            let target = if do_complete { complete(&m).sfa } else { m.clone() };
            let rel = run(algo, &target, &SimOptions::with_limits(limits))?
                .relation
                .restrict(m.num_states());
            let csv = rel.to_csv(algo.name());
            match out {
                Some(p) => save(&p, &csv).map(|_| String::new()),
                None => Ok(csv),
            }
        }
        Command::Reduce {
            method,
            iterative,
            max_iters,
            input,
            out,
            report,
        } => {
            let m = load(&input)?;
            let method = match method {
                MethodArg::Sim => Method::Simulation,
                MethodArg::Bisim => Method::Bisimulation,
            };
            if max_iters == 0 {
                return Err(usage("--max-iters must be at least 1"));
            }
            let (reduced, rep) = if iterative {
                reduce_iterative(&m, method, max_iters)?
            } else {
                let start = std::time::Instant::now();
                let r = reduce_once(&m, method, &Limits::default())?;
                let rep = sfasim_core::ReductionReport {
                    method,
                    iterations: vec![sfasim_core::reduction::Iteration {
                        direction: sfasim_core::reduction::Direction::Forward,
                        states_before: m.num_states(),
                        states_after: r.num_states(),
                        transitions_before: m.num_transitions(),
                        transitions_after: r.num_transitions(),
                        elapsed: start.elapsed(),
                    }],
                };
                (r, rep)
            };
            save(&out, &write_sfa(&reduced))?;
            if let Some(p) = report {
                save(&p, &rep.to_csv())?;
            }
            Ok(format!(
                "states {} -> {}, transitions {} -> {}\n",
                m.num_states(),
                reduced.num_states(),
                m.num_transitions(),
                reduced.num_transitions()
            ))
        }
        Command::Minterms { scope, input, cap } => {
            let m = load(&input)?;
            let limits = Limits::default().with_cap(cap);
            let (_, stats) = match scope {
                Scope::Global => global_mintermise(&m, &limits),
                Scope::Local => local_mintermise(&m, &limits),
            }
            .map_err(CliError::Resource)?;
            let blowup = stats.blowup().map_or("-".to_string(), |b| format!("{b:.3}"));
            Ok(format!(
                "transitions {}\nmintermised_transitions {}\nminterms {}\nblowup {}\n",
                stats.original_transitions, stats.mintermised_transitions, stats.minterms, blowup
            ))
        }
        Command::Regex { pattern, out } => {
            let m = regex_compile(&pattern).map_err(usage)?;
            save(&out, &write_sfa(&m))?;
            Ok(String::new())
        }
        Command::Gen {
            family,
            seed,
            n,
            density,
            algebra,
            pool,
            bits,
            out,
        } => {
            let m = match family {
                Family::Random => {
                    if n == 0 || density.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) || pool == 0 {
                        return Err(usage("--n, --density and --pool must be positive"));
                    }
                    random_sfa(seed, n, density, &parse_algebra(&algebra)?, pool)
                }
                Family::Bits => {
                    if !(1..=64).contains(&bits) {
                        return Err(usage("--bits must be in 1..=64"));
                    }
                    independent_bits(bits)
                }
            };
            save(&out, &write_sfa(&m))?;
            Ok(String::new())
        }
        Command::Bench {
            dir,
            algos,
            timeout,
            cap,
            out,
            min_ms,
        } => {
            let cfg = bench::BenchConfig {
                algos: algos.into_iter().map(Algo::from).collect(),
                timeout: Duration::from_millis(timeout),
                minterm_cap: cap,
                min_ms,
            };
            let (records, diagnostics) =
                bench::bench_dir(&dir, &cfg).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
            for d in diagnostics {
                eprintln!("{d}");
            }
            save(&out, &bench::to_csv(&records))?;
            Ok(String::new())
        }
        Command::Check { input } => {
            let m = load(&input)?;
            let rep = check_agreement(&m);
            let mut text = String::new();
            for o in &rep.outcomes {
                let status = match &o.result {
                    Ok(r) => format!("ok {} pairs {}", r.count(), r.digest()),
                    Err(e) => format!("skipped ({e})"),
                };
                text.push_str(&format!("{:<8} {status}\n", o.name));
            }
            match rep.discrepancy {
                None => Ok(text + "all algorithms agree\n"),
                Some(d) => {
                    let alg = rep.completed.algebra();
                    let word = d.word.map_or("none within bound".to_string(), |w| alg.format_word(&w));
                    Err(CliError::Disagreement(format!(
                        "{text}{} disagrees with the oracle on ({}, {}) (oracle has it: {}), word: {word}",
                        d.algo, d.pair.0, d.pair.1, d.in_oracle
                    )))
                }
            }
        }
    }
}
