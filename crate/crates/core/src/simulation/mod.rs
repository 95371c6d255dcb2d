//! Simulation preorders: a fixpoint oracle, INY on the syntactic NFA, and the
//! three symbolic algorithms (global, local, counter-free), plus bisimulation.
//!
//! All algorithms return a [`Relation`] where `(i, j)` means `j` simulates `i`.
//! LocalSim, NoCountSim and bisimulation require a complete SFA; see
//! [`complete`](crate::automata::complete).

mod agreement;
mod bisim;
mod counting;
mod nocount;
mod oracle;
mod relation;

use std::fmt;
use std::str::FromStr;

use crate::automata::{global_mintermise, incompleteness_witness, local_mintermise, Sfa};
use crate::error::SimError;
use crate::limits::Limits;

pub use agreement::{check_agreement, check_agreement_with, AgreementReport, AlgoOutcome, Discrepancy};
pub use bisim::bisimulation;
pub use relation::Relation;

use counting::{counting_sim, OnZero};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algo {
    Oracle,
    Iny,
    Global,
    Local,
    NoCount,
}

impl Algo {
    pub const ALL: [Algo; 5] = [Algo::Oracle, Algo::Iny, Algo::Global, Algo::Local, Algo::NoCount];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Oracle => "oracle",
            Algo::Iny => "iny",
            Algo::Global => "global",
            Algo::Local => "local",
            Algo::NoCount => "nocount",
        }
    }

    /// LocalSim and NoCountSim only accept complete automata.
    pub fn needs_complete(self) -> bool {
        matches!(self, Algo::Local | Algo::NoCount)
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> Result<Algo, String> {
        Algo::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}` (expected oracle, iny, global, local or nocount)"))
    }
}

/// Deliberate faults for mutation testing of the agreement harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Counters start one above `|post|`, so they never reach zero on the last successor.
    CounterInitOffByOne,
}

#[derive(Debug, Clone, Default)]
pub struct SimOptions {
    pub limits: Limits,
    /// Recompute every counter at each worklist pop and audit worklist pairs.
    pub check_invariants: bool,
    /// Known simulation; with `check_invariants`, every pair put into NotSim must be outside it.
    pub reference: Option<Relation>,
    pub mutation: Option<Mutation>,
}

impl SimOptions {
    pub fn with_limits(limits: Limits) -> Self {
        SimOptions {
            limits,
            ..SimOptions::default()
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunStats {
    /// Worklist pops (INY/LocalSim), pivot rounds (NoCountSim) or fixpoint rounds (oracle).
    pub pops: u64,
    pub counter_checks: u64,
    pub counter_mismatches: u64,
    pub invariant_violations: u64,
    /// Minterms built by the algorithm's own mintermisation step.
    pub minterms: usize,
    pub mintermised_transitions: usize,
}

#[derive(Debug, Clone)]
pub struct SimRun {
    pub relation: Relation,
    pub stats: RunStats,
}

fn require_complete(m: &Sfa) -> Result<(), SimError> {
    match incompleteness_witness(m) {
        Some((state, sym)) => Err(SimError::Incomplete {
            state,
            symbol: m.algebra().format_symbol(sym),
        }),
        None => Ok(()),
    }
}

/// Runs `algo` on `m` as given (no implicit completion).
pub fn run(algo: Algo, m: &Sfa, opts: &SimOptions) -> Result<SimRun, SimError> {
    let mut stats = RunStats::default();
    let relation = match algo {
        Algo::Oracle => oracle::oracle(m, opts, &mut stats)?,
        Algo::Iny => counting_sim(m, OnZero::Syntactic, opts, &mut stats)?,
        Algo::Global => {
            let (g, ms) = global_mintermise(m, &opts.limits)?;
            stats.minterms = ms.minterms;
            stats.mintermised_transitions = ms.mintermised_transitions;
            counting_sim(&g, OnZero::Syntactic, opts, &mut stats)?
        }
        Algo::Local => {
            require_complete(m)?;
            let (l, ms) = local_mintermise(m, &opts.limits)?;
            stats.minterms = ms.minterms;
            stats.mintermised_transitions = ms.mintermised_transitions;
            counting_sim(&l, OnZero::Symbolic(m), opts, &mut stats)?
        }
        Algo::NoCount => {
            require_complete(m)?;
            nocount::nocount(m, opts, &mut stats)?
        }
    };
    Ok(SimRun { relation, stats })
}

/// The fixpoint of `≁_k` evaluated symbolically; slow but direct.
pub fn oracle_sim(m: &Sfa) -> Relation {
    oracle::oracle(
        m,
        &SimOptions::with_limits(Limits::unbounded()),
        &mut RunStats::default(),
    )
    .expect("unbounded oracle cannot fail")
}

/// INY on the syntactic NFA of `m`: guards are compared as opaque symbols.
pub fn iny_sim(m: &Sfa, limits: &Limits) -> Result<Relation, SimError> {
    run(Algo::Iny, m, &SimOptions::with_limits(limits.clone())).map(|r| r.relation)
}

/// INY on the globally mintermised automaton.
pub fn global_sim(m: &Sfa, limits: &Limits) -> Result<Relation, SimError> {
    run(Algo::Global, m, &SimOptions::with_limits(limits.clone())).map(|r| r.relation)
}

pub fn local_sim(m: &Sfa, limits: &Limits) -> Result<Relation, SimError> {
    run(Algo::Local, m, &SimOptions::with_limits(limits.clone())).map(|r| r.relation)
}

pub fn nocount_sim(m: &Sfa, limits: &Limits) -> Result<Relation, SimError> {
    run(Algo::NoCount, m, &SimOptions::with_limits(limits.clone())).map(|r| r.relation)
}
