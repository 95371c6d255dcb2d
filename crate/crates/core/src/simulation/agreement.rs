use crate::automata::{complete, global_mintermise, Sfa, StateId};
use crate::error::SimError;
use crate::language::{bounded_inclusion, Word};

use super::{run, Algo, Relation, SimOptions};

/// Length bound for distinguishing-word searches.
pub const WITNESS_LEN: usize = 5;

#[derive(Debug, Clone)]
pub struct AlgoOutcome {
    /// `iny` is INY on the globally mintermised completion.
    pub name: &'static str,
    pub result: Result<Relation, SimError>,
}

/// The least pair on which an algorithm disagrees with the oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub algo: &'static str,
    pub pair: (StateId, StateId),
    /// Whether the oracle contains the pair.
    pub in_oracle: bool,
    /// Accepted from the first state but not the second, when the algorithm
    /// wrongly claims the pair and such a word exists within the bound.
    pub word: Option<Word>,
}

#[derive(Debug, Clone)]
pub struct AgreementReport {
    /// The completed automaton all algorithms ran on.
    pub completed: Sfa,
    pub outcomes: Vec<AlgoOutcome>,
    pub discrepancy: Option<Discrepancy>,
}

impl AgreementReport {
    /// True when every algorithm that finished matches the oracle.
    pub fn all_equal(&self) -> bool {
        self.discrepancy.is_none()
    }

    pub fn oracle(&self) -> &Relation {
        self.outcomes[0].result.as_ref().expect("oracle runs unbounded")
    }
}

pub fn check_agreement(m: &Sfa) -> AgreementReport {
    check_agreement_with(m, &SimOptions::default())
}

/// Runs every algorithm on `complete(m)` and compares each to the oracle.
/// Algorithms stopped by a resource guard are reported but not compared.
pub fn check_agreement_with(m: &Sfa, opts: &SimOptions) -> AgreementReport {
    let c = complete(m).sfa;
    let oracle = run(Algo::Oracle, &c, &SimOptions::default())
        .expect("unguarded oracle cannot fail")
        .relation;
    let mut outcomes = vec![AlgoOutcome {
        name: "oracle",
        result: Ok(oracle.clone()),
    }];
    outcomes.push(AlgoOutcome {
        name: "iny",
        result: global_mintermise(&c, &opts.limits)
            .map_err(SimError::from)
            .and_then(|(g, _)| run(Algo::Iny, &g, opts))
            .map(|r| r.relation),
    });
    for algo in [Algo::Global, Algo::Local, Algo::NoCount] {
        outcomes.push(AlgoOutcome {
            name: algo.name(),
            result: run(algo, &c, opts).map(|r| r.relation),
        });
    }

    let discrepancy = outcomes[1..].iter().find_map(|o| {
        let rel = o.result.as_ref().ok()?;
        let pair = oracle
            .pairs()
            .chain(rel.pairs())
            .filter(|&(p, q)| oracle.contains(p, q) != rel.contains(p, q))
            .min()?;
        let in_oracle = oracle.contains(pair.0, pair.1);
        let word = if in_oracle {
            None
        } else {
            bounded_inclusion(&c, &[pair.0], &c, &[pair.1], WITNESS_LEN).expect("same algebra")
        };
        Some(Discrepancy {
            algo: o.name,
            pair,
            in_oracle,
            word,
        })
    });
    AgreementReport {
        completed: c,
        outcomes,
        discrepancy,
    }
}
