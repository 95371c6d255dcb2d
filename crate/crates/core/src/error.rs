use std::time::Duration;

use thiserror::Error;

use crate::automata::StateId;

/// Errors raised by predicate operations and the textual predicate syntax.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("predicate belongs to a different algebra")]
    Mismatch,
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    #[error("invalid predicate near `{token}`: {reason}")]
    Parse { token: String, reason: String },
    #[error("symbol `{0}` is outside the domain")]
    SymbolOutOfDomain(String),
}

/// A computation was stopped by one of the guards in [`Limits`](crate::Limits).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResourceError {
    #[error("minterm blowup: more than {cap} minterms")]
    MintermBlowup { cap: usize },
    #[error("timed out after {0:?}")]
    Timeout(Duration),
    #[error("counter table needs {cells} cells, limit is {limit}")]
    MemoryGuard { cells: usize, limit: usize },
}

/// Structural errors when building or reading an automaton.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("state {state} out of range (automaton has {n} states)")]
    StateOutOfRange { state: usize, n: usize },
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error("automata use different algebras")]
    AlgebraMismatch,
}

/// Errors from the simulation algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("automaton is not complete: state {state} has no move on symbol {symbol}")]
    Incomplete { state: StateId, symbol: String },
    #[error(transparent)]
    Resource(#[from] ResourceError),
}

/// Errors from the reduction pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReduceError {
    #[error("relation is not reflexive: ({0}, {0}) missing")]
    NotReflexive(StateId),
    #[error("relation is not transitive: ({0}, {1}) and ({1}, {2}) present but ({0}, {2}) missing")]
    NotTransitive(StateId, StateId, StateId),
    #[error("relation has {relation} states but the automaton has {automaton}")]
    SizeMismatch { relation: usize, automaton: usize },
    #[error(transparent)]
    Sim(#[from] SimError),
}
