//! Simulation preorders over symbolic finite automata.
//!
//! Predicates come from an [`Algebra`] (explicit symbol sets, codepoint
//! intervals or bit-vector BDDs). [`simulation`] computes the maximal
//! simulation with several algorithms and [`reduction`] uses it to shrink
//! automata without changing their language.

pub mod algebra;
pub mod automata;
pub mod error;
pub mod generate;
pub mod language;
pub mod limits;
pub mod reduction;
pub mod regex;
pub mod simulation;

pub use algebra::{Algebra, AlgebraKind, Domain, Minterm, OpCounts, Predicate, Symbol};
pub use automata::{
    complete, global_mintermise, local_mintermise, read_sfa, reverse, write_sfa, Completion, MintermStats, Sfa,
    StateId, Transition,
};
pub use error::{AlgebraError, AutomatonError, ReduceError, ResourceError, SimError};
pub use generate::{independent_bits, random_sfa, DEFAULT_DENSITY};
pub use language::{accepts, bounded_equivalence, bounded_inclusion, enumerate_language, Word};
pub use limits::Limits;
pub use reduction::{reduce_iterative, Method, ReductionReport};
pub use regex::{parse_regex, regex_compile, RegexAst, RegexError};
pub use simulation::{
    bisimulation, check_agreement, global_sim, iny_sim, local_sim, nocount_sim, oracle_sim, Algo, Relation, SimOptions,
};
