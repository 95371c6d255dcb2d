//! Symbolic finite automata and their structural transformations.

mod format;
mod transform;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::algebra::{Algebra, Predicate};
use crate::error::AutomatonError;

pub use format::{read_sfa, write_sfa};
pub use transform::{
    complete, global_mintermise, incompleteness_witness, local_mintermise, reverse, Completion, MintermStats,
};

/// Dense state index in `[0, n)`.
pub type StateId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub source: StateId,
    pub guard: Predicate,
    pub target: StateId,
}

impl Transition {
    pub fn new(source: StateId, guard: Predicate, target: StateId) -> Self {
        Transition { source, guard, target }
    }
}

/// A symbolic finite automaton `(Q, A, Δ, I, F)`.
///
/// Transitions are kept sorted by `(source, target, guard)`; every stored
/// guard is satisfiable and no `(source, guard, target)` triple occurs twice.
/// Parallel edges with different guards are allowed (mintermised automata need
/// them); [`Sfa::merge_parallel`] folds them into one disjunction.
#[derive(Clone)]
pub struct Sfa {
    algebra: Arc<Algebra>,
    n: usize,
    transitions: Vec<Transition>,
    // out_start[q]..out_start[q + 1] indexes the outgoing transitions of q
    out_start: Vec<usize>,
    incoming: Vec<Vec<usize>>,
    initial: Vec<StateId>,
    is_final: Vec<bool>,
}

impl Sfa {
    pub fn new(
        algebra: Arc<Algebra>,
        n: usize,
        transitions: impl IntoIterator<Item = Transition>,
        initial: impl IntoIterator<Item = StateId>,
        finals: impl IntoIterator<Item = StateId>,
    ) -> Result<Sfa, AutomatonError> {
        let check = |state: StateId| {
            if state < n {
                Ok(state)
            } else {
                Err(AutomatonError::StateOutOfRange { state, n })
            }
        };
        let mut ts = Vec::new();
        for t in transitions {
            check(t.source)?;
            check(t.target)?;
            if !algebra.owns(&t.guard) {
                return Err(AutomatonError::AlgebraMismatch);
            }
            if algebra.is_sat(&t.guard) {
                ts.push(t);
            }
        }
        let mut init = Vec::new();
        for q in initial {
            init.push(check(q)?);
        }
        let mut is_final = vec![false; n];
        for q in finals {
            is_final[check(q)?] = true;
        }
        Ok(Sfa::from_parts(algebra, n, ts, init, is_final))
    }

    /// Builds the indices; callers guarantee endpoints are in range and guards satisfiable.
    pub(crate) fn from_parts(
        algebra: Arc<Algebra>,
        n: usize,
        mut transitions: Vec<Transition>,
        mut initial: Vec<StateId>,
        is_final: Vec<bool>,
    ) -> Sfa {
        debug_assert_eq!(is_final.len(), n);
        transitions.sort_unstable_by(|a, b| (a.source, a.target, &a.guard).cmp(&(b.source, b.target, &b.guard)));
        transitions.dedup();
        initial.sort_unstable();
        initial.dedup();
        let mut out_start = vec![0; n + 1];
        for t in &transitions {
            out_start[t.source + 1] += 1;
        }
        for q in 0..n {
            out_start[q + 1] += out_start[q];
        }
        let mut incoming = vec![Vec::new(); n];
        for (idx, t) in transitions.iter().enumerate() {
            incoming[t.target].push(idx);
        }
        Sfa {
            algebra,
            n,
            transitions,
            out_start,
            incoming,
            initial,
            is_final,
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.algebra
    }

    pub fn num_states(&self) -> usize {
        self.n
    }

    pub fn num_transitions(&self) -> usize {
        self.transitions.len()
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn transition(&self, idx: usize) -> &Transition {
        &self.transitions[idx]
    }

    pub fn outgoing(&self, q: StateId) -> &[Transition] {
        &self.transitions[self.out_start[q]..self.out_start[q + 1]]
    }

    /// Index range of the outgoing transitions of `q` in [`Sfa::transitions`].
    pub fn outgoing_range(&self, q: StateId) -> std::ops::Range<usize> {
        self.out_start[q]..self.out_start[q + 1]
    }

    /// Indices (into [`Sfa::transitions`]) of transitions entering `q`.
    pub fn incoming(&self, q: StateId) -> &[usize] {
        &self.incoming[q]
    }

    pub fn out_degree(&self, q: StateId) -> usize {
        self.out_start[q + 1] - self.out_start[q]
    }

    pub fn max_out_degree(&self) -> usize {
        (0..self.n).map(|q| self.out_degree(q)).max().unwrap_or(0)
    }

    pub fn initial(&self) -> &[StateId] {
        &self.initial
    }

    pub fn is_initial(&self, q: StateId) -> bool {
        self.initial.binary_search(&q).is_ok()
    }

    pub fn is_final(&self, q: StateId) -> bool {
        self.is_final[q]
    }

    pub fn finals(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.n).filter(|&q| self.is_final[q])
    }

    pub(crate) fn final_flags(&self) -> &[bool] {
        &self.is_final
    }

    /// Distinct guards `ℙ_Δ` in canonical order.
    pub fn guards(&self) -> Vec<Predicate> {
        let mut gs: Vec<Predicate> = self.transitions.iter().map(|t| t.guard.clone()).collect();
        gs.sort_unstable();
        gs.dedup();
        gs
    }

    /// Merges transitions sharing `(source, target)` by guard disjunction.
    pub fn merge_parallel(&self) -> Sfa {
        let mut merged: BTreeMap<(StateId, StateId), Predicate> = BTreeMap::new();
        for t in &self.transitions {
            merged
                .entry((t.source, t.target))
                .and_modify(|g| *g = self.algebra.disj(g, &t.guard))
                .or_insert_with(|| t.guard.clone());
        }
        let ts = merged.into_iter().map(|((s, d), g)| Transition::new(s, g, d)).collect();
        Sfa::from_parts(
            self.algebra.clone(),
            self.n,
            ts,
            self.initial.clone(),
            self.is_final.clone(),
        )
    }

    /// `φ_si`: the disjunction of guards from `s` to `i` (`⊥` if none).
    pub fn guard_between(&self, s: StateId, i: StateId) -> Predicate {
        let out = self.outgoing(s);
        let lo = out.partition_point(|t| t.target < i);
        let hi = out.partition_point(|t| t.target <= i);
        self.algebra.disj_all(out[lo..hi].iter().map(|t| &t.guard))
    }
}

impl PartialEq for Sfa {
    fn eq(&self, other: &Sfa) -> bool {
        self.algebra.id() == other.algebra.id()
            && self.n == other.n
            && self.transitions == other.transitions
            && self.initial == other.initial
            && self.is_final == other.is_final
    }
}

impl Eq for Sfa {}

impl fmt::Debug for Sfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_sfa(self))
    }
}

impl fmt::Display for Sfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_sfa(self))
    }
}

#[cfg(test)]
mod tests;
