//! Word membership and bounded language exploration.
//!
//! Concrete symbols are only explored through one representative per local
//! minterm: from a set of states, the guards leaving the set are split into
//! minterms and the least symbol of each minterm stands for all of it. All
//! symbols of a minterm lead to the same successor set, so nothing is lost.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::algebra::{Predicate, Symbol};
use crate::automata::{Sfa, StateId};
use crate::error::{AlgebraError, AutomatonError};
use crate::limits::Limits;

pub type Word = Vec<Symbol>;

fn step(m: &Sfa, set: &[StateId], sym: Symbol) -> Vec<StateId> {
    let alg = m.algebra();
    let mut next: Vec<StateId> = set
        .iter()
        .flat_map(|&q| m.outgoing(q))
        .filter(|t| alg.contains(&t.guard, sym))
        .map(|t| t.target)
        .collect();
    next.sort_unstable();
    next.dedup();
    next
}

fn accepting(m: &Sfa, set: &[StateId]) -> bool {
    set.iter().any(|&q| m.is_final(q))
}

/// Least symbol of every minterm of the guards leaving the given state sets.
fn representatives(parts: &[(&Sfa, &[StateId])]) -> Vec<Symbol> {
    let Some((first, _)) = parts.first() else {
        return Vec::new();
    };
    let alg = first.algebra();
    let mut guards: Vec<Predicate> = parts
        .iter()
        .flat_map(|(m, set)| set.iter().flat_map(move |&q| m.outgoing(q)))
        .map(|t| t.guard.clone())
        .collect();
    guards.sort_unstable();
    guards.dedup();
    let minterms = alg
        .minterms_with(&guards, &Limits::unbounded())
        .expect("unbounded minterm generation cannot fail");
    let mut reps: Vec<Symbol> = minterms
        .iter()
        .filter(|mt| !mt.members.is_empty())
        .filter_map(|mt| alg.witness(&mt.predicate))
        .collect();
    reps.sort_unstable();
    reps
}

pub fn accepts(m: &Sfa, word: &[Symbol]) -> Result<bool, AlgebraError> {
    accepts_from(m, m.initial(), word)
}

pub fn accepts_from(m: &Sfa, from: &[StateId], word: &[Symbol]) -> Result<bool, AlgebraError> {
    let alg = m.algebra();
    let mut set: Vec<StateId> = from.to_vec();
    set.sort_unstable();
    set.dedup();
    for &a in word {
        if !alg.in_domain(a) {
            return Err(AlgebraError::SymbolOutOfDomain(a.to_string()));
        }
        set = step(m, &set, a);
    }
    Ok(accepting(m, &set))
}

/// Accepted words of length at most `max_len`, over per-state-set representatives.
pub fn enumerate_language(m: &Sfa, max_len: usize) -> BTreeSet<Word> {
    enumerate_language_from(m, m.initial(), max_len)
}

pub fn enumerate_language_from(m: &Sfa, from: &[StateId], max_len: usize) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    let mut start: Vec<StateId> = from.to_vec();
    start.sort_unstable();
    start.dedup();
    let mut layer = vec![(start, Word::new())];
    for depth in 0..=max_len {
        let mut next_layer = Vec::new();
        for (set, word) in layer {
            if accepting(m, &set) {
                out.insert(word.clone());
            }
            if depth == max_len {
                continue;
            }
            for a in representatives(&[(m, &set)]) {
                let next = step(m, &set, a);
                if !next.is_empty() {
                    let mut w = word.clone();
                    w.push(a);
                    next_layer.push((next, w));
                }
            }
        }
        layer = next_layer;
    }
    out
}

/// Searches for a word of length at most `max_len` accepted by `a` from
/// `from_a` but not by `b` from `from_b`. Returns a shortest such word.
pub fn bounded_inclusion(
    a: &Sfa,
    from_a: &[StateId],
    b: &Sfa,
    from_b: &[StateId],
    max_len: usize,
) -> Result<Option<Word>, AutomatonError> {
    if a.algebra().id() != b.algebra().id() {
        return Err(AutomatonError::AlgebraMismatch);
    }
    let norm = |s: &[StateId]| {
        let mut v = s.to_vec();
        v.sort_unstable();
        v.dedup();
        v
    };
    type Node = (Vec<StateId>, Vec<StateId>);
    let start: Node = (norm(from_a), norm(from_b));
    let mut parent: HashMap<Node, Option<(Node, Symbol)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([(start, 0usize)]);
    while let Some((node, depth)) = queue.pop_front() {
        if accepting(a, &node.0) && !accepting(b, &node.1) {
            let mut word = Vec::new();
            let mut cur = node;
            while let Some(Some((prev, sym))) = parent.get(&cur).cloned() {
                word.push(sym);
                cur = prev;
            }
            word.reverse();
            return Ok(Some(word));
        }
        if depth == max_len || node.0.is_empty() {
            continue;
        }
        for sym in representatives(&[(a, &node.0), (b, &node.1)]) {
            let next: Node = (step(a, &node.0, sym), step(b, &node.1, sym));
            if next.0.is_empty() || parent.contains_key(&next) {
                continue;
            }
            parent.insert(next.clone(), Some((node.clone(), sym)));
            queue.push_back((next, depth + 1));
        }
    }
    Ok(None)
}

/// A word of length at most `max_len` in exactly one of the two languages, if any.
pub fn bounded_equivalence(a: &Sfa, b: &Sfa, max_len: usize) -> Result<Option<Word>, AutomatonError> {
    if let Some(w) = bounded_inclusion(a, a.initial(), b, b.initial(), max_len)? {
        return Ok(Some(w));
    }
    bounded_inclusion(b, b.initial(), a, a.initial(), max_len)
}
