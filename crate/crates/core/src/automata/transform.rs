use crate::algebra::{Predicate, Symbol};
use crate::error::ResourceError;
use crate::limits::Limits;

use super::{Sfa, StateId, Transition};

/// Result of [`complete`]. `sink` is `None` when the input was already complete.
#[derive(Debug, Clone)]
pub struct Completion {
    pub sfa: Sfa,
    pub sink: Option<StateId>,
}

impl Completion {
    pub fn was_complete(&self) -> bool {
        self.sink.is_none()
    }
}

/// Transition counts before and after mintermisation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MintermStats {
    pub original_transitions: usize,
    pub mintermised_transitions: usize,
    /// Number of global minterms, or the sum of per-state minterm counts.
    pub minterms: usize,
    /// Per-state minterm counts (local mintermisation only).
    pub per_state: Vec<usize>,
}

impl MintermStats {
    /// Mintermised transitions per original transition, `None` for an empty automaton.
    pub fn blowup(&self) -> Option<f64> {
        (self.original_transitions > 0).then(|| self.mintermised_transitions as f64 / self.original_transitions as f64)
    }
}

fn residual(m: &Sfa, q: StateId) -> Predicate {
    let alg = m.algebra();
    let covered = alg.disj_all(m.outgoing(q).iter().map(|t| &t.guard));
    alg.neg(&covered)
}

/// A state and a symbol it cannot read, if the automaton is incomplete.
pub fn incompleteness_witness(m: &Sfa) -> Option<(StateId, Symbol)> {
    (0..m.num_states()).find_map(|q| m.algebra().witness(&residual(m, q)).map(|a| (q, a)))
}

/// Adds one non-final sink (with a `⊤` self-loop) receiving every symbol a state cannot read.
pub fn complete(m: &Sfa) -> Completion {
    let alg = m.algebra();
    let n = m.num_states();
    let mut extra = Vec::new();
    for q in 0..n {
        let r = residual(m, q);
        if alg.is_sat(&r) {
            extra.push(Transition::new(q, r, n));
        }
    }
    if extra.is_empty() {
        return Completion {
            sfa: m.clone(),
            sink: None,
        };
    }
    extra.push(Transition::new(n, alg.top(), n));
    let mut ts = m.transitions().to_vec();
    ts.extend(extra);
    let mut finals = m.final_flags().to_vec();
    finals.push(false);
    Completion {
        sfa: Sfa::from_parts(alg.clone(), n + 1, ts, m.initial().to_vec(), finals),
        sink: Some(n),
    }
}

/// Replaces every guard by the minterms of `ℙ_Δ` it intersects.
pub fn global_mintermise(m: &Sfa, limits: &Limits) -> Result<(Sfa, MintermStats), ResourceError> {
    let alg = m.algebra();
    let guards = m.guards();
    let minterms = alg.minterms_with(&guards, limits)?;
    let mut by_guard: Vec<Vec<usize>> = vec![Vec::new(); guards.len()];
    for (k, mt) in minterms.iter().enumerate() {
        for &g in &mt.members {
            by_guard[g].push(k);
        }
    }
    let mut ts = Vec::new();
    for t in m.transitions() {
        let g = guards.binary_search(&t.guard).expect("guard listed in ℙ_Δ");
        for &k in &by_guard[g] {
            ts.push(Transition::new(t.source, minterms[k].predicate.clone(), t.target));
        }
    }
    let stats = MintermStats {
        original_transitions: m.num_transitions(),
        mintermised_transitions: ts.len(),
        minterms: minterms.len(),
        per_state: Vec::new(),
    };
    let out = Sfa::from_parts(
        alg.clone(),
        m.num_states(),
        ts,
        m.initial().to_vec(),
        m.final_flags().to_vec(),
    );
    Ok((out, stats))
}

/// Replaces every guard leaving `p` by the minterms of `ℙ_{Δ,p}` it intersects.
pub fn local_mintermise(m: &Sfa, limits: &Limits) -> Result<(Sfa, MintermStats), ResourceError> {
    let alg = m.algebra();
    let mut ts = Vec::new();
    let mut per_state = Vec::with_capacity(m.num_states());
    for p in 0..m.num_states() {
        let out = m.outgoing(p);
        let mut guards: Vec<Predicate> = out.iter().map(|t| t.guard.clone()).collect();
        guards.sort_unstable();
        guards.dedup();
        let minterms = alg.minterms_with(&guards, limits)?;
        let mut by_guard: Vec<Vec<usize>> = vec![Vec::new(); guards.len()];
        let mut used = 0;
        for (k, mt) in minterms.iter().enumerate() {
            if !mt.members.is_empty() {
                used += 1;
            }
            for &g in &mt.members {
                by_guard[g].push(k);
            }
        }
        per_state.push(used);
        for t in out {
            let g = guards.binary_search(&t.guard).expect("guard leaves p");
            for &k in &by_guard[g] {
                ts.push(Transition::new(p, minterms[k].predicate.clone(), t.target));
            }
        }
    }
    let stats = MintermStats {
        original_transitions: m.num_transitions(),
        mintermised_transitions: ts.len(),
        minterms: per_state.iter().sum(),
        per_state,
    };
    let out = Sfa::from_parts(
        alg.clone(),
        m.num_states(),
        ts,
        m.initial().to_vec(),
        m.final_flags().to_vec(),
    );
    Ok((out, stats))
}

/// Flips every transition and swaps initial and final states.
pub fn reverse(m: &Sfa) -> Sfa {
    let ts = m
        .transitions()
        .iter()
        .map(|t| Transition::new(t.target, t.guard.clone(), t.source))
        .collect();
    let mut finals = vec![false; m.num_states()];
    for &q in m.initial() {
        finals[q] = true;
    }
    Sfa::from_parts(m.algebra().clone(), m.num_states(), ts, m.finals().collect(), finals)
}
