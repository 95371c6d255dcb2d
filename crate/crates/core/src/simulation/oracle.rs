use crate::algebra::Predicate;
use crate::automata::Sfa;
use crate::error::SimError;

use super::{Relation, RunStats, SimOptions};

/// Iterates `≁_{k+1}` from `≁_0 = F × (Q∖F)` until nothing changes, deciding
/// the move condition as `IsSat(φ_si ∧ ¬Reach_t(Q ∖ ≁_k(i)))`.
pub(super) fn oracle(m: &Sfa, opts: &SimOptions, stats: &mut RunStats) -> Result<Relation, SimError> {
    let n = m.num_states();
    let alg = m.algebra();
    let mut not_sim = Relation::empty(n);
    for i in m.finals() {
        for j in (0..n).filter(|&j| !m.is_final(j)) {
            not_sim.insert(i, j);
        }
    }
    // distinct successors of every state with their merged guards
    let succ: Vec<Vec<(usize, Predicate)>> = (0..n)
        .map(|s| {
            let mut targets: Vec<usize> = m.outgoing(s).iter().map(|t| t.target).collect();
            targets.dedup();
            targets.into_iter().map(|i| (i, m.guard_between(s, i))).collect()
        })
        .collect();

    loop {
        opts.limits.check_deadline()?;
        stats.pops += 1;
        let mut reach: Vec<Option<Predicate>> = vec![None; n * n];
        let mut next = not_sim.clone();
        for s in 0..n {
            for t in 0..n {
                if not_sim.contains(s, t) {
                    continue;
                }
                let refuted = succ[s].iter().any(|(i, phi)| {
                    let psi = reach[t * n + i].get_or_insert_with(|| {
                        alg.disj_all(
                            m.outgoing(t)
                                .iter()
                                .filter(|tr| !not_sim.contains(*i, tr.target))
                                .map(|tr| &tr.guard),
                        )
                    });
                    alg.is_sat(&alg.conj(phi, &alg.neg(psi)))
                });
                if refuted {
                    next.insert(s, t);
                }
            }
        }
        if next == not_sim {
            break;
        }
        not_sim = next;
    }

    let mut sim = Relation::full(n);
    for (i, j) in not_sim.pairs() {
        sim.remove(i, j);
    }
    Ok(sim)
}
