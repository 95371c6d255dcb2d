use crate::automata::Sfa;
use crate::error::SimError;

use super::{Relation, RunStats, SimOptions};

pub(super) fn nocount(m: &Sfa, opts: &SimOptions, stats: &mut RunStats) -> Result<Relation, SimError> {
    let n = m.num_states();
    let alg = m.algebra();
    let mut sim = Relation::full(n);
    let mut not_sim = Relation::empty(n);
    for i in m.finals() {
        for j in (0..n).filter(|&j| !m.is_final(j)) {
            not_sim.insert(i, j);
        }
    }
    let mut in_rm = vec![false; n];

    // pivot: least state with a non-empty NotSim row
    while let Some(i) = (0..n).find(|&i| !not_sim.row_is_empty(i)) {
        stats.pops += 1;
        if stats.pops.is_multiple_of(64) {
            opts.limits.check_deadline()?;
        }
        let mut rm = Vec::new();
        for j in not_sim.row(i) {
            for &k in m.incoming(j) {
                let t = m.transition(k).source;
                if !in_rm[t] {
                    in_rm[t] = true;
                    rm.push(t);
                }
            }
        }
        rm.sort_unstable();
        for &t in &rm {
            in_rm[t] = false;
        }
        if opts.check_invariants {
            stats.invariant_violations += not_sim.row(i).filter(|&j| !sim.contains(i, j)).count() as u64;
        }
        sim.subtract_row(i, &not_sim);
        not_sim.clear_row(i);

        for t in rm {
            let psi = alg.disj_all(
                m.outgoing(t)
                    .iter()
                    .filter(|tr| sim.contains(i, tr.target))
                    .map(|tr| &tr.guard),
            );
            let not_psi = alg.neg(&psi);
            for &k in m.incoming(i) {
                let tr = m.transition(k);
                let s = tr.source;
                if sim.contains(s, t) && !not_sim.contains(s, t) && alg.is_sat(&alg.conj(&not_psi, &tr.guard)) {
                    if opts.check_invariants && opts.reference.as_ref().is_some_and(|r| r.contains(s, t)) {
                        stats.invariant_violations += 1;
                    }
                    not_sim.insert(s, t);
                }
            }
        }
    }
    Ok(sim)
}
