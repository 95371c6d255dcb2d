use std::collections::HashMap;

use crate::algebra::Predicate;
use crate::automata::Sfa;
use crate::error::SimError;

use super::{require_complete, Relation};

/// Bisimulation equivalence by naive partition refinement.
///
/// A state's signature is its block together with `Reach_q(B)` for every block
/// `B`; two states stay together iff they reach every block on the same symbols.
pub fn bisimulation(m: &Sfa) -> Result<Relation, SimError> {
    require_complete(m)?;
    let n = m.num_states();
    let alg = m.algebra();
    let mut block: Vec<usize> = (0..n).map(|q| usize::from(m.is_final(q))).collect();
    let mut count = block.iter().copied().collect::<std::collections::BTreeSet<_>>().len();
    loop {
        let mut ids: HashMap<(usize, Vec<(usize, Predicate)>), usize> = HashMap::new();
        let mut next = Vec::with_capacity(n);
        for q in 0..n {
            let mut by_block: Vec<(usize, Predicate)> = Vec::new();
            for t in m.outgoing(q) {
                let b = block[t.target];
                match by_block.iter_mut().find(|(c, _)| *c == b) {
                    Some((_, p)) => *p = alg.disj(p, &t.guard),
                    None => by_block.push((b, t.guard.clone())),
                }
            }
            by_block.sort_unstable();
            let fresh = ids.len();
            next.push(*ids.entry((block[q], by_block)).or_insert(fresh));
        }
        block = next;
        if ids.len() == count {
            break;
        }
        count = ids.len();
    }
    let mut r = Relation::empty(n);
    for p in 0..n {
        for q in 0..n {
            if block[p] == block[q] {
                r.insert(p, q);
            }
        }
    }
    Ok(r)
}
