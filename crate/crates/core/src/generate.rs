//! Seeded random SFAs and the independent-bit family.

use std::sync::Arc;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, Domain, Predicate};
use crate::automata::{Sfa, Transition};

/// Default number of transitions per state.
pub const DEFAULT_DENSITY: f64 = 2.5;

fn random_predicate(alg: &Algebra, rng: &mut ChaCha8Rng) -> Predicate {
    match alg.domain() {
        Domain::Explicit(symbols) => {
            let n = symbols.len() as u64;
            let mut p = alg.bot();
            while !alg.is_sat(&p) {
                for s in 0..n {
                    if rng.random_bool(0.5) {
                        p = alg.disj(&p, &alg.singleton(s).expect("symbol in domain"));
                    }
                }
            }
            p
        }
        Domain::Interval { lo, hi } => {
            let (lo, hi) = (*lo, *hi);
            let pieces = rng.random_range(1..=2);
            let ranges: Vec<(u32, u32)> = (0..pieces)
                .map(|_| {
                    let a = rng.random_range(lo..=hi);
                    let b = rng.random_range(lo..=hi);
                    (a.min(b), a.max(b))
                })
                .collect();
            alg.ranges(&ranges).expect("ranges lie in the domain")
        }
        Domain::BitVector { width } => {
            let width = *width;
            let literals = rng.random_range(1..=width.min(3)) as usize;
            let mut cube = alg.top();
            for v in sample(rng, width as usize, literals) {
                let var = alg.var(v as u32).expect("variable in range");
                let lit = if rng.random_bool(0.5) { var } else { alg.neg(&var) };
                cube = alg.conj(&cube, &lit);
            }
            cube
        }
    }
}

/// A reproducible random SFA.
///
/// Draws `⌈density·n⌉` transitions with uniformly random endpoints and guards
/// from a pool of `pred_pool` random predicates (interval unions, explicit
/// subsets or bit cubes). Each state is initial with probability 0.3 (at least
/// one initial state is forced) and final with probability 0.4. Parallel edges
/// are merged.
pub fn random_sfa(seed: u64, n: usize, density: f64, algebra: &Arc<Algebra>, pred_pool: usize) -> Sfa {
    assert!(n >= 1 && density > 0.0 && pred_pool >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool: Vec<Predicate> = (0..pred_pool).map(|_| random_predicate(algebra, &mut rng)).collect();
    let count = (density * n as f64).ceil() as usize;
    let transitions: Vec<Transition> = (0..count)
        .map(|_| {
            let s = rng.random_range(0..n);
            let g = pool[rng.random_range(0..pred_pool)].clone();
            let t = rng.random_range(0..n);
            Transition::new(s, g, t)
        })
        .collect();
    let mut initial: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.3)).collect();
    if initial.is_empty() {
        initial.push(rng.random_range(0..n));
    }
    let finals: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.4)).collect();
    Sfa::new(algebra.clone(), n, transitions, initial, finals)
        .expect("generated states are in range")
        .merge_parallel()
}

/// State 0 moves on each bit `b_i` to its own accepting state `i + 1`, which
/// loops on `⊤`. Global mintermisation of this automaton yields exactly `2^bits`
/// minterms while every state has at most `bits` outgoing transitions.
pub fn independent_bits(bits: u32) -> Sfa {
    let alg = Algebra::bitvector(bits).expect("width in [1, 64]");
    let n = bits as usize + 1;
    let mut ts = Vec::with_capacity(2 * bits as usize);
    for i in 0..bits {
        let target = i as usize + 1;
        ts.push(Transition::new(0, alg.var(i).expect("variable in range"), target));
        ts.push(Transition::new(target, alg.top(), target));
    }
    Sfa::new(alg, n, ts, [0], 1..n).expect("family states are in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::write_sfa;

    #[test]
    fn same_seed_same_automaton() {
        for seed in 0..20 {
            let a = random_sfa(seed, 6, DEFAULT_DENSITY, &Algebra::unicode(), 4);
            let b = random_sfa(seed, 6, DEFAULT_DENSITY, &Algebra::unicode(), 4);
            assert_eq!(write_sfa(&a), write_sfa(&b));
        }
        let a = random_sfa(1, 6, DEFAULT_DENSITY, &Algebra::unicode(), 4);
        let b = random_sfa(2, 6, DEFAULT_DENSITY, &Algebra::unicode(), 4);
        assert_ne!(write_sfa(&a), write_sfa(&b));
    }

    #[test]
    fn single_state_single_loop() {
        for seed in 0..10 {
            let m = random_sfa(seed, 1, 1.0, &Algebra::bitvector(4).unwrap(), 3);
            assert_eq!(m.num_states(), 1);
            assert_eq!(m.num_transitions(), 1);
            assert_eq!((m.transitions()[0].source, m.transitions()[0].target), (0, 0));
            assert_eq!(m.initial(), &[0]);
        }
    }

    #[test]
    fn guards_come_from_the_pool() {
        let alg = Algebra::explicit(["a", "b", "c", "d"]).unwrap();
        let m = random_sfa(7, 8, 3.0, &alg, 2);
        // merged parallel edges may OR two pool predicates together
        assert!(m.guards().len() <= 3);
        assert!(m.transitions().iter().all(|t| alg.is_sat(&t.guard)));
    }

    #[test]
    fn independent_bits_shape() {
        let m = independent_bits(5);
        assert_eq!(m.num_states(), 6);
        assert_eq!(m.num_transitions(), 10);
        assert_eq!(m.out_degree(0), 5);
        assert_eq!(m.finals().count(), 5);
    }
}
