use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;
use crate::algebra::Symbol;
use crate::generate::{independent_bits, random_sfa};
use crate::language::{accepts, bounded_equivalence, enumerate_language};
use crate::limits::Limits;

fn alpha() -> Arc<Algebra> {
    Algebra::interval(97, 122).unwrap()
}

fn r(alg: &Algebra, lo: char, hi: char) -> Predicate {
    alg.range(lo as u32, hi as u32).unwrap()
}

fn word(s: &str) -> Vec<Symbol> {
    s.chars().map(|c| c as Symbol).collect()
}

/// `q0 --a--> q1 --b--> q2`, q2 final.
fn ab() -> Sfa {
    let a = alpha();
    Sfa::new(
        a.clone(),
        3,
        [
            Transition::new(0, r(&a, 'a', 'a'), 1),
            Transition::new(1, r(&a, 'b', 'b'), 2),
        ],
        [0],
        [2],
    )
    .unwrap()
}

// Every symbol of the (small) domain, by brute force.
fn all_symbols(alg: &Algebra) -> Vec<Symbol> {
    assert!(alg.is_enumerable());
    alg.enumerate(&alg.top(), usize::MAX)
}

fn denotation(m: &Sfa) -> BTreeSet<(StateId, Symbol, StateId)> {
    let alg = m.algebra();
    let syms = all_symbols(alg);
    m.transitions()
        .iter()
        .flat_map(|t| {
            syms.iter()
                .filter(|&&a| alg.contains(&t.guard, a))
                .map(move |&a| (t.source, a, t.target))
        })
        .collect()
}

#[test]
fn rejects_out_of_range_states() {
    let a = alpha();
    let err = Sfa::new(a.clone(), 2, [Transition::new(0, a.top(), 2)], [0], []).unwrap_err();
    assert!(matches!(err, AutomatonError::StateOutOfRange { state: 2, n: 2 }));
    assert!(Sfa::new(a, 2, [], [5], []).is_err());
}

#[test]
fn rejects_foreign_predicates() {
    let a = alpha();
    let b = alpha();
    let err = Sfa::new(a, 1, [Transition::new(0, b.top(), 0)], [0], []).unwrap_err();
    assert!(matches!(err, AutomatonError::AlgebraMismatch));
}

#[test]
fn drops_unsatisfiable_guards() {
    let a = alpha();
    let m = Sfa::new(a.clone(), 2, [Transition::new(0, a.bot(), 1)], [0], [1]).unwrap();
    assert_eq!(m.num_transitions(), 0);
}

#[test]
fn accepts_ab_only() {
    let m = ab();
    assert!(accepts(&m, &word("ab")).unwrap());
    assert!(!accepts(&m, &word("a")).unwrap());
    assert!(!accepts(&m, &word("abb")).unwrap());
    assert!(!accepts(&m, &word("")).unwrap());
    assert!(accepts(&m, &[5]).is_err());
    let lang = enumerate_language(&m, 4);
    assert_eq!(lang, BTreeSet::from([word("ab")]));
}

#[test]
fn complete_adds_single_sink() {
    let m = ab();
    let c = complete(&m);
    assert_eq!(c.sink, Some(3));
    let s = c.sfa;
    assert_eq!(s.num_states(), 4);
    assert!(!s.is_final(3));
    assert!(incompleteness_witness(&s).is_none());
    assert_eq!(s.outgoing(3).len(), 1);
    assert_eq!(s.outgoing(3)[0].guard, s.algebra().top());
    // q0 goes to the sink on everything but `a`
    assert_eq!(
        s.guard_between(0, 3),
        s.algebra().not(&r(s.algebra(), 'a', 'a')).unwrap()
    );
    assert!(bounded_equivalence(&m, &s, 4).unwrap().is_none());
}

#[test]
fn complete_is_identity_on_complete_input() {
    let a = alpha();
    let m = Sfa::new(a.clone(), 1, [Transition::new(0, a.top(), 0)], [0], [0]).unwrap();
    let c = complete(&m);
    assert!(c.was_complete());
    assert_eq!(c.sfa, m);
}

#[test]
fn complete_covers_partitioned_guards() {
    let a = alpha();
    let m = Sfa::new(
        a.clone(),
        2,
        [
            Transition::new(0, r(&a, 'a', 'm'), 1),
            Transition::new(0, r(&a, 'n', 'z'), 0),
            Transition::new(1, r(&a, 'a', 'z'), 1),
        ],
        [0],
        [1],
    )
    .unwrap();
    assert!(complete(&m).was_complete());
    assert_eq!(incompleteness_witness(&ab()), Some((0, 'b' as Symbol)));
}

#[test]
fn identical_guards_give_one_minterm() {
    let a = alpha();
    let g = r(&a, 'c', 'f');
    let m = Sfa::new(
        a.clone(),
        3,
        [Transition::new(0, g.clone(), 1), Transition::new(1, g.clone(), 2)],
        [0],
        [2],
    )
    .unwrap();
    let (gm, stats) = global_mintermise(&m, &Limits::unbounded()).unwrap();
    assert_eq!(gm, m);
    assert_eq!(stats.mintermised_transitions, 2);
}

#[test]
fn overlapping_ranges_split_in_three() {
    let a = alpha();
    let m = Sfa::new(
        a.clone(),
        4,
        [
            Transition::new(0, r(&a, 'a', 'm'), 1),
            Transition::new(2, r(&a, 'h', 'z'), 3),
        ],
        [0, 2],
        [1, 3],
    )
    .unwrap();
    let (gm, stats) = global_mintermise(&m, &Limits::unbounded()).unwrap();
    // [a-g], [h-m], [n-z] plus the empty complement-of-both cell
    let expected: BTreeSet<Predicate> = [r(&a, 'a', 'g'), r(&a, 'h', 'm'), r(&a, 'n', 'z')]
        .into_iter()
        .collect();
    let got: BTreeSet<Predicate> = gm.guards().into_iter().collect();
    assert_eq!(got, expected);
    assert_eq!(stats.mintermised_transitions, 4);
    assert_eq!(denotation(&gm), denotation(&m));

    // locally each state only sees its own guard
    let (lm, lstats) = local_mintermise(&m, &Limits::unbounded()).unwrap();
    assert_eq!(lm, m);
    assert_eq!(lstats.per_state, vec![1, 0, 1, 0]);
}

/// Brute force: every assignment of `bits` variables is its own minterm, and
/// transition `b_i` is covered by those with bit `i` set.
fn independent_bit_oracle(bits: u32) -> usize {
    (0..bits)
        .map(|i| (0u64..1 << bits).filter(|v| v >> (bits - 1 - i) & 1 == 1).count())
        .sum()
}

#[test]
fn independent_bits_blow_up_globally() {
    for bits in 1..=8 {
        let m = independent_bits(bits);
        let (gm, stats) = global_mintermise(&m, &Limits::unbounded()).unwrap();
        let loops = bits as usize * (1 << bits);
        assert_eq!(stats.minterms, 1 << bits);
        assert_eq!(gm.num_transitions() - loops, independent_bit_oracle(bits));
        assert_eq!(independent_bit_oracle(bits), bits as usize * (1 << (bits - 1)));

        let (lm, lstats) = local_mintermise(&m, &Limits::unbounded()).unwrap();
        assert_eq!(lstats.per_state[0], (1 << bits) - 1);
        assert_eq!(lm.out_degree(0), independent_bit_oracle(bits));
    }
}

#[test]
fn minterm_cap_is_enforced() {
    let m = independent_bits(10);
    let err = global_mintermise(&m, &Limits::unbounded().with_cap(512)).unwrap_err();
    assert!(matches!(err, crate::error::ResourceError::MintermBlowup { cap: 512 }));
    assert!(global_mintermise(&m, &Limits::unbounded().with_cap(1024)).is_ok());
}

#[test]
fn reverse_swaps_roles() {
    let m = ab();
    let rm = reverse(&m);
    assert_eq!(rm.initial(), &[2]);
    assert_eq!(rm.finals().collect::<Vec<_>>(), vec![0]);
    assert_eq!(enumerate_language(&rm, 3), BTreeSet::from([word("ba")]));
    assert_eq!(reverse(&rm), m);
}

#[test]
fn format_round_trip() {
    let text = "@sfa\n# two letters\nalgebra interval 97 122\nstates 3\ninitial 0\nfinal 2\n\
                trans 0 [97] 1\ntrans 1 [98] 2   # b\ntrans 1 [99] 2\n";
    let m = read_sfa(text).unwrap();
    assert_eq!(m.num_transitions(), 2);
    let out = write_sfa(&m);
    assert_eq!(write_sfa(&read_sfa(&out).unwrap()), out);
    assert!(out.contains("trans 1 [98-99] 2"));
}

#[test]
fn format_errors_name_the_line() {
    let bad = "@sfa\nalgebra interval 0 9\nstates 2\ntrans 0 [3-1] 1\n";
    let msg = read_sfa(bad).unwrap_err().to_string();
    assert!(msg.contains('4'), "{msg}");
    let bad = "@sfa\nalgebra interval 0 9\nstates 2\ntrans 0 [1] 7\n";
    assert!(read_sfa(bad).unwrap_err().to_string().contains('7'));
    assert!(read_sfa("algebra interval 0 9\n").is_err());
    assert!(read_sfa("@sfa\nalgebra bitvector 3\nstates 1\nfrobnicate\n").is_err());
}

#[test]
fn format_handles_every_algebra() {
    for text in [
        "@sfa\nalgebra bitvector 3\nstates 2\ninitial 0\nfinal 1\ntrans 0 b0 & !b2 1\n",
        "@sfa\nalgebra explicit x y z\nstates 2\ninitial 0 1\nfinal 1\ntrans 0 {x,z} 1\n",
    ] {
        let m = read_sfa(text).unwrap();
        let out = write_sfa(&m);
        assert_eq!(write_sfa(&read_sfa(&out).unwrap()), out);
    }
}

fn arb_sfa() -> impl Strategy<Value = Sfa> {
    (any::<u64>(), 1usize..7, 0usize..3).prop_map(|(seed, n, kind)| {
        let alg = match kind {
            0 => Algebra::interval(0, 31).unwrap(),
            1 => Algebra::bitvector(4).unwrap(),
            _ => Algebra::explicit(["a", "b", "c", "d", "e"]).unwrap(),
        };
        random_sfa(seed, n, 2.0, &alg, 4)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn completion_preserves_language(m in arb_sfa()) {
        let c = complete(&m).sfa;
        prop_assert!(incompleteness_witness(&c).is_none());
        prop_assert!(bounded_equivalence(&m, &c, 4).unwrap().is_none());
    }

    #[test]
    fn mintermisation_preserves_denotation(m in arb_sfa()) {
        let (gm, _) = global_mintermise(&m, &Limits::unbounded()).unwrap();
        let (lm, _) = local_mintermise(&m, &Limits::unbounded()).unwrap();
        prop_assert_eq!(denotation(&gm), denotation(&m));
        prop_assert_eq!(denotation(&lm), denotation(&m));
        let alg = m.algebra();
        // global guards are pairwise disjoint
        let gs = gm.guards();
        for (i, p) in gs.iter().enumerate() {
            for q in &gs[i + 1..] {
                prop_assert!(!alg.is_sat(&alg.and(p, q).unwrap()));
            }
        }
        // local guards are disjoint per state
        for q in 0..lm.num_states() {
            let mut gs: Vec<_> = lm.outgoing(q).iter().map(|t| t.guard.clone()).collect();
            gs.sort();
            gs.dedup();
            for (i, p) in gs.iter().enumerate() {
                for g in &gs[i + 1..] {
                    prop_assert!(!alg.is_sat(&alg.and(p, g).unwrap()));
                }
            }
        }
    }

    #[test]
    fn reverse_is_an_involution(m in arb_sfa()) {
        prop_assert_eq!(reverse(&reverse(&m)), m);
    }

    #[test]
    fn text_round_trip(m in arb_sfa()) {
        let out = write_sfa(&m);
        let back = read_sfa(&out).unwrap();
        prop_assert_eq!(write_sfa(&back), out);
        prop_assert_eq!(denotation(&back), denotation(&m));
    }
}

#[test]
fn complete_empty_state() {
    let a = alpha();
    let m = Sfa::new(a.clone(), 1, [], [0], []).unwrap();
    let c = complete(&m);
    assert_eq!(c.sink, Some(1));
    assert_eq!(c.sfa.num_states(), 2);
    assert_eq!(c.sfa.guard_between(0, 1), a.top());
    assert_eq!(c.sfa.guard_between(1, 1), a.top());
}

#[test]
fn complete_half_alphabet() {
    let a = alpha();
    let m = Sfa::new(a.clone(), 2, [Transition::new(0, r(&a, 'a', 'm'), 1)], [0], [1]).unwrap();
    let c = complete(&m).sfa;
    assert_eq!(c.guard_between(0, 2), r(&a, 'n', 'z'));
    assert_eq!(c.guard_between(1, 2), a.top());
    assert_eq!(c.guard_between(2, 2), a.top());
    assert_eq!(c.num_transitions(), 4);
}

#[test]
fn local_split_of_overlapping_guards() {
    let a = alpha();
    let m = Sfa::new(
        a.clone(),
        3,
        [
            Transition::new(0, r(&a, 'a', 'm'), 1),
            Transition::new(0, r(&a, 'h', 'z'), 2),
        ],
        [0],
        [1, 2],
    )
    .unwrap();
    let (lm, stats) = local_mintermise(&m, &Limits::unbounded()).unwrap();
    let got: BTreeSet<(StateId, Predicate, StateId)> = lm
        .transitions()
        .iter()
        .map(|t| (t.source, t.guard.clone(), t.target))
        .collect();
    let want: BTreeSet<_> = [
        (0, r(&a, 'a', 'g'), 1),
        (0, r(&a, 'h', 'm'), 1),
        (0, r(&a, 'h', 'm'), 2),
        (0, r(&a, 'n', 'z'), 2),
    ]
    .into_iter()
    .collect();
    assert_eq!(got, want);
    assert_eq!(stats.per_state[0], 3);

    // disjoint guards are already a partition
    let d = Sfa::new(
        a.clone(),
        2,
        [
            Transition::new(0, r(&a, 'a', 'c'), 1),
            Transition::new(0, r(&a, 'x', 'z'), 0),
        ],
        [0],
        [1],
    )
    .unwrap();
    assert_eq!(local_mintermise(&d, &Limits::unbounded()).unwrap().0, d);
}

#[test]
fn reversal_reverses_words() {
    for seed in 0..30 {
        let m = random_sfa(seed, 5, 2.0, &Algebra::explicit(["x", "y"]).unwrap(), 3);
        let rm = reverse(&m);
        for (a, b) in [(&m, &rm), (&rm, &m)] {
            for mut w in enumerate_language(a, 5) {
                w.reverse();
                assert!(accepts(b, &w).unwrap());
            }
        }
    }
}

#[test]
fn empty_word_when_initial_is_final() {
    let a = alpha();
    let m = Sfa::new(a, 1, [], [0], [0]).unwrap();
    assert!(accepts(&m, &[]).unwrap());
}
