use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;

fn az() -> Arc<Algebra> {
    Algebra::interval('a' as u32, 'z' as u32).unwrap()
}

fn chars(lo: char, hi: char) -> (u32, u32) {
    (lo as u32, hi as u32)
}

/// Denotation by brute-force membership over the whole domain.
fn denote(alg: &Algebra, p: &Predicate) -> BTreeSet<u64> {
    assert!(alg.is_enumerable());
    let (lo, hi) = match alg.domain() {
        Domain::Interval { lo, hi } => (*lo as u64, *hi as u64),
        _ => (0, alg.domain_size() as u64 - 1),
    };
    (lo..=hi).filter(|&s| alg.contains(p, s)).collect()
}

#[test]
fn and_of_overlapping_ranges() {
    let alg = az();
    let p = alg.range(chars('a', 'm').0, chars('a', 'm').1).unwrap();
    let q = alg.range('h' as u32, 'z' as u32).unwrap();
    let r = alg.and(&p, &q).unwrap();
    let expected: BTreeSet<u64> = ('a'..='z')
        .map(|c| c as u64)
        .filter(|&c| ('a' as u64..='m' as u64).contains(&c) && ('h' as u64..='z' as u64).contains(&c))
        .collect();
    assert_eq!(denote(&alg, &r), expected);
    assert_eq!(r, alg.range('h' as u32, 'm' as u32).unwrap());
}

#[test]
fn identity_and_complement_laws() {
    let alg = az();
    let p = alg.ranges(&[chars('b', 'd'), chars('x', 'y')]).unwrap();
    assert_eq!(alg.and(&p, &alg.top()).unwrap(), p);
    let np = alg.not(&p).unwrap();
    assert_eq!(alg.and(&p, &np).unwrap(), alg.bot());
    assert_eq!(alg.not(&np).unwrap(), p);
    assert_eq!(alg.not(&alg.bot()).unwrap(), alg.top());
}

#[test]
fn or_of_adjacent_ranges_coalesces() {
    let alg = az();
    let p = alg.range('a' as u32, 'c' as u32).unwrap();
    let q = alg.range('d' as u32, 'f' as u32).unwrap();
    let r = alg.or(&p, &q).unwrap();
    let expected: BTreeSet<u64> = ('a' as u64..='f' as u64).collect();
    assert_eq!(denote(&alg, &r), expected);
    assert_eq!(r, alg.range('a' as u32, 'f' as u32).unwrap());
}

#[test]
fn satisfiability() {
    let alg = az();
    assert!(!alg.is_sat(&alg.bot()));
    assert!(alg.is_sat(&alg.range('a' as u32, 'a' as u32).unwrap()));
    let p = alg.range('a' as u32, 'm' as u32).unwrap();
    let q = alg.range('n' as u32, 'z' as u32).unwrap();
    let r = alg.and(&p, &q).unwrap();
    assert!(denote(&alg, &r).is_empty());
    assert!(!alg.is_sat(&r));
}

#[test]
fn foreign_predicates_are_rejected() {
    let a = az();
    let b = az();
    let p = a.top();
    let q = b.top();
    assert_eq!(a.and(&p, &q), Err(AlgebraError::Mismatch));
    assert_eq!(b.not(&p), Err(AlgebraError::Mismatch));
}

#[test]
fn minterms_of_top_is_top() {
    let alg = az();
    assert_eq!(alg.minterms(&[alg.top()]), vec![alg.top()]);
}

#[test]
fn minterms_of_two_overlapping_ranges() {
    let alg = az();
    let phi = alg.range('a' as u32, 'm' as u32).unwrap();
    let psi = alg.range('h' as u32, 'z' as u32).unwrap();
    // oracle: every subset Φ' of {φ, ψ}, conjunction checked by enumeration
    let dphi = denote(&alg, &phi);
    let dpsi = denote(&alg, &psi);
    let dom: BTreeSet<u64> = ('a' as u64..='z' as u64).collect();
    let mut expected: BTreeSet<BTreeSet<u64>> = BTreeSet::new();
    for mask in 0..4u32 {
        let cell: BTreeSet<u64> = dom
            .iter()
            .copied()
            .filter(|s| dphi.contains(s) == (mask & 1 == 1) && dpsi.contains(s) == (mask & 2 == 2))
            .collect();
        if !cell.is_empty() {
            expected.insert(cell);
        }
    }
    let got: BTreeSet<BTreeSet<u64>> = alg.minterms(&[phi, psi]).iter().map(|m| denote(&alg, m)).collect();
    assert_eq!(got, expected);
    let ms: BTreeSet<Predicate> = alg
        .minterms(&[
            alg.range('a' as u32, 'm' as u32).unwrap(),
            alg.range('h' as u32, 'z' as u32).unwrap(),
        ])
        .into_iter()
        .collect();
    let want: BTreeSet<Predicate> = [('a', 'g'), ('h', 'm'), ('n', 'z')]
        .iter()
        .map(|&(a, b)| alg.range(a as u32, b as u32).unwrap())
        .collect();
    assert_eq!(ms, want);
}

#[test]
fn independent_bits_give_singleton_minterms() {
    for n in 1..=10u32 {
        let alg = Algebra::bitvector(n).unwrap();
        let vars: Vec<Predicate> = (0..n).map(|i| alg.var(i).unwrap()).collect();
        let ms = alg.minterms(&vars);
        assert_eq!(ms.len(), 1 << n);
        let mut seen = BTreeSet::new();
        for m in &ms {
            let d = denote(&alg, m);
            assert_eq!(d.len(), 1, "minterm is not a singleton for n = {n}");
            seen.extend(d);
        }
        assert_eq!(seen.len(), 1 << n);
    }
}

#[test]
fn minterm_cap_is_enforced() {
    let alg = Algebra::bitvector(8).unwrap();
    let vars: Vec<Predicate> = (0..8).map(|i| alg.var(i).unwrap()).collect();
    let limits = Limits::default().with_cap(255);
    assert_eq!(
        alg.minterms_with(&vars, &limits),
        Err(ResourceError::MintermBlowup { cap: 255 })
    );
    assert_eq!(
        alg.minterms_with(&vars, &Limits::default().with_cap(256))
            .unwrap()
            .len(),
        256
    );
}

#[test]
fn minterm_members_match_containment() {
    let alg = az();
    let preds = vec![
        alg.range('a' as u32, 'm' as u32).unwrap(),
        alg.range('h' as u32, 'z' as u32).unwrap(),
        alg.ranges(&[chars('c', 'e'), chars('x', 'x')]).unwrap(),
    ];
    for m in alg.minterms_with(&preds, &Limits::default()).unwrap() {
        for (i, p) in preds.iter().enumerate() {
            assert_eq!(m.members.contains(&i), alg.is_subset(&m.predicate, p).unwrap());
        }
    }
}

#[test]
fn enumerate_examples() {
    let alg = az();
    assert!(alg.enumerate(&alg.bot(), 5).is_empty());
    let abc = alg.range('a' as u32, 'c' as u32).unwrap();
    assert_eq!(alg.enumerate(&abc, 10), vec![97, 98, 99]);
    let bv = Algebra::bitvector(2).unwrap();
    let all = bv.enumerate(&bv.top(), 4);
    let all: Vec<String> = all.into_iter().map(|s| bv.format_symbol(s)).collect();
    assert_eq!(all, vec!["00", "01", "10", "11"]);
}

#[test]
fn explicit_algebra_basics() {
    let alg = Algebra::explicit(["a", "b", "c"]).unwrap();
    let ab = alg.parse_predicate("{a,b}").unwrap();
    let bc = alg.parse_predicate("{ b , c }").unwrap();
    assert_eq!(alg.format_predicate(&alg.and(&ab, &bc).unwrap()), "{b}");
    assert_eq!(alg.format_predicate(&alg.not(&ab).unwrap()), "{c}");
    assert_eq!(alg.not(&alg.bot()).unwrap(), alg.top());
    assert_eq!(alg.enumerate(&bc, 5), vec![1, 2]);
    assert!(matches!(alg.parse_predicate("{a,a}"), Err(AlgebraError::Parse { token, .. }) if token == "a"));
    assert!(matches!(alg.parse_predicate("{d}"), Err(AlgebraError::Parse { token, .. }) if token == "d"));
}

#[test]
fn interval_syntax_diagnostics() {
    let alg = Algebra::unicode();
    let p = alg.parse_predicate("[48-57,65-90]").unwrap();
    assert_eq!(alg.format_predicate(&p), "[48-57,65-90]");
    assert_eq!(alg.parse_predicate("[97]").unwrap(), alg.range(97, 97).unwrap());
    assert_eq!(alg.parse_predicate("[]").unwrap(), alg.bot());
    let err = alg.parse_predicate("[48-57,50-60]").unwrap_err();
    assert!(
        matches!(&err, AlgebraError::Parse { token, .. } if token == "50-60"),
        "{err}"
    );
    let err = alg.parse_predicate("[9-3]").unwrap_err();
    assert!(matches!(&err, AlgebraError::Parse { token, .. } if token == "9-3"));
    let err = alg.parse_predicate("[1-x]").unwrap_err();
    assert!(matches!(&err, AlgebraError::Parse { token, .. } if token == "1-x"));
    assert!(alg.parse_predicate("[0-1114112]").is_err());
    assert!(alg.parse_predicate("97-98").is_err());
}

#[test]
fn bitvector_syntax() {
    let alg = Algebra::bitvector(3).unwrap();
    let p = alg.parse_predicate("b0 & !b1 | b2").unwrap();
    let text = alg.format_predicate(&p);
    assert_eq!(alg.parse_predicate(&text).unwrap(), p);
    assert_eq!(
        alg.parse_predicate("!(b0 | b1)").unwrap(),
        alg.parse_predicate("!b0 & !b1").unwrap()
    );
    assert_eq!(alg.format_predicate(&alg.top()), "true");
    assert_eq!(alg.format_predicate(&alg.bot()), "false");
    assert!(matches!(alg.parse_predicate("b3"), Err(AlgebraError::Parse { token, .. }) if token == "b3"));
    assert!(matches!(alg.parse_predicate("(b0"), Err(AlgebraError::Parse { token, .. }) if token == "<end>"));
    assert!(matches!(alg.parse_predicate("b0 b1"), Err(AlgebraError::Parse { token, .. }) if token == "b1"));
    assert!(matches!(alg.parse_predicate("b0 + b1"), Err(AlgebraError::Parse { token, .. }) if token == "+"));
}

#[test]
fn singleton_and_symbols() {
    let bv = Algebra::bitvector(4).unwrap();
    let s = bv.parse_symbol("0110").unwrap();
    assert_eq!(s, 6);
    let p = bv.singleton(s).unwrap();
    assert_eq!(bv.enumerate(&p, 10), vec![6]);
    assert!(bv.parse_symbol("011").is_err());
    let alg = az();
    assert!(alg.singleton(5).is_err());
    assert_eq!(alg.parse_symbol("97").unwrap(), 97);
    assert!(alg.parse_symbol("96").is_err());
}

#[test]
fn domain_validation() {
    assert!(Algebra::interval(5, 4).is_err());
    assert!(Algebra::interval(0, MAX_CODEPOINT + 1).is_err());
    assert!(Algebra::bitvector(0).is_err());
    assert!(Algebra::bitvector(65).is_err());
    assert!(Algebra::explicit(Vec::<String>::new()).is_err());
    assert!(Algebra::explicit(["a", "a"]).is_err());
    let wide = Algebra::bitvector(64).unwrap();
    assert_eq!(wide.witness(&wide.top()), Some(0));
    let top = wide.var(0).unwrap();
    assert_eq!(wide.witness(&top), Some(1 << 63));
}

#[test]
fn operation_counters_track_calls() {
    let alg = az();
    let before = alg.ops();
    let p = alg.top();
    let q = alg.not(&p).unwrap();
    let _ = alg.and(&p, &q).unwrap();
    let _ = alg.is_sat(&q);
    alg.minterms(&[p]);
    let d = alg.ops() - before;
    assert_eq!(d.not, 2);
    assert!(d.and >= 2);
    assert_eq!(d.minterms, 1);
}

// ---- property tests -------------------------------------------------------

/// Expression trees evaluated independently of the algebra.
#[derive(Debug, Clone)]
enum Expr {
    Atom(Vec<(u32, u32)>),
    Var(u32),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

fn eval(e: &Expr, s: u64, width: u32) -> bool {
    match e {
        Expr::Atom(rs) => rs.iter().any(|&(a, b)| s >= a as u64 && s <= b as u64),
        Expr::Var(i) => (s >> (width - 1 - i)) & 1 == 1,
        Expr::Not(x) => !eval(x, s, width),
        Expr::And(x, y) => eval(x, s, width) && eval(y, s, width),
        Expr::Or(x, y) => eval(x, s, width) || eval(y, s, width),
    }
}

fn build(alg: &Algebra, e: &Expr) -> Predicate {
    match e {
        Expr::Atom(rs) => match alg.kind() {
            AlgebraKind::Interval => alg.ranges(rs).unwrap(),
            _ => {
                let mut acc = alg.bot();
                for &(a, b) in rs {
                    for s in a..=b {
                        if (s as u128) < alg.domain_size() {
                            acc = alg.or(&acc, &alg.singleton(s as u64).unwrap()).unwrap();
                        }
                    }
                }
                acc
            }
        },
        Expr::Var(i) => alg.var(*i).unwrap(),
        Expr::Not(x) => alg.not(&build(alg, x)).unwrap(),
        Expr::And(x, y) => alg.and(&build(alg, x), &build(alg, y)).unwrap(),
        Expr::Or(x, y) => alg.or(&build(alg, x), &build(alg, y)).unwrap(),
    }
}

fn range_leaf(max: u32) -> impl Strategy<Value = Expr> {
    prop::collection::vec((0..=max, 0..=max), 0..4)
        .prop_map(|v| Expr::Atom(v.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect()))
}

fn expr(leaf: BoxedStrategy<Expr>) -> impl Strategy<Value = Expr> {
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|x| Expr::Not(Box::new(x))),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Expr::And(Box::new(x), Box::new(y))),
            (inner.clone(), inner).prop_map(|(x, y)| Expr::Or(Box::new(x), Box::new(y))),
        ]
    })
}

fn interval_expr() -> impl Strategy<Value = Expr> {
    expr(range_leaf(63).boxed())
}

fn bv_expr() -> impl Strategy<Value = Expr> {
    expr(prop_oneof![(0u32..5).prop_map(Expr::Var), range_leaf(31)].boxed())
}

fn check_denotation(alg: &Algebra, e: &Expr, width: u32) -> Result<(), TestCaseError> {
    let p = build(alg, e);
    let expected: BTreeSet<u64> = (0..alg.domain_size() as u64).filter(|&s| eval(e, s, width)).collect();
    prop_assert_eq!(denote(alg, &p), expected.clone());
    let all = alg.enumerate(&p, usize::MAX);
    prop_assert_eq!(all, expected.iter().copied().collect::<Vec<_>>());
    prop_assert_eq!(alg.is_sat(&p), !alg.enumerate(&p, 1).is_empty());
    Ok(())
}

proptest! {
    #[test]
    fn interval_denotation_matches_evaluation(e in interval_expr()) {
        let alg = Algebra::interval(0, 63).unwrap();
        check_denotation(&alg, &e, 0)?;
    }

    #[test]
    fn bitvector_denotation_matches_evaluation(e in bv_expr()) {
        let alg = Algebra::bitvector(5).unwrap();
        check_denotation(&alg, &e, 5)?;
    }

    #[test]
    fn explicit_denotation_matches_evaluation(e in expr(range_leaf(9).boxed())) {
        let names: Vec<String> = (0..10).map(|i| format!("s{i}")).collect();
        let alg = Algebra::explicit(names).unwrap();
        check_denotation(&alg, &e, 0)?;
    }

    #[test]
    fn boolean_laws_hold_canonically(a in bv_expr(), b in bv_expr(), c in bv_expr()) {
        let alg = Algebra::bitvector(5).unwrap();
        let (p, q, r) = (build(&alg, &a), build(&alg, &b), build(&alg, &c));
        let lhs = alg.and(&alg.and(&p, &q).unwrap(), &r).unwrap();
        let rhs = alg.and(&p, &alg.and(&q, &r).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let dm_l = alg.not(&alg.or(&p, &q).unwrap()).unwrap();
        let dm_r = alg.and(&alg.not(&p).unwrap(), &alg.not(&q).unwrap()).unwrap();
        prop_assert_eq!(dm_l, dm_r);
        prop_assert_eq!(alg.not(&alg.not(&p).unwrap()).unwrap(), p);
    }

    #[test]
    fn interval_laws_hold_canonically(a in interval_expr(), b in interval_expr()) {
        let alg = Algebra::interval(0, 63).unwrap();
        let (p, q) = (build(&alg, &a), build(&alg, &b));
        let dm_l = alg.not(&alg.and(&p, &q).unwrap()).unwrap();
        let dm_r = alg.or(&alg.not(&p).unwrap(), &alg.not(&q).unwrap()).unwrap();
        prop_assert_eq!(dm_l, dm_r);
        prop_assert_eq!(alg.or(&p, &q).unwrap(), alg.or(&q, &p).unwrap());
    }

    #[test]
    fn minterms_partition_and_refine(es in prop::collection::vec(interval_expr(), 0..6)) {
        let alg = Algebra::interval(0, 63).unwrap();
        let preds: Vec<Predicate> = es.iter().map(|e| build(&alg, e)).collect();
        let ms = alg.minterms(&preds);
        let mut union = BTreeSet::new();
        for (i, m) in ms.iter().enumerate() {
            prop_assert!(alg.is_sat(m));
            for m2 in &ms[i + 1..] {
                prop_assert!(!alg.is_sat(&alg.and(m, m2).unwrap()));
            }
            let dm = denote(&alg, m);
            for p in &preds {
                if alg.is_sat(&alg.and(m, p).unwrap()) {
                    prop_assert!(dm.is_subset(&denote(&alg, p)));
                }
            }
            union.extend(dm);
        }
        prop_assert_eq!(union, (0..64).collect::<BTreeSet<u64>>());
    }

    #[test]
    fn formatting_round_trips(e in bv_expr(), f in interval_expr()) {
        let bv = Algebra::bitvector(5).unwrap();
        let p = build(&bv, &e);
        prop_assert_eq!(bv.parse_predicate(&bv.format_predicate(&p)).unwrap(), p);
        let iv = Algebra::interval(0, 63).unwrap();
        let q = build(&iv, &f);
        prop_assert_eq!(iv.parse_predicate(&iv.format_predicate(&q)).unwrap(), q);
    }
}
