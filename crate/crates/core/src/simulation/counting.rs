//! The counter-based worklist shared by INY (syntactic symbols) and LocalSim
//! (local minterms with a symbolic zero test against the original Δ).

use std::collections::{HashMap, VecDeque};

use crate::algebra::Predicate;
use crate::automata::{Sfa, StateId};
use crate::error::SimError;

use super::{Mutation, Relation, RunStats, SimOptions};

pub(super) enum OnZero<'a> {
    /// INY: predecessors of `i` over the same label, plus the symbol-compatibility seed.
    Syntactic,
    /// LocalSim: predecessors of `i` in this automaton whose guard meets the label.
    Symbolic(&'a Sfa),
}

struct Worklist {
    queue: VecDeque<(StateId, StateId)>,
    pending: Relation,
}

impl Worklist {
    fn push(&mut self, sim: &Relation, s: StateId, t: StateId, opts: &SimOptions, stats: &mut RunStats) {
        if sim.contains(s, t) && self.pending.insert(s, t) {
            if opts.check_invariants && opts.reference.as_ref().is_some_and(|r| r.contains(s, t)) {
                stats.invariant_violations += 1;
            }
            self.queue.push_back((s, t));
        }
    }
}

/// Runs the counting refinement over `dl`, whose labels index the counters.
pub(super) fn counting_sim(
    dl: &Sfa,
    on_zero: OnZero<'_>,
    opts: &SimOptions,
    stats: &mut RunStats,
) -> Result<Relation, SimError> {
    let n = dl.num_states();
    let alg = dl.algebra();

    // group every transition by (source, label); syms numbers the distinct labels
    let mut sym_ids: HashMap<&Predicate, usize> = HashMap::new();
    let mut group_ids: HashMap<(StateId, usize), usize> = HashMap::new();
    let mut sym_of = Vec::with_capacity(dl.num_transitions());
    let mut group_of = Vec::with_capacity(dl.num_transitions());
    let mut group_members: Vec<Vec<usize>> = Vec::new();
    let mut group_label: Vec<usize> = Vec::new();
    for (k, t) in dl.transitions().iter().enumerate() {
        let next = sym_ids.len();
        let sym = *sym_ids.entry(&t.guard).or_insert(next);
        let next = group_ids.len();
        let g = *group_ids.entry((t.source, sym)).or_insert(next);
        if g == group_members.len() {
            group_members.push(Vec::new());
            group_label.push(k);
        }
        group_members[g].push(k);
        sym_of.push(sym);
        group_of.push(g);
    }
    let groups = group_members.len();
    opts.limits.check_cells(groups.saturating_mul(n))?;

    let bump = u32::from(opts.mutation == Some(Mutation::CounterInitOffByOne));
    let mut counters = vec![0u32; groups * n];
    for g in 0..groups {
        counters[g * n..(g + 1) * n].fill(group_members[g].len() as u32 + bump);
    }

    // incoming transitions of every state, sorted by label for the syntactic zero test
    let pre_by_sym: Vec<Vec<(usize, StateId)>> = (0..n)
        .map(|i| {
            let mut v: Vec<(usize, StateId)> = dl
                .incoming(i)
                .iter()
                .map(|&k| (sym_of[k], dl.transition(k).source))
                .collect();
            v.sort_unstable();
            v
        })
        .collect();

    let mut sim = Relation::full(n);
    let mut wl = Worklist {
        queue: VecDeque::new(),
        pending: Relation::empty(n),
    };

    let syntactic = matches!(on_zero, OnZero::Syntactic);
    let syms = sym_ids.len();
    let sym_words = syms.div_ceil(64);
    let mut out_syms = vec![0u64; n * sym_words];
    if syntactic {
        for (k, t) in dl.transitions().iter().enumerate() {
            out_syms[t.source * sym_words + sym_of[k] / 64] |= 1 << (sym_of[k] % 64);
        }
    }
    for q in 0..n {
        for r in 0..n {
            let accept = dl.is_final(q) && !dl.is_final(r);
            let lacks =
                syntactic && (0..sym_words).any(|w| out_syms[q * sym_words + w] & !out_syms[r * sym_words + w] != 0);
            if accept || lacks {
                wl.push(&sim, q, r, opts, stats);
            }
        }
    }

    while let Some((i, j)) = wl.queue.pop_front() {
        stats.pops += 1;
        if stats.pops.is_multiple_of(256) {
            opts.limits.check_deadline()?;
        }
        if opts.check_invariants {
            if !sim.contains(i, j) {
                stats.invariant_violations += 1;
            }
            for g in 0..groups {
                for r in 0..n {
                    let expect = group_members[g]
                        .iter()
                        .filter(|&&k| sim.contains(r, dl.transition(k).target))
                        .count() as u32;
                    stats.counter_checks += 1;
                    if counters[g * n + r] != expect {
                        stats.counter_mismatches += 1;
                    }
                }
            }
        }
        wl.pending.remove(i, j);
        sim.remove(i, j);

        for &k in dl.incoming(j) {
            let g = group_of[k];
            let c = &mut counters[g * n + i];
            *c -= 1;
            if *c != 0 {
                continue;
            }
            let t = dl.transition(k).source;
            match on_zero {
                OnZero::Syntactic => {
                    let pre = &pre_by_sym[i];
                    let sym = sym_of[k];
                    let lo = pre.partition_point(|&(a, _)| a < sym);
                    let hi = pre.partition_point(|&(a, _)| a <= sym);
                    for &(_, s) in &pre[lo..hi] {
                        wl.push(&sim, s, t, opts, stats);
                    }
                }
                OnZero::Symbolic(orig) => {
                    let psi = &dl.transition(group_label[g]).guard;
                    for &kk in orig.incoming(i) {
                        let tr = orig.transition(kk);
                        if sim.contains(tr.source, t)
                            && !wl.pending.contains(tr.source, t)
                            && alg.is_sat(&alg.conj(psi, &tr.guard))
                        {
                            wl.push(&sim, tr.source, t, opts, stats);
                        }
                    }
                }
            }
        }
    }
    Ok(sim)
}
