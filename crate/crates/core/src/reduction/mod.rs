//! Language-preserving reduction: quotienting by simulation equivalence,
//! little-brother removal, trimming, and the forward/backward loop.

use std::fmt;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use crate::automata::{complete, reverse, Sfa, StateId, Transition};
use crate::error::ReduceError;
use crate::limits::Limits;
use crate::simulation::{bisimulation, nocount_sim, Relation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Simulation,
    Bisimulation,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Simulation => "sim",
            Method::Bisimulation => "bisim",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Iteration {
    pub direction: Direction,
    pub states_before: usize,
    pub states_after: usize,
    pub transitions_before: usize,
    pub transitions_after: usize,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionReport {
    pub method: Method,
    pub iterations: Vec<Iteration>,
}

impl ReductionReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("iter,direction,states_before,states_after,trans_before,trans_after,ms\n");
        for (k, it) in self.iterations.iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{:.3}",
                k + 1,
                it.direction,
                it.states_before,
                it.states_after,
                it.transitions_before,
                it.transitions_after,
                it.elapsed.as_secs_f64() * 1e3
            );
        }
        out
    }
}

fn check_preorder(m: &Sfa, rel: &Relation) -> Result<(), ReduceError> {
    if rel.size() != m.num_states() {
        return Err(ReduceError::SizeMismatch {
            relation: rel.size(),
            automaton: m.num_states(),
        });
    }
    if let Some(q) = rel.reflexivity_witness() {
        return Err(ReduceError::NotReflexive(q));
    }
    if let Some((a, b, c)) = rel.transitivity_witness() {
        return Err(ReduceError::NotTransitive(a, b, c));
    }
    Ok(())
}

/// Number of classes of `R ∩ R⁻¹`.
pub fn class_count(rel: &Relation) -> usize {
    rel.equivalence_classes().into_iter().max().map_or(0, |c| c + 1)
}

/// Merges every class of `preorder ∩ preorder⁻¹` into its least member.
/// Classes are numbered in order of their least member.
pub fn quotient(m: &Sfa, preorder: &Relation) -> Result<Sfa, ReduceError> {
    check_preorder(m, preorder)?;
    Ok(quotient_by(m, &preorder.equivalence_classes()))
}

fn quotient_by(m: &Sfa, class: &[usize]) -> Sfa {
    let k = class.iter().copied().max().map_or(0, |c| c + 1);
    let ts: Vec<Transition> = m
        .transitions()
        .iter()
        .map(|t| Transition::new(class[t.source], t.guard.clone(), class[t.target]))
        .collect();
    let finals: Vec<StateId> = m.finals().map(|q| class[q]).collect();
    Sfa::new(
        m.algebra().clone(),
        k,
        ts,
        m.initial().iter().map(|&q| class[q]),
        finals,
    )
    .expect("class indices are in range")
    .merge_parallel()
}

/// Weakens each guard `q → p` by the guards from `q` into targets strictly above `p`,
/// drops transitions left unsatisfiable, then trims unreachable states.
pub fn remove_little_brothers(m: &Sfa, preorder: &Relation) -> Result<Sfa, ReduceError> {
    check_preorder(m, preorder)?;
    let m = m.merge_parallel();
    let alg = m.algebra();
    let mut ts = Vec::with_capacity(m.num_transitions());
    for q in 0..m.num_states() {
        let out = m.outgoing(q);
        for t in out {
            let p = t.target;
            let bigger = alg.disj_all(
                out.iter()
                    .filter(|u| preorder.contains(p, u.target) && !preorder.contains(u.target, p))
                    .map(|u| &u.guard),
            );
            ts.push(Transition::new(q, alg.conj(&t.guard, &alg.neg(&bigger)), p));
        }
    }
    let pruned =
        Sfa::new(alg.clone(), m.num_states(), ts, m.initial().iter().copied(), m.finals()).expect("states unchanged");
    Ok(trim_unreachable(&pruned))
}

/// Removes states not reachable from an initial state; survivors keep their relative order.
pub fn trim_unreachable(m: &Sfa) -> Sfa {
    let n = m.num_states();
    let mut seen = vec![false; n];
    let mut stack: Vec<StateId> = m.initial().to_vec();
    for &q in &stack {
        seen[q] = true;
    }
    while let Some(q) = stack.pop() {
        for t in m.outgoing(q) {
            if !seen[t.target] {
                seen[t.target] = true;
                stack.push(t.target);
            }
        }
    }
    let mut index = vec![usize::MAX; n];
    let mut k = 0;
    for q in 0..n {
        if seen[q] {
            index[q] = k;
            k += 1;
        }
    }
    let ts: Vec<Transition> = m
        .transitions()
        .iter()
        .filter(|t| seen[t.source])
        .map(|t| Transition::new(index[t.source], t.guard.clone(), index[t.target]))
        .collect();
    Sfa::new(
        m.algebra().clone(),
        k,
        ts,
        m.initial().iter().map(|&q| index[q]),
        m.finals().filter(|&q| seen[q]).map(|q| index[q]),
    )
    .expect("reindexed states are in range")
}

/// The relation `method` yields on `complete(m)`, restricted to the states of `m`.
pub fn relation_for(m: &Sfa, method: Method, limits: &Limits) -> Result<Relation, ReduceError> {
    let c = complete(m).sfa;
    let rel = match method {
        Method::Simulation => nocount_sim(&c, limits)?,
        Method::Bisimulation => bisimulation(&c)?,
    };
    Ok(rel.restrict(m.num_states()))
}

/// One reduction pass in the current orientation.
pub fn reduce_once(m: &Sfa, method: Method, limits: &Limits) -> Result<Sfa, ReduceError> {
    let rel = relation_for(m, method, limits)?;
    let class = rel.equivalence_classes();
    let q = quotient_by(m, &class);
    match method {
        Method::Simulation => {
            let k = q.num_states();
            let mut rep = vec![usize::MAX; k];
            for (s, &c) in class.iter().enumerate() {
                if rep[c] == usize::MAX {
                    rep[c] = s;
                }
            }
            let induced = Relation::from_pairs(
                k,
                (0..k)
                    .flat_map(|a| (0..k).map(move |b| (a, b)))
                    .filter(|&(a, b)| rel.contains(rep[a], rep[b])),
            );
            remove_little_brothers(&q, &induced)
        }
        Method::Bisimulation => Ok(trim_unreachable(&q)),
    }
}

pub fn reduce_iterative(m: &Sfa, method: Method, max_iters: usize) -> Result<(Sfa, ReductionReport), ReduceError> {
    reduce_iterative_with(m, method, max_iters, &Limits::default())
}

/// Alternates forward and backward passes until a pass fails to remove a state
/// or `max_iters` passes ran; the result has the input's orientation.
pub fn reduce_iterative_with(
    m: &Sfa,
    method: Method,
    max_iters: usize,
    limits: &Limits,
) -> Result<(Sfa, ReductionReport), ReduceError> {
    assert!(max_iters >= 1);
    let mut cur = m.clone();
    let mut backward = false;
    let mut report = ReductionReport {
        method,
        iterations: Vec::new(),
    };
    for _ in 0..max_iters {
        let start = Instant::now();
        let (states_before, transitions_before) = (cur.num_states(), cur.num_transitions());
        let next = reduce_once(&cur, method, limits)?;
        report.iterations.push(Iteration {
            direction: if backward {
                Direction::Backward
            } else {
                Direction::Forward
            },
            states_before,
            states_after: next.num_states(),
            transitions_before,
            transitions_after: next.num_transitions(),
            elapsed: start.elapsed(),
        });
        let progressed = next.num_states() < states_before;
        cur = reverse(&next);
        backward = !backward;
        if !progressed {
            break;
        }
    }
    if backward {
        cur = reverse(&cur);
    }
    Ok((cur, report))
}
