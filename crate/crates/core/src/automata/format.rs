//! Line-oriented SFA text format.
//!
//! ```text
//! @sfa
//! algebra interval 0 1114111        # kind + domain descriptor
//! states 3
//! initial 0
//! final 2
//! trans 0 [97-109] 1
//! trans 1 [97-122] 2
//! ```
//!
//! `initial` and `final` take any number of states and may repeat. Parallel
//! edges are merged by disjunction on read.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{AlgebraError, AutomatonError};

use super::{Sfa, StateId, Transition};

fn syntax(line: usize, reason: impl Into<String>) -> AutomatonError {
    AutomatonError::Syntax {
        line,
        reason: reason.into(),
    }
}

fn parse_algebra(line: usize, args: &[&str]) -> Result<Arc<Algebra>, AutomatonError> {
    let num = |s: &str| -> Result<u32, AutomatonError> {
        s.parse()
            .map_err(|_| syntax(line, format!("expected a number, found `{s}`")))
    };
    let alg = match args {
        ["interval", lo, hi] => Algebra::interval(num(lo)?, num(hi)?),
        ["bitvector", k] => Algebra::bitvector(num(k)?),
        ["explicit", symbols @ ..] => Algebra::explicit(symbols.iter().copied()),
        _ => {
            return Err(syntax(
                line,
                "expected `algebra interval LO HI`, `algebra bitvector K` or `algebra explicit SYM...`",
            ))
        }
    };
    alg.map_err(|e| syntax(line, e.to_string()))
}

pub fn read_sfa(text: &str) -> Result<Sfa, AutomatonError> {
    let mut header = false;
    let mut algebra: Option<Arc<Algebra>> = None;
    let mut n: Option<usize> = None;
    let mut initial = Vec::new();
    let mut finals = Vec::new();
    let mut trans = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if !header {
            if content != "@sfa" {
                return Err(syntax(line, "expected `@sfa` header"));
            }
            header = true;
            continue;
        }
        let words: Vec<&str> = content.split_whitespace().collect();
        let state = |s: &str| -> Result<StateId, AutomatonError> {
            s.parse()
                .map_err(|_| syntax(line, format!("expected a state index, found `{s}`")))
        };
        match words[0] {
            "algebra" if algebra.is_none() => algebra = Some(parse_algebra(line, &words[1..])?),
            "states" if n.is_none() => match words[1..] {
                [count] => n = Some(state(count)?),
                _ => return Err(syntax(line, "expected `states N`")),
            },
            "initial" => {
                for w in &words[1..] {
                    initial.push(state(w)?);
                }
            }
            "final" => {
                for w in &words[1..] {
                    finals.push(state(w)?);
                }
            }
            "trans" => {
                if words.len() < 4 {
                    return Err(syntax(line, "expected `trans SRC PREDICATE DST`"));
                }
                let alg = algebra
                    .as_ref()
                    .ok_or_else(|| syntax(line, "`trans` before `algebra`"))?;
                let src = state(words[1])?;
                let dst = state(words[words.len() - 1])?;
                let body = content
                    .strip_prefix("trans")
                    .and_then(|r| r.trim_start().strip_prefix(words[1]))
                    .and_then(|r| r.trim_end().strip_suffix(words[words.len() - 1]))
                    .map(str::trim)
                    .ok_or_else(|| syntax(line, "malformed transition"))?;
                let guard = alg.parse_predicate(body).map_err(|e| match e {
                    AlgebraError::Parse { .. } => syntax(line, e.to_string()),
                    other => AutomatonError::Algebra(other),
                })?;
                trans.push((line, Transition::new(src, guard, dst)));
            }
            "algebra" | "states" => return Err(syntax(line, format!("duplicate `{}`", words[0]))),
            other => return Err(syntax(line, format!("unknown directive `{other}`"))),
        }
    }
    if !header {
        return Err(syntax(1, "expected `@sfa` header"));
    }
    let algebra = algebra.ok_or_else(|| syntax(0, "missing `algebra`"))?;
    let n = n.ok_or_else(|| syntax(0, "missing `states`"))?;
    for (line, t) in &trans {
        for q in [t.source, t.target] {
            if q >= n {
                return Err(syntax(
                    *line,
                    format!("state {q} out of range (automaton has {n} states)"),
                ));
            }
        }
    }
    let sfa = Sfa::new(algebra, n, trans.into_iter().map(|(_, t)| t), initial, finals)?;
    Ok(sfa.merge_parallel())
}

pub fn write_sfa(m: &Sfa) -> String {
    let alg = m.algebra();
    let mut out = String::new();
    let join = |it: &mut dyn Iterator<Item = StateId>| it.map(|q| format!(" {q}")).collect::<String>();
    let _ = writeln!(out, "@sfa");
    let _ = writeln!(out, "algebra {}", alg.descriptor());
    let _ = writeln!(out, "states {}", m.num_states());
    let _ = writeln!(out, "initial{}", join(&mut m.initial().iter().copied()));
    let _ = writeln!(out, "final{}", join(&mut m.finals()));
    for t in m.transitions() {
        let _ = writeln!(
            out,
            "trans {} {} {}",
            t.source,
            alg.format_predicate(&t.guard),
            t.target
        );
    }
    out
}
