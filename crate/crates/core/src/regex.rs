//! A small regular-expression front-end producing SFAs over Unicode codepoints.
//!
//! Supported: literals, `.` (any codepoint), classes `[a-z0-9_]` and `[^...]`,
//! `|`, `*`, `+`, `?`, groups, and escapes `\d \w \s \D \W \S \n \t \r` plus
//! `\` before any other character for the character itself.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{Algebra, Predicate, MAX_CODEPOINT};
use crate::automata::{Sfa, Transition};
use crate::reduction::trim_unreachable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegexAst {
    Empty,
    /// Sorted, disjoint, non-adjacent inclusive codepoint ranges; never empty.
    Class(Vec<(u32, u32)>),
    Concat(Vec<RegexAst>),
    Alt(Vec<RegexAst>),
    Star(Box<RegexAst>),
    Plus(Box<RegexAst>),
    Opt(Box<RegexAst>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("regex error at position {position}: expected {expected}, found {}", found.map_or("end of pattern".to_string(), |c| format!("`{c}`")))]
pub struct RegexError {
    /// Character offset into the pattern.
    pub position: usize,
    pub expected: String,
    pub found: Option<char>,
}

const META: &str = "\\.|*+?()[]^-";

fn normalize(mut rs: Vec<(u32, u32)>) -> Vec<(u32, u32)> {
    rs.sort_unstable();
    let mut out: Vec<(u32, u32)> = Vec::with_capacity(rs.len());
    for (lo, hi) in rs {
        match out.last_mut() {
            Some(last) if lo <= last.1.saturating_add(1) => last.1 = last.1.max(hi),
            _ => out.push((lo, hi)),
        }
    }
    out
}

fn complement(rs: &[(u32, u32)]) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut next = 0u32;
    for &(lo, hi) in rs {
        if lo > next {
            out.push((next, lo - 1));
        }
        next = hi + 1;
    }
    if next <= MAX_CODEPOINT {
        out.push((next, MAX_CODEPOINT));
    }
    out
}

fn class_escape(c: char) -> Option<Vec<(u32, u32)>> {
    let r = |a: char, b: char| (a as u32, b as u32);
    let base = match c.to_ascii_lowercase() {
        'd' => vec![r('0', '9')],
        'w' => vec![r('0', '9'), r('A', 'Z'), r('_', '_'), r('a', 'z')],
        's' => vec![r('\t', '\r'), r(' ', ' ')],
        _ => return None,
    };
    let base = normalize(base);
    Some(if c.is_ascii_uppercase() {
        complement(&base)
    } else {
        base
    })
}

fn literal_escape(c: char) -> char {
    match c {
        'n' => '\n',
        't' => '\t',
        'r' => '\r',
        other => other,
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn err(&self, expected: &str) -> RegexError {
        RegexError {
            position: self.pos,
            expected: expected.to_string(),
            found: self.peek(),
        }
    }

    fn alt(&mut self) -> Result<RegexAst, RegexError> {
        let mut branches = vec![self.concat()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            branches.push(self.concat()?);
        }
        Ok(if branches.len() == 1 {
            branches.pop().unwrap()
        } else {
            RegexAst::Alt(branches)
        })
    }

    fn concat(&mut self) -> Result<RegexAst, RegexError> {
        let mut items = Vec::new();
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            items.push(self.repeat()?);
        }
        Ok(match items.len() {
            0 => RegexAst::Empty,
            1 => items.pop().unwrap(),
            _ => RegexAst::Concat(items),
        })
    }

    fn repeat(&mut self) -> Result<RegexAst, RegexError> {
        let mut a = self.atom()?;
        while let Some(c) = self.peek() {
            a = match c {
                '*' => RegexAst::Star(Box::new(a)),
                '+' => RegexAst::Plus(Box::new(a)),
                '?' => RegexAst::Opt(Box::new(a)),
                _ => break,
            };
            self.pos += 1;
        }
        Ok(a)
    }

    fn atom(&mut self) -> Result<RegexAst, RegexError> {
        let Some(c) = self.peek() else {
            return Err(self.err("an atom"));
        };
        match c {
            '(' => {
                self.pos += 1;
                let inner = self.alt()?;
                if self.peek() != Some(')') {
                    return Err(self.err("`)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            '[' => self.class(),
            '.' => {
                self.pos += 1;
                Ok(RegexAst::Class(vec![(0, MAX_CODEPOINT)]))
            }
            '\\' => {
                self.pos += 1;
                let e = self.peek().ok_or_else(|| self.err("an escaped character"))?;
                self.pos += 1;
                Ok(RegexAst::Class(class_escape(e).unwrap_or_else(|| {
                    vec![(literal_escape(e) as u32, literal_escape(e) as u32)]
                })))
            }
            '*' | '+' | '?' | ']' | ')' => Err(self.err("an atom")),
            lit => {
                self.pos += 1;
                Ok(RegexAst::Class(vec![(lit as u32, lit as u32)]))
            }
        }
    }

    /// One class member: a codepoint or a shorthand class.
    fn class_char(&mut self) -> Result<Result<u32, Vec<(u32, u32)>>, RegexError> {
        match self.peek() {
            None => Err(self.err("`]`")),
            Some('\\') => {
                self.pos += 1;
                let e = self.peek().ok_or_else(|| self.err("an escaped character"))?;
                self.pos += 1;
                Ok(class_escape(e).map_or(Ok(literal_escape(e) as u32), Err))
            }
            Some(c) => {
                self.pos += 1;
                Ok(Ok(c as u32))
            }
        }
    }

    fn class(&mut self) -> Result<RegexAst, RegexError> {
        self.pos += 1;
        let negated = self.peek() == Some('^');
        if negated {
            self.pos += 1;
        }
        let mut ranges = Vec::new();
        let mut first = true;
        loop {
            match self.peek() {
                Some(']') if !first => {
                    self.pos += 1;
                    break;
                }
                None => return Err(self.err("`]`")),
                _ => {}
            }
            first = false;
            let start = self.pos;
            match self.class_char()? {
                Err(shorthand) => ranges.extend(shorthand),
                Ok(lo) => {
                    if self.peek() == Some('-') && self.chars.get(self.pos + 1).is_some_and(|&c| c != ']') {
                        self.pos += 1;
                        let hi = match self.class_char()? {
                            Ok(hi) => hi,
                            Err(_) => return Err(self.err("a range end")),
                        };
                        if hi < lo {
                            return Err(RegexError {
                                position: start,
                                expected: "an ascending range".into(),
                                found: char::from_u32(lo),
                            });
                        }
                        ranges.push((lo, hi));
                    } else {
                        ranges.push((lo, lo));
                    }
                }
            }
        }
        let mut ranges = normalize(ranges);
        if negated {
            ranges = complement(&ranges);
        }
        if ranges.is_empty() {
            return Err(RegexError {
                position: self.pos - 1,
                expected: "a non-empty class".into(),
                found: Some(']'),
            });
        }
        Ok(RegexAst::Class(ranges))
    }
}

pub fn parse_regex(pattern: &str) -> Result<RegexAst, RegexError> {
    let mut p = Parser {
        chars: pattern.chars().collect(),
        pos: 0,
    };
    let ast = p.alt()?;
    if p.pos != p.chars.len() {
        return Err(p.err("end of pattern"));
    }
    Ok(ast)
}

fn write_char(f: &mut fmt::Formatter<'_>, c: u32) -> fmt::Result {
    match char::from_u32(c) {
        Some('\n') => f.write_str("\\n"),
        Some('\t') => f.write_str("\\t"),
        Some('\r') => f.write_str("\\r"),
        Some(ch) if META.contains(ch) => write!(f, "\\{ch}"),
        Some(ch) if !ch.is_control() => write!(f, "{ch}"),
        _ => Err(fmt::Error),
    }
}

impl fmt::Display for RegexAst {
    /// Prints a pattern that parses back to the same tree (up to grouping).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegexAst::Empty => f.write_str("()"),
            RegexAst::Class(rs) if rs.as_slice() == [(0, MAX_CODEPOINT)] => f.write_str("."),
            RegexAst::Class(rs) if rs.len() == 1 && rs[0].0 == rs[0].1 => write_char(f, rs[0].0),
            RegexAst::Class(rs) => {
                f.write_str("[")?;
                for &(lo, hi) in rs {
                    write_char(f, lo)?;
                    if hi > lo {
                        f.write_str("-")?;
                        write_char(f, hi)?;
                    }
                }
                f.write_str("]")
            }
            RegexAst::Concat(items) => items.iter().try_for_each(|i| match i {
                RegexAst::Alt(_) => write!(f, "({i})"),
                _ => write!(f, "{i}"),
            }),
            RegexAst::Alt(items) => {
                for (k, i) in items.iter().enumerate() {
                    if k > 0 {
                        f.write_str("|")?;
                    }
                    write!(f, "{i}")?;
                }
                Ok(())
            }
            RegexAst::Star(a) | RegexAst::Plus(a) | RegexAst::Opt(a) => {
                let op = match self {
                    RegexAst::Star(_) => '*',
                    RegexAst::Plus(_) => '+',
                    _ => '?',
                };
                match **a {
                    RegexAst::Class(_) | RegexAst::Empty => write!(f, "{a}{op}"),
                    _ => write!(f, "({a}){op}"),
                }
            }
        }
    }
}

/// ε-NFA under construction.
struct Thompson {
    eps: Vec<Vec<usize>>,
    moves: Vec<(usize, Predicate, usize)>,
}

impl Thompson {
    fn state(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.eps.len() - 1
    }

    /// Returns the fragment's `(start, accept)`.
    fn build(&mut self, alg: &Algebra, ast: &RegexAst) -> (usize, usize) {
        let s = self.state();
        match ast {
            RegexAst::Empty => {
                let e = self.state();
                self.eps[s].push(e);
                (s, e)
            }
            RegexAst::Class(rs) => {
                let e = self.state();
                let p = alg.ranges(rs).expect("class ranges lie in the codepoint domain");
                self.moves.push((s, p, e));
                (s, e)
            }
            RegexAst::Concat(items) => {
                let mut cur = s;
                for item in items {
                    let (a, b) = self.build(alg, item);
                    self.eps[cur].push(a);
                    cur = b;
                }
                (s, cur)
            }
            RegexAst::Alt(items) => {
                let e = self.state();
                for item in items {
                    let (a, b) = self.build(alg, item);
                    self.eps[s].push(a);
                    self.eps[b].push(e);
                }
                (s, e)
            }
            RegexAst::Star(inner) | RegexAst::Plus(inner) | RegexAst::Opt(inner) => {
                let (a, b) = self.build(alg, inner);
                let e = self.state();
                self.eps[s].push(a);
                self.eps[b].push(e);
                if !matches!(ast, RegexAst::Opt(_)) {
                    self.eps[b].push(a);
                }
                if !matches!(ast, RegexAst::Plus(_)) {
                    self.eps[s].push(e);
                }
                (s, e)
            }
        }
    }

    fn closure(&self, q: usize) -> Vec<bool> {
        let mut seen = vec![false; self.eps.len()];
        let mut stack = vec![q];
        seen[q] = true;
        while let Some(p) = stack.pop() {
            for &r in &self.eps[p] {
                if !seen[r] {
                    seen[r] = true;
                    stack.push(r);
                }
            }
        }
        seen
    }
}

/// Compiles an AST over `alg`, which must be an interval algebra covering every class.
pub fn compile_ast(ast: &RegexAst, alg: &Arc<Algebra>) -> Sfa {
    let mut t = Thompson {
        eps: Vec::new(),
        moves: Vec::new(),
    };
    let (start, accept) = t.build(alg, ast);
    let n = t.eps.len();
    let mut ts = Vec::new();
    let mut finals = Vec::new();
    for q in 0..n {
        let cl = t.closure(q);
        if cl[accept] {
            finals.push(q);
        }
        for (src, p, dst) in &t.moves {
            if cl[*src] {
                ts.push(Transition::new(q, p.clone(), *dst));
            }
        }
    }
    let m = Sfa::new(alg.clone(), n, ts, [start], finals).expect("construction states are in range");
    trim_unreachable(&m).merge_parallel()
}

/// Parses and compiles `pattern` over the Unicode interval algebra.
pub fn regex_compile(pattern: &str) -> Result<Sfa, RegexError> {
    Ok(compile_ast(&parse_regex(pattern)?, &Algebra::unicode()))
}
