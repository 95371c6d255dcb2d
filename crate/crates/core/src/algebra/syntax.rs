//! Textual predicate and symbol syntax.
//!
//! * explicit: `{a,b,c}`, `{}` for the empty set;
//! * interval: `[97-122]`, `[48-57,65-90]`, `[97]`, `[]`;
//! * bitvector: `b0 & !b1 | (b2 & true)`, with `!` binding tighter than `&`,
//!   and `&` tighter than `|`.

use super::{bdd, ranges, Algebra, Domain, Predicate, Repr, Symbol};
use crate::error::AlgebraError;

fn parse_err(token: impl Into<String>, reason: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse {
        token: token.into(),
        reason: reason.into(),
    }
}

pub(super) fn is_symbol_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(super) fn parse(alg: &Algebra, text: &str) -> Result<Predicate, AlgebraError> {
    let text = text.trim();
    match &alg.domain {
        Domain::Explicit(symbols) => parse_explicit(alg, symbols, text),
        Domain::Interval { lo, hi } => parse_interval(alg, *lo, *hi, text),
        Domain::BitVector { width } => {
            let mut p = BoolParser {
                alg,
                width: *width,
                tokens: tokenize(text)?,
                pos: 0,
            };
            let node = p.disjunction()?;
            if let Some(tok) = p.tokens.get(p.pos) {
                return Err(parse_err(tok.clone(), "unexpected token after expression"));
            }
            Ok(alg.wrap(Repr::Node(node)))
        }
    }
}

fn strip_delims(text: &str, open: char, close: char) -> Result<&str, AlgebraError> {
    text.strip_prefix(open)
        .and_then(|t| t.strip_suffix(close))
        .ok_or_else(|| parse_err(text, format!("expected `{open}...{close}`")))
}

fn parse_explicit(alg: &Algebra, symbols: &[String], text: &str) -> Result<Predicate, AlgebraError> {
    let body = strip_delims(text, '{', '}')?;
    let mut words = vec![0u64; symbols.len().div_ceil(64)];
    for item in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let idx = symbols
            .iter()
            .position(|s| s == item)
            .ok_or_else(|| parse_err(item, "unknown symbol"))?;
        if words[idx / 64] >> (idx % 64) & 1 == 1 {
            return Err(parse_err(item, "symbol listed twice"));
        }
        words[idx / 64] |= 1 << (idx % 64);
    }
    Ok(alg.wrap(Repr::Set(words.into())))
}

fn parse_u32(tok: &str, item: &str) -> Result<u32, AlgebraError> {
    let tok = tok.trim();
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(item, "expected a decimal codepoint"));
    }
    tok.parse().map_err(|_| parse_err(item, "codepoint too large"))
}

fn parse_interval(alg: &Algebra, lo: u32, hi: u32, text: &str) -> Result<Predicate, AlgebraError> {
    let body = strip_delims(text, '[', ']')?;
    let mut items: Vec<(u32, u32, &str)> = Vec::new();
    for item in body.split(',').map(str::trim) {
        if item.is_empty() {
            if body.trim().is_empty() {
                break;
            }
            return Err(parse_err(text, "empty range item"));
        }
        let (a, b) = match item.split_once('-') {
            Some((a, b)) => (parse_u32(a, item)?, parse_u32(b, item)?),
            None => {
                let a = parse_u32(item, item)?;
                (a, a)
            }
        };
        if a > b {
            return Err(parse_err(item, "range bounds are reversed"));
        }
        if a < lo || b > hi {
            return Err(parse_err(item, format!("range leaves the domain [{lo}, {hi}]")));
        }
        items.push((a, b, item));
    }
    items.sort_by_key(|&(a, b, _)| (a, b));
    for w in items.windows(2) {
        if w[1].0 <= w[0].1 {
            return Err(parse_err(w[1].2, format!("overlaps range `{}`", w[0].2)));
        }
    }
    let rs = items.into_iter().map(|(a, b, _)| (a, b)).collect();
    Ok(alg.wrap(Repr::Ranges(ranges::normalize(rs).into())))
}

fn tokenize(text: &str) -> Result<Vec<String>, AlgebraError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if "&|!()".contains(c) {
            out.push(c.to_string());
            chars.next();
        } else if c.is_ascii_alphanumeric() || c == '_' {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    end = j + d.len_utf8();
                    chars.next();
                } else {
                    break;
                }
            }
            out.push(text[i..end].to_string());
        } else {
            return Err(parse_err(c.to_string(), "unexpected character"));
        }
    }
    if out.is_empty() {
        return Err(parse_err(text, "empty expression"));
    }
    Ok(out)
}

struct BoolParser<'a> {
    alg: &'a Algebra,
    width: u32,
    tokens: Vec<String>,
    pos: usize,
}

impl BoolParser<'_> {
    fn peek(&self) -> Option<&str> {
        self.tokens.get(self.pos).map(String::as_str)
    }

    fn disjunction(&mut self) -> Result<u32, AlgebraError> {
        let mut acc = self.conjunction()?;
        while self.peek() == Some("|") {
            self.pos += 1;
            let rhs = self.conjunction()?;
            acc = self.alg.bdd().or(acc, rhs);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<u32, AlgebraError> {
        let mut acc = self.unary()?;
        while self.peek() == Some("&") {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = self.alg.bdd().and(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<u32, AlgebraError> {
        let Some(tok) = self.peek().map(str::to_owned) else {
            return Err(parse_err("<end>", "expected a variable, `true`, `false`, `!` or `(`"));
        };
        self.pos += 1;
        match tok.as_str() {
            "!" => {
                let inner = self.unary()?;
                Ok(self.alg.bdd().not(inner))
            }
            "(" => {
                let inner = self.disjunction()?;
                if self.peek() != Some(")") {
                    let found = self.peek().unwrap_or("<end>").to_owned();
                    return Err(parse_err(found, "expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            "true" => Ok(bdd::TRUE),
            "false" => Ok(bdd::FALSE),
            t => {
                let idx = t
                    .strip_prefix('b')
                    .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
                    .and_then(|d| d.parse::<u32>().ok())
                    .ok_or_else(|| parse_err(t, "expected a variable `b<i>`"))?;
                if idx >= self.width {
                    return Err(parse_err(t, format!("variable out of range for width {}", self.width)));
                }
                Ok(self.alg.bdd().var(idx))
            }
        }
    }
}

pub(super) fn format(alg: &Algebra, p: &Predicate) -> String {
    match (&alg.domain, &p.repr) {
        (Domain::Explicit(symbols), Repr::Set(words)) => {
            let names: Vec<&str> = symbols
                .iter()
                .enumerate()
                .filter(|(i, _)| words[i / 64] >> (i % 64) & 1 == 1)
                .map(|(_, s)| s.as_str())
                .collect();
            format!("{{{}}}", names.join(","))
        }
        (Domain::Interval { .. }, Repr::Ranges(rs)) => {
            let items: Vec<String> = rs.iter().map(|(a, b)| format!("{a}-{b}")).collect();
            format!("[{}]", items.join(","))
        }
        (Domain::BitVector { .. }, Repr::Node(node)) => match *node {
            bdd::TRUE => "true".into(),
            bdd::FALSE => "false".into(),
            n => {
                let cubes = alg.bdd().cubes(n);
                let terms: Vec<String> = cubes
                    .iter()
                    .map(|cube| {
                        cube.iter()
                            .map(|&(v, pos)| if pos { format!("b{v}") } else { format!("!b{v}") })
                            .collect::<Vec<_>>()
                            .join(" & ")
                    })
                    .collect();
                terms.join(" | ")
            }
        },
        _ => unreachable!("predicate formatted by a foreign algebra"),
    }
}

pub(super) fn parse_symbol(alg: &Algebra, text: &str) -> Result<Symbol, AlgebraError> {
    let text = text.trim();
    let out_of_domain = || AlgebraError::SymbolOutOfDomain(text.to_string());
    match &alg.domain {
        Domain::Explicit(symbols) => symbols
            .iter()
            .position(|s| s == text)
            .map(|i| i as Symbol)
            .ok_or_else(out_of_domain),
        Domain::Interval { .. } => {
            let v: u64 = text.parse().map_err(|_| out_of_domain())?;
            if alg.in_domain(v) {
                Ok(v)
            } else {
                Err(out_of_domain())
            }
        }
        Domain::BitVector { width } => {
            if text.len() != *width as usize || !text.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(out_of_domain());
            }
            Ok(text.bytes().fold(0u64, |acc, b| (acc << 1) | (b - b'0') as u64))
        }
    }
}

pub(super) fn format_symbol(alg: &Algebra, sym: Symbol) -> String {
    match &alg.domain {
        Domain::Explicit(symbols) => symbols.get(sym as usize).cloned().unwrap_or_else(|| format!("#{sym}")),
        Domain::Interval { .. } => sym.to_string(),
        Domain::BitVector { width } => (0..*width)
            .map(|i| if (sym >> (width - 1 - i)) & 1 == 1 { '1' } else { '0' })
            .collect(),
    }
}
