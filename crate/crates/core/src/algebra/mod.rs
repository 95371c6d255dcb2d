//! Effective Boolean algebras.
//!
//! An [`Algebra`] owns a symbol domain and hands out [`Predicate`] handles.
//! Three kinds are supported:
//!
//! * `explicit`: a finite list of named symbols, predicates are bitsets;
//! * `interval`: codepoints in `[lo, hi]`, predicates are sorted disjoint ranges;
//! * `bitvector`: `k`-bit vectors, predicates are reduced ordered BDDs.
//!
//! Every predicate is kept in canonical form, so two predicates of one algebra
//! are `==` exactly when they denote the same set of symbols.
//!
//! Symbols are plain `u64` values: the index into the symbol list for
//! `explicit`, the codepoint for `interval`, and the bit vector (with `b0` as
//! most significant bit) for `bitvector`.

mod bdd;
pub(crate) mod ranges;
mod syntax;

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, MutexGuard};

use crate::error::{AlgebraError, ResourceError};
use crate::limits::Limits;

use bdd::Bdd;
use ranges::Range;

pub type Symbol = u64;

/// Largest unicode codepoint, the default upper bound of interval domains.
pub const MAX_CODEPOINT: u32 = 0x10FFFF;

/// Domains up to this size are small enough for enumeration-based checks.
pub const ENUMERABLE_DOMAIN: u128 = 1 << 16;

static NEXT_ALGEBRA_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraKind {
    Explicit,
    Interval,
    BitVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Domain {
    Explicit(Vec<String>),
    Interval { lo: u32, hi: u32 },
    BitVector { width: u32 },
}

/// Opaque, canonical predicate handle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Predicate {
    algebra: u64,
    repr: Repr,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    Set(Arc<[u64]>),
    Ranges(Arc<[Range]>),
    Node(u32),
}

/// Snapshot of the operation counters of an algebra.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounts {
    pub and: u64,
    pub or: u64,
    pub not: u64,
    pub is_sat: u64,
    pub minterms: u64,
}

impl std::ops::Sub for OpCounts {
    type Output = OpCounts;

    fn sub(self, rhs: OpCounts) -> OpCounts {
        OpCounts {
            and: self.and - rhs.and,
            or: self.or - rhs.or,
            not: self.not - rhs.not,
            is_sat: self.is_sat - rhs.is_sat,
            minterms: self.minterms - rhs.minterms,
        }
    }
}

#[derive(Debug, Default)]
struct Counters {
    and: AtomicU64,
    or: AtomicU64,
    not: AtomicU64,
    is_sat: AtomicU64,
    minterms: AtomicU64,
}

/// A minterm together with the indices of the input predicates that contain it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minterm {
    pub predicate: Predicate,
    pub members: Vec<usize>,
}

#[derive(Debug)]
pub struct Algebra {
    id: u64,
    domain: Domain,
    bdd: Option<Mutex<Bdd>>,
    counters: Counters,
}

impl Algebra {
    fn build(domain: Domain) -> Arc<Algebra> {
        let bdd = match domain {
            Domain::BitVector { width } => Some(Mutex::new(Bdd::new(width))),
            _ => None,
        };
        Arc::new(Algebra {
            id: NEXT_ALGEBRA_ID.fetch_add(1, Ordering::Relaxed),
            domain,
            bdd,
            counters: Counters::default(),
        })
    }

    pub fn explicit<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Arc<Algebra>, AlgebraError> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(AlgebraError::InvalidDomain("explicit domain is empty".into()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if !syntax::is_symbol_name(s) {
                return Err(AlgebraError::InvalidDomain(format!("bad symbol name `{s}`")));
            }
            if symbols[..i].contains(s) {
                return Err(AlgebraError::InvalidDomain(format!("duplicate symbol `{s}`")));
            }
        }
        Ok(Self::build(Domain::Explicit(symbols)))
    }

    pub fn interval(lo: u32, hi: u32) -> Result<Arc<Algebra>, AlgebraError> {
        if lo > hi || hi > MAX_CODEPOINT {
            return Err(AlgebraError::InvalidDomain(format!(
                "interval bounds must satisfy 0 <= lo <= hi <= {MAX_CODEPOINT}, got [{lo}, {hi}]"
            )));
        }
        Ok(Self::build(Domain::Interval { lo, hi }))
    }

    /// The full unicode codepoint range.
    pub fn unicode() -> Arc<Algebra> {
        Self::build(Domain::Interval {
            lo: 0,
            hi: MAX_CODEPOINT,
        })
    }

    pub fn bitvector(width: u32) -> Result<Arc<Algebra>, AlgebraError> {
        if !(1..=64).contains(&width) {
            return Err(AlgebraError::InvalidDomain(format!(
                "bitvector width must be in [1, 64], got {width}"
            )));
        }
        Ok(Self::build(Domain::BitVector { width }))
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn kind(&self) -> AlgebraKind {
        match self.domain {
            Domain::Explicit(_) => AlgebraKind::Explicit,
            Domain::Interval { .. } => AlgebraKind::Interval,
            Domain::BitVector { .. } => AlgebraKind::BitVector,
        }
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn domain_size(&self) -> u128 {
        match &self.domain {
            Domain::Explicit(s) => s.len() as u128,
            Domain::Interval { lo, hi } => (*hi - *lo) as u128 + 1,
            Domain::BitVector { width } => 1u128 << width,
        }
    }

    /// Whether enumeration-based oracles may walk the whole domain.
    pub fn is_enumerable(&self) -> bool {
        self.domain_size() <= ENUMERABLE_DOMAIN
    }

    /// Domain descriptor as written after `algebra` in the SFA text format.
    pub fn descriptor(&self) -> String {
        match &self.domain {
            Domain::Explicit(s) => format!("explicit {}", s.join(" ")),
            Domain::Interval { lo, hi } => format!("interval {lo} {hi}"),
            Domain::BitVector { width } => format!("bitvector {width}"),
        }
    }

    pub fn ops(&self) -> OpCounts {
        let c = &self.counters;
        OpCounts {
            and: c.and.load(Ordering::Relaxed),
            or: c.or.load(Ordering::Relaxed),
            not: c.not.load(Ordering::Relaxed),
            is_sat: c.is_sat.load(Ordering::Relaxed),
            minterms: c.minterms.load(Ordering::Relaxed),
        }
    }

    fn wrap(&self, repr: Repr) -> Predicate {
        Predicate { algebra: self.id, repr }
    }

    fn bdd(&self) -> MutexGuard<'_, Bdd> {
        self.bdd
            .as_ref()
            .expect("bitvector algebra owns a BDD")
            .lock()
            .unwrap_or_else(|e| e.into_inner())
    }

    fn explicit_len(&self) -> usize {
        match &self.domain {
            Domain::Explicit(s) => s.len(),
            _ => unreachable!(),
        }
    }

    pub fn owns(&self, p: &Predicate) -> bool {
        p.algebra == self.id
    }

    fn check(&self, p: &Predicate) -> Result<(), AlgebraError> {
        if self.owns(p) {
            Ok(())
        } else {
            Err(AlgebraError::Mismatch)
        }
    }

    pub fn top(&self) -> Predicate {
        match &self.domain {
            Domain::Explicit(s) => {
                let n = s.len();
                let mut words = vec![u64::MAX; n.div_ceil(64)];
                mask_tail(&mut words, n);
                self.wrap(Repr::Set(words.into()))
            }
            Domain::Interval { lo, hi } => self.wrap(Repr::Ranges(vec![(*lo, *hi)].into())),
            Domain::BitVector { .. } => self.wrap(Repr::Node(bdd::TRUE)),
        }
    }

    pub fn bot(&self) -> Predicate {
        match &self.domain {
            Domain::Explicit(s) => self.wrap(Repr::Set(vec![0; s.len().div_ceil(64)].into())),
            Domain::Interval { .. } => self.wrap(Repr::Ranges(Vec::new().into())),
            Domain::BitVector { .. } => self.wrap(Repr::Node(bdd::FALSE)),
        }
    }

    /// Inclusive range `[lo, hi]` of an interval algebra, clipped to the domain.
    pub fn range(&self, lo: u32, hi: u32) -> Result<Predicate, AlgebraError> {
        self.ranges(&[(lo, hi)])
    }

    /// Union of inclusive ranges of an interval algebra.
    pub fn ranges(&self, rs: &[(u32, u32)]) -> Result<Predicate, AlgebraError> {
        let Domain::Interval { lo, hi } = self.domain else {
            return Err(AlgebraError::InvalidDomain("ranges need an interval algebra".into()));
        };
        for &(a, b) in rs {
            if a > b || a < lo || b > hi {
                return Err(AlgebraError::SymbolOutOfDomain(format!("{a}-{b}")));
            }
        }
        Ok(self.wrap(Repr::Ranges(ranges::normalize(rs.to_vec()).into())))
    }

    /// The predicate `b{i}` of a bitvector algebra.
    pub fn var(&self, i: u32) -> Result<Predicate, AlgebraError> {
        let Domain::BitVector { width } = self.domain else {
            return Err(AlgebraError::InvalidDomain("variables need a bitvector algebra".into()));
        };
        if i >= width {
            return Err(AlgebraError::SymbolOutOfDomain(format!("b{i}")));
        }
        let node = self.bdd().var(i);
        Ok(self.wrap(Repr::Node(node)))
    }

    /// The predicate denoting exactly `{sym}`.
    pub fn singleton(&self, sym: Symbol) -> Result<Predicate, AlgebraError> {
        if !self.in_domain(sym) {
            return Err(AlgebraError::SymbolOutOfDomain(sym.to_string()));
        }
        Ok(match &self.domain {
            Domain::Explicit(s) => {
                let mut words = vec![0u64; s.len().div_ceil(64)];
                words[sym as usize / 64] |= 1 << (sym % 64);
                self.wrap(Repr::Set(words.into()))
            }
            Domain::Interval { .. } => self.wrap(Repr::Ranges(vec![(sym as u32, sym as u32)].into())),
            Domain::BitVector { width } => {
                let width = *width;
                let mut bdd = self.bdd();
                let mut acc = bdd::TRUE;
                for i in 0..width {
                    let v = bdd.var(i);
                    let lit = if (sym >> (width - 1 - i)) & 1 == 1 {
                        v
                    } else {
                        bdd.not(v)
                    };
                    acc = bdd.and(acc, lit);
                }
                self.wrap(Repr::Node(acc))
            }
        })
    }

    pub fn in_domain(&self, sym: Symbol) -> bool {
        match &self.domain {
            Domain::Explicit(s) => (sym as usize) < s.len(),
            Domain::Interval { lo, hi } => sym >= *lo as u64 && sym <= *hi as u64,
            Domain::BitVector { width } => *width == 64 || sym < (1u64 << width),
        }
    }

    pub fn and(&self, p: &Predicate, q: &Predicate) -> Result<Predicate, AlgebraError> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.conj(p, q))
    }

    pub fn or(&self, p: &Predicate, q: &Predicate) -> Result<Predicate, AlgebraError> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.disj(p, q))
    }

    pub fn not(&self, p: &Predicate) -> Result<Predicate, AlgebraError> {
        self.check(p)?;
        Ok(self.neg(p))
    }

    pub(crate) fn conj(&self, p: &Predicate, q: &Predicate) -> Predicate {
        self.counters.and.fetch_add(1, Ordering::Relaxed);
        debug_assert!(self.owns(p) && self.owns(q));
        match (&p.repr, &q.repr) {
            (Repr::Set(a), Repr::Set(b)) => {
                let words: Vec<u64> = a.iter().zip(b.iter()).map(|(x, y)| x & y).collect();
                self.wrap(Repr::Set(words.into()))
            }
            (Repr::Ranges(a), Repr::Ranges(b)) => self.wrap(Repr::Ranges(ranges::intersect(a, b).into())),
            (Repr::Node(a), Repr::Node(b)) => {
                let r = self.bdd().and(*a, *b);
                self.wrap(Repr::Node(r))
            }
            _ => unreachable!("predicates of one algebra share a representation"),
        }
    }

    pub(crate) fn disj(&self, p: &Predicate, q: &Predicate) -> Predicate {
        self.counters.or.fetch_add(1, Ordering::Relaxed);
        debug_assert!(self.owns(p) && self.owns(q));
        match (&p.repr, &q.repr) {
            (Repr::Set(a), Repr::Set(b)) => {
                let words: Vec<u64> = a.iter().zip(b.iter()).map(|(x, y)| x | y).collect();
                self.wrap(Repr::Set(words.into()))
            }
            (Repr::Ranges(a), Repr::Ranges(b)) => self.wrap(Repr::Ranges(ranges::union(a, b).into())),
            (Repr::Node(a), Repr::Node(b)) => {
                let r = self.bdd().or(*a, *b);
                self.wrap(Repr::Node(r))
            }
            _ => unreachable!("predicates of one algebra share a representation"),
        }
    }

    pub(crate) fn neg(&self, p: &Predicate) -> Predicate {
        self.counters.not.fetch_add(1, Ordering::Relaxed);
        debug_assert!(self.owns(p));
        match &p.repr {
            Repr::Set(a) => {
                let mut words: Vec<u64> = a.iter().map(|x| !x).collect();
                mask_tail(&mut words, self.explicit_len());
                self.wrap(Repr::Set(words.into()))
            }
            Repr::Ranges(a) => {
                let Domain::Interval { lo, hi } = self.domain else {
                    unreachable!()
                };
                self.wrap(Repr::Ranges(ranges::complement(a, lo, hi).into()))
            }
            Repr::Node(a) => {
                let r = self.bdd().not(*a);
                self.wrap(Repr::Node(r))
            }
        }
    }

    /// Disjunction of any number of predicates (`⊥` for none).
    pub(crate) fn disj_all<'a>(&self, preds: impl IntoIterator<Item = &'a Predicate>) -> Predicate {
        let mut acc: Option<Predicate> = None;
        for p in preds {
            acc = Some(match acc {
                None => p.clone(),
                Some(a) => self.disj(&a, p),
            });
        }
        acc.unwrap_or_else(|| self.bot())
    }

    pub fn is_sat(&self, p: &Predicate) -> bool {
        self.counters.is_sat.fetch_add(1, Ordering::Relaxed);
        match &p.repr {
            Repr::Set(a) => a.iter().any(|&w| w != 0),
            Repr::Ranges(a) => !a.is_empty(),
            Repr::Node(a) => *a != bdd::FALSE,
        }
    }

    /// `⟦p⟧ ⊆ ⟦q⟧`.
    pub fn is_subset(&self, p: &Predicate, q: &Predicate) -> Result<bool, AlgebraError> {
        self.check(p)?;
        self.check(q)?;
        let nq = self.neg(q);
        Ok(!self.is_sat(&self.conj(p, &nq)))
    }

    pub fn contains(&self, p: &Predicate, sym: Symbol) -> bool {
        if !self.in_domain(sym) {
            return false;
        }
        match &p.repr {
            Repr::Set(a) => a[sym as usize / 64] >> (sym % 64) & 1 == 1,
            Repr::Ranges(a) => ranges::contains(a, sym as u32),
            Repr::Node(a) => self.bdd().contains(*a, sym),
        }
    }

    /// Up to `limit` symbols of `⟦p⟧` in ascending domain order.
    pub fn enumerate(&self, p: &Predicate, limit: usize) -> Vec<Symbol> {
        match &p.repr {
            Repr::Set(a) => (0..self.explicit_len() as u64)
                .filter(|&i| a[i as usize / 64] >> (i % 64) & 1 == 1)
                .take(limit)
                .collect(),
            Repr::Ranges(a) => a
                .iter()
                .flat_map(|&(lo, hi)| (lo as u64)..=(hi as u64))
                .take(limit)
                .collect(),
            Repr::Node(a) => self.bdd().enumerate(*a, limit),
        }
    }

    /// Least symbol of `⟦p⟧`, if any.
    pub fn witness(&self, p: &Predicate) -> Option<Symbol> {
        self.enumerate(p, 1).pop()
    }

    /// All minterms of `preds`, without any resource limit.
    pub fn minterms(&self, preds: &[Predicate]) -> Vec<Predicate> {
        self.minterms_with(preds, &Limits::unbounded())
            .expect("unbounded minterm generation cannot fail")
            .into_iter()
            .map(|m| m.predicate)
            .collect()
    }

    /// Minterms of `preds` by incremental cell splitting.
    ///
    /// Every current cell is split by `φ` and `¬φ`; unsatisfiable halves are
    /// dropped, so the work is proportional to the number of cells produced.
    /// The result partitions the domain; each minterm records which inputs
    /// contain it.
    pub fn minterms_with(&self, preds: &[Predicate], limits: &Limits) -> Result<Vec<Minterm>, ResourceError> {
        self.counters.minterms.fetch_add(1, Ordering::Relaxed);
        let mut cells = vec![Minterm {
            predicate: self.top(),
            members: Vec::new(),
        }];
        for (idx, phi) in preds.iter().enumerate() {
            debug_assert!(self.owns(phi));
            let not_phi = self.neg(phi);
            let mut next = Vec::with_capacity(cells.len() * 2);
            for cell in cells {
                let inside = self.conj(&cell.predicate, phi);
                if !self.is_sat(&inside) {
                    next.push(cell);
                    continue;
                }
                let outside = self.conj(&cell.predicate, &not_phi);
                if self.is_sat(&outside) {
                    next.push(Minterm {
                        predicate: outside,
                        members: cell.members.clone(),
                    });
                }
                let mut members = cell.members;
                members.push(idx);
                next.push(Minterm {
                    predicate: inside,
                    members,
                });
            }
            limits.check_minterms(next.len())?;
            limits.check_deadline()?;
            cells = next;
        }
        Ok(cells)
    }

    pub fn parse_predicate(&self, text: &str) -> Result<Predicate, AlgebraError> {
        syntax::parse(self, text)
    }

    pub fn format_predicate(&self, p: &Predicate) -> String {
        syntax::format(self, p)
    }

    pub fn parse_symbol(&self, text: &str) -> Result<Symbol, AlgebraError> {
        syntax::parse_symbol(self, text)
    }

    pub fn format_symbol(&self, sym: Symbol) -> String {
        syntax::format_symbol(self, sym)
    }

    pub fn format_word(&self, word: &[Symbol]) -> String {
        if word.is_empty() {
            return "ε".into();
        }
        word.iter()
            .map(|&s| self.format_symbol(s))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn mask_tail(words: &mut [u64], n: usize) {
    if !n.is_multiple_of(64) {
        if let Some(last) = words.last_mut() {
            *last &= (1u64 << (n % 64)) - 1;
        }
    }
}

#[cfg(test)]
mod tests;
