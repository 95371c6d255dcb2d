use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::automata::StateId;

/// Dense boolean matrix over `n × n` state pairs; `(i, j)` present means `i ⪯ j`
/// for a simulation result.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Relation {
    pub fn empty(n: usize) -> Relation {
        let words = n.div_ceil(64);
        Relation {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn full(n: usize) -> Relation {
        let mut r = Relation::empty(n);
        for i in 0..n {
            for w in 0..r.words {
                let lo = w * 64;
                let count = (n - lo).min(64);
                r.bits[i * r.words + w] = if count == 64 { u64::MAX } else { (1 << count) - 1 };
            }
        }
        r
    }

    pub fn identity(n: usize) -> Relation {
        let mut r = Relation::empty(n);
        for i in 0..n {
            r.insert(i, i);
        }
        r
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (StateId, StateId)>) -> Relation {
        let mut r = Relation::empty(n);
        for (i, j) in pairs {
            r.insert(i, j);
        }
        r
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, i: StateId, j: StateId) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Returns whether the pair was newly added.
    #[inline]
    pub fn insert(&mut self, i: StateId, j: StateId) -> bool {
        let w = &mut self.bits[i * self.words + j / 64];
        let mask = 1 << (j % 64);
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }

    /// Returns whether the pair was present.
    #[inline]
    pub fn remove(&mut self, i: StateId, j: StateId) -> bool {
        let w = &mut self.bits[i * self.words + j / 64];
        let mask = 1 << (j % 64);
        let present = *w & mask != 0;
        *w &= !mask;
        present
    }

    fn row_words(&self, i: StateId) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// `{j | (i, j) ∈ R}` in ascending order.
    pub fn row(&self, i: StateId) -> impl Iterator<Item = StateId> + '_ {
        self.row_words(i).iter().enumerate().flat_map(|(w, &bits)| {
            let mut b = bits;
            std::iter::from_fn(move || {
                if b == 0 {
                    return None;
                }
                let k = b.trailing_zeros() as usize;
                b &= b - 1;
                Some(w * 64 + k)
            })
        })
    }

    pub fn row_is_empty(&self, i: StateId) -> bool {
        self.row_words(i).iter().all(|&w| w == 0)
    }

    pub fn clear_row(&mut self, i: StateId) {
        self.bits[i * self.words..(i + 1) * self.words].fill(0);
    }

    /// Removes every pair of row `i` of `other` from row `i` of `self`.
    pub fn subtract_row(&mut self, i: StateId, other: &Relation) {
        for w in 0..self.words {
            self.bits[i * self.words + w] &= !other.bits[i * self.words + w];
        }
    }

    /// All pairs, row-major ascending.
    pub fn pairs(&self) -> impl Iterator<Item = (StateId, StateId)> + '_ {
        (0..self.n).flat_map(move |i| self.row(i).map(move |j| (i, j)))
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        assert_eq!(self.n, other.n);
        let mut r = self.clone();
        for (a, b) in r.bits.iter_mut().zip(&other.bits) {
            *a &= b;
        }
        r
    }

    pub fn inverse(&self) -> Relation {
        Relation::from_pairs(self.n, self.pairs().map(|(i, j)| (j, i)))
    }

    /// The first state missing its diagonal pair, if any.
    pub fn reflexivity_witness(&self) -> Option<StateId> {
        (0..self.n).find(|&i| !self.contains(i, i))
    }

    pub fn is_reflexive(&self) -> bool {
        self.reflexivity_witness().is_none()
    }

    /// `(a, b, c)` with `(a, b)` and `(b, c)` present but `(a, c)` missing.
    pub fn transitivity_witness(&self) -> Option<(StateId, StateId, StateId)> {
        for a in 0..self.n {
            for b in self.row(a) {
                for w in 0..self.words {
                    let missing = self.bits[b * self.words + w] & !self.bits[a * self.words + w];
                    if missing != 0 {
                        return Some((a, b, w * 64 + missing.trailing_zeros() as usize));
                    }
                }
            }
        }
        None
    }

    pub fn is_transitive(&self) -> bool {
        self.transitivity_witness().is_none()
    }

    pub fn is_preorder(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }

    /// Keeps only the pairs among the first `k` states.
    pub fn restrict(&self, k: usize) -> Relation {
        assert!(k <= self.n);
        Relation::from_pairs(k, self.pairs().filter(|&(i, j)| i < k && j < k))
    }

    /// Class index of every state under `R ∩ R⁻¹`, numbered by least member.
    /// Only meaningful for preorders.
    pub fn equivalence_classes(&self) -> Vec<usize> {
        let mut class = vec![usize::MAX; self.n];
        let mut next = 0;
        for i in 0..self.n {
            if class[i] != usize::MAX {
                continue;
            }
            for j in i..self.n {
                if class[j] == usize::MAX && self.contains(i, j) && self.contains(j, i) {
                    class[j] = next;
                }
            }
            class[i] = next;
            next += 1;
        }
        class
    }

    /// Pairs as `i,j` lines under a `# states=n pairs=k algo=<name>` header.
    pub fn to_csv(&self, algo: &str) -> String {
        let mut out = format!("# states={} pairs={} algo={}\n", self.n, self.count(), algo);
        for (i, j) in self.pairs() {
            let _ = writeln!(out, "{i},{j}");
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Relation, String> {
        let mut lines = text.lines();
        let header = lines.next().ok_or("empty relation file")?;
        let n = header
            .split_whitespace()
            .find_map(|w| w.strip_prefix("states="))
            .and_then(|v| v.parse::<usize>().ok())
            .ok_or_else(|| format!("bad header `{header}`"))?;
        let mut r = Relation::empty(n);
        for (k, line) in lines.enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (i, j) = line
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
                .filter(|&(i, j)| i < n && j < n)
                .ok_or_else(|| format!("line {}: bad pair `{line}`", k + 2))?;
            r.insert(i, j);
        }
        Ok(r)
    }

    /// SHA-256 over the state count and the pair list, as lowercase hex.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.n as u64).to_le_bytes());
        for (i, j) in self.pairs() {
            h.update((i as u64).to_le_bytes());
            h.update((j as u64).to_le_bytes());
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl std::fmt::Debug for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Relation(n={}, ", self.n)?;
        f.debug_set().entries(self.pairs()).finish()?;
        write!(f, ")")
    }
}
