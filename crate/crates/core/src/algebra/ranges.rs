//! Sorted, disjoint, non-adjacent inclusive ranges of `u32`.

pub(crate) type Range = (u32, u32);

/// Sorts and coalesces overlapping or adjacent ranges.
pub(crate) fn normalize(mut v: Vec<Range>) -> Vec<Range> {
    v.sort_unstable();
    let mut out: Vec<Range> = Vec::with_capacity(v.len());
    for (lo, hi) in v {
        match out.last_mut() {
            Some(last) if lo <= last.1.saturating_add(1) => last.1 = last.1.max(hi),
            _ => out.push((lo, hi)),
        }
    }
    out
}

pub(crate) fn intersect(a: &[Range], b: &[Range]) -> Vec<Range> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let lo = a[i].0.max(b[j].0);
        let hi = a[i].1.min(b[j].1);
        if lo <= hi {
            out.push((lo, hi));
        }
        if a[i].1 < b[j].1 {
            i += 1;
        } else {
            j += 1;
        }
    }
    out
}

pub(crate) fn union(a: &[Range], b: &[Range]) -> Vec<Range> {
    let mut v = Vec::with_capacity(a.len() + b.len());
    v.extend_from_slice(a);
    v.extend_from_slice(b);
    normalize(v)
}

pub(crate) fn complement(a: &[Range], lo: u32, hi: u32) -> Vec<Range> {
    let mut out = Vec::with_capacity(a.len() + 1);
    let mut next = lo as u64;
    for &(l, h) in a {
        if (l as u64) > next {
            out.push((next as u32, l - 1));
        }
        next = h as u64 + 1;
    }
    if next <= hi as u64 {
        out.push((next as u32, hi));
    }
    out
}

pub(crate) fn contains(a: &[Range], x: u32) -> bool {
    let idx = a.partition_point(|&(_, h)| h < x);
    idx < a.len() && a[idx].0 <= x
}
