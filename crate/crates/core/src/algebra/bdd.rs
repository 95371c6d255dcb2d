//! Reduced ordered binary decision diagrams over `width` variables.
//!
//! Variable `b0` sits at the root. A symbol is a `width`-bit integer whose most
//! significant bit is `b0`, so walking low branches first yields symbols in
//! ascending numeric order.

use std::collections::HashMap;

pub(crate) const FALSE: u32 = 0;
pub(crate) const TRUE: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Node {
    var: u32,
    lo: u32,
    hi: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Op {
    And,
    Or,
}

#[derive(Debug)]
pub(crate) struct Bdd {
    width: u32,
    nodes: Vec<Node>,
    unique: HashMap<Node, u32>,
}

impl Bdd {
    pub(crate) fn new(width: u32) -> Self {
        let terminal = Node {
            var: width,
            lo: 0,
            hi: 0,
        };
        Bdd {
            width,
            nodes: vec![terminal, terminal],
            unique: HashMap::new(),
        }
    }

    fn mk(&mut self, var: u32, lo: u32, hi: u32) -> u32 {
        if lo == hi {
            return lo;
        }
        let node = Node { var, lo, hi };
        if let Some(&id) = self.unique.get(&node) {
            return id;
        }
        let id = self.nodes.len() as u32;
        self.nodes.push(node);
        self.unique.insert(node, id);
        id
    }

    pub(crate) fn var(&mut self, i: u32) -> u32 {
        self.mk(i, FALSE, TRUE)
    }

    pub(crate) fn and(&mut self, a: u32, b: u32) -> u32 {
        self.apply(Op::And, a, b, &mut HashMap::new())
    }

    pub(crate) fn or(&mut self, a: u32, b: u32) -> u32 {
        self.apply(Op::Or, a, b, &mut HashMap::new())
    }

    pub(crate) fn not(&mut self, a: u32) -> u32 {
        self.negate(a, &mut HashMap::new())
    }

    fn apply(&mut self, op: Op, a: u32, b: u32, memo: &mut HashMap<(u32, u32), u32>) -> u32 {
        match op {
            Op::And => {
                if a == FALSE || b == FALSE {
                    return FALSE;
                }
                if a == TRUE || a == b {
                    return b;
                }
                if b == TRUE {
                    return a;
                }
            }
            Op::Or => {
                if a == TRUE || b == TRUE {
                    return TRUE;
                }
                if a == FALSE || a == b {
                    return b;
                }
                if b == FALSE {
                    return a;
                }
            }
        }
        let key = if a < b { (a, b) } else { (b, a) };
        if let Some(&r) = memo.get(&key) {
            return r;
        }
        let (na, nb) = (self.nodes[a as usize], self.nodes[b as usize]);
        let var = na.var.min(nb.var);
        let (alo, ahi) = if na.var == var { (na.lo, na.hi) } else { (a, a) };
        let (blo, bhi) = if nb.var == var { (nb.lo, nb.hi) } else { (b, b) };
        let lo = self.apply(op, alo, blo, memo);
        let hi = self.apply(op, ahi, bhi, memo);
        let r = self.mk(var, lo, hi);
        memo.insert(key, r);
        r
    }

    fn negate(&mut self, a: u32, memo: &mut HashMap<u32, u32>) -> u32 {
        match a {
            FALSE => return TRUE,
            TRUE => return FALSE,
            _ => {}
        }
        if let Some(&r) = memo.get(&a) {
            return r;
        }
        let n = self.nodes[a as usize];
        let lo = self.negate(n.lo, memo);
        let hi = self.negate(n.hi, memo);
        let r = self.mk(n.var, lo, hi);
        memo.insert(a, r);
        r
    }

    pub(crate) fn contains(&self, mut a: u32, value: u64) -> bool {
        while a > TRUE {
            let n = self.nodes[a as usize];
            let bit = (value >> (self.width - 1 - n.var)) & 1;
            a = if bit == 1 { n.hi } else { n.lo };
        }
        a == TRUE
    }

    pub(crate) fn enumerate(&self, a: u32, limit: usize) -> Vec<u64> {
        let mut out = Vec::new();
        if limit > 0 {
            self.walk(0, a, 0, &mut out, limit);
        }
        out
    }

    fn walk(&self, level: u32, a: u32, acc: u64, out: &mut Vec<u64>, limit: usize) {
        if out.len() >= limit || a == FALSE {
            return;
        }
        if level == self.width {
            out.push(acc);
            return;
        }
        let n = self.nodes[a as usize];
        let (lo, hi) = if n.var == level { (n.lo, n.hi) } else { (a, a) };
        self.walk(level + 1, lo, acc << 1, out, limit);
        self.walk(level + 1, hi, (acc << 1) | 1, out, limit);
    }

    /// Disjoint cubes covering `a`; each cube lists `(var, polarity)` in variable order.
    pub(crate) fn cubes(&self, a: u32) -> Vec<Vec<(u32, bool)>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect_cubes(a, &mut path, &mut out);
        out
    }

    fn collect_cubes(&self, a: u32, path: &mut Vec<(u32, bool)>, out: &mut Vec<Vec<(u32, bool)>>) {
        match a {
            FALSE => {}
            TRUE => out.push(path.clone()),
            _ => {
                let n = self.nodes[a as usize];
                path.push((n.var, false));
                self.collect_cubes(n.lo, path, out);
                path.pop();
                path.push((n.var, true));
                self.collect_cubes(n.hi, path, out);
                path.pop();
            }
        }
    }

    #[cfg(test)]
    pub(crate) fn size(&self) -> usize {
        self.nodes.len()
    }
}
