//! Todd–Coxeter coset enumeration (HLT strategy with coincidence handling).
//!
//! Used only as an independent index oracle for graphs of groups whose vertex
//! groups are all finite.

use crate::error::{Error, Result};
use crate::gog::GraphOfGroups;
use crate::graph::VertexId;
use crate::group::{Element, VertexGroup};
use crate::word::Word;

pub const DEFAULT_COSET_CAP: usize = 10_000;

/// A finite presentation. Letters are `±(k + 1)` for generator `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Vec<i32>>,
    /// Generator of each non-identity element, per vertex.
    element_gen: Vec<Vec<Option<usize>>>,
    /// Generator of each non-tree edge pair.
    edge_gen: Vec<Option<usize>>,
    edge_tau: Vec<VertexId>,
}

impl Presentation {
    /// The standard presentation of `π1(G, v0)`: one generator per
    /// non-identity element of each vertex group with its multiplication table
    /// as relators, and one free generator per edge pair outside a spanning
    /// tree rooted at `v0`.
    pub fn from_gog(g: &GraphOfGroups, v0: VertexId) -> Result<Presentation> {
        let mut generators = 0;
        let mut relators = Vec::new();
        let mut element_gen = Vec::new();
        for v in g.graph().vertices() {
            let VertexGroup::Finite(fg) = g.group(v).as_ref() else {
                return Err(Error::UnboundedEnumeration);
            };
            let mut ids = vec![None; fg.order()];
            for (x, id) in ids.iter_mut().enumerate() {
                if x != fg.identity() {
                    *id = Some(generators);
                    generators += 1;
                }
            }
            let letter = |x: usize| ids[x].map(|k| k as i32 + 1);
            for x in 0..fg.order() {
                for y in 0..fg.order() {
                    let (Some(lx), Some(ly)) = (letter(x), letter(y)) else {
                        continue;
                    };
                    let mut r = vec![lx, ly];
                    if let Some(lxy) = letter(fg.mul(x, y)) {
                        r.push(-lxy);
                    }
                    relators.push(r);
                }
            }
            element_gen.push(ids);
        }
        let tree = g.graph().spanning_tree(v0);
        let mut edge_gen = vec![None; g.graph().edge_pair_count()];
        for e in g.graph().positive_edges() {
            let (a, b) = (g.graph().iota(e), g.graph().tau(e));
            if tree[b.0] == Some(e) || tree[a.0] == Some(e.bar()) {
                continue;
            }
            edge_gen[e.pair()] = Some(generators);
            generators += 1;
        }
        let edge_tau = g.graph().edges().map(|e| g.graph().tau(e)).collect();
        Ok(Presentation {
            generators,
            relators,
            element_gen,
            edge_gen,
            edge_tau,
        })
    }

    /// A loop at the root as a word in the generators.
    pub fn translate(&self, w: &Word) -> Vec<i32> {
        let mut out = Vec::new();
        let mut v = w.start();
        let push_element = |out: &mut Vec<i32>, v: VertexId, x: &Element| {
            if let Element::Finite(i) = x {
                if let Some(k) = self.element_gen[v.0][*i] {
                    out.push(k as i32 + 1);
                }
            }
        };
        push_element(&mut out, v, &w.elements()[0]);
        for (i, &e) in w.edges().iter().enumerate() {
            if let Some(k) = self.edge_gen[e.pair()] {
                let l = k as i32 + 1;
                out.push(if e.is_positive() { l } else { -l });
            }
            v = self.edge_tau[e.index()];
            push_element(&mut out, v, &w.elements()[i + 1]);
        }
        out
    }
}

/// A complete coset table: `table[c][col]` with columns `2k` for generator `k`
/// and `2k + 1` for its inverse. Coset 0 is the subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    table: Vec<Vec<usize>>,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.table.len()
    }

    /// The coset reached from coset 0 by reading `w`.
    pub fn trace(&self, w: &[i32]) -> usize {
        w.iter().fold(0, |c, &l| self.table[c][col(l)])
    }

    pub fn contains(&self, w: &[i32]) -> bool {
        self.trace(w) == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CosetResult {
    Closed(CosetTable),
    DidNotClose { bound: usize },
}

impl CosetResult {
    pub fn index(&self) -> Option<usize> {
        match self {
            CosetResult::Closed(t) => Some(t.index()),
            CosetResult::DidNotClose { .. } => None,
        }
    }
}

fn col(l: i32) -> usize {
    2 * (l.unsigned_abs() as usize - 1) + usize::from(l < 0)
}

struct Enumerator {
    table: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    width: usize,
    cap: usize,
    overflow: bool,
    queue: Vec<usize>,
}

impl Enumerator {
    fn rep(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn alive(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) {
        if self.table.len() >= self.cap {
            self.overflow = true;
            return;
        }
        let d = self.table.len();
        self.table.push(vec![None; self.width]);
        self.parent.push(d);
        self.table[c][x] = Some(d);
        self.table[d][x ^ 1] = Some(c);
    }

    fn scan_and_fill(&mut self, c: usize, w: &[i32]) {
        if w.is_empty() {
            return;
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j {
                match self.table[f][col(w[i])] {
                    Some(n) => {
                        f = n;
                        i += 1;
                    }
                    None => break,
                }
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j >= i as isize {
                match self.table[b][col(w[j as usize]) ^ 1] {
                    Some(n) => {
                        b = n;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i as isize {
                self.coincidence(f, b);
                return;
            }
            if j == i as isize {
                let x = col(w[i]);
                self.table[f][x] = Some(b);
                self.table[b][x ^ 1] = Some(f);
                return;
            }
            self.define(f, col(w[i]));
            if self.overflow {
                return;
            }
        }
    }

    fn merge(&mut self, k: usize, l: usize) {
        let k = self.rep(k);
        let l = self.rep(l);
        if k == l {
            return;
        }
        let (keep, gone) = if k < l { (k, l) } else { (l, k) };
        self.parent[gone] = keep;
        self.queue.push(gone);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut q = 0;
        while q < self.queue.len() {
            let e = self.queue[q];
            q += 1;
            for x in 0..self.width {
                let Some(f) = self.table[e][x] else { continue };
                self.table[f][x ^ 1] = None;
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if let Some(t) = self.table[e1][x] {
                    self.merge(f1, t);
                } else if let Some(t) = self.table[f1][x ^ 1] {
                    self.merge(e1, t);
                } else {
                    self.table[e1][x] = Some(f1);
                    self.table[f1][x ^ 1] = Some(e1);
                }
            }
        }
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in the group
/// given by `p`, defining at most `cap` cosets in total.
pub fn coset_enumerate(p: &Presentation, subgroup: &[Vec<i32>], cap: usize) -> CosetResult {
    let width = 2 * p.generators;
    let mut en = Enumerator {
        table: vec![vec![None; width]],
        parent: vec![0],
        width,
        cap: cap.max(1),
        overflow: false,
        queue: Vec::new(),
    };
    for w in subgroup {
        en.scan_and_fill(0, w);
        if en.overflow {
            return CosetResult::DidNotClose { bound: cap };
        }
    }
    let mut c = 0;
    while c < en.table.len() {
        for r in &p.relators {
            if !en.alive(c) {
                break;
            }
            en.scan_and_fill(c, r);
            if en.overflow {
                return CosetResult::DidNotClose { bound: cap };
            }
        }
        if en.alive(c) {
            for x in 0..width {
                if en.table[c][x].is_none() {
                    en.define(c, x);
                    if en.overflow {
                        return CosetResult::DidNotClose { bound: cap };
                    }
                }
            }
        }
        c += 1;
    }
    let live: Vec<usize> = (0..en.table.len()).filter(|&c| en.alive(c)).collect();
    let mut index = vec![usize::MAX; en.table.len()];
    for (i, &c) in live.iter().enumerate() {
        index[c] = i;
    }
    let table = live
        .iter()
        .map(|&c| en.table[c].iter().map(|t| index[t.expect("complete table")]).collect())
        .collect();
    CosetResult::Closed(CosetTable { table })
}
