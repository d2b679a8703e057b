//! Free groups: reduced words and Stallings core graphs of finitely generated
//! subgroups.

use std::fmt;

use super::{Element, Index};
use crate::error::{Error, Result};

/// A freely reduced word. Letter `k > 0` stands for `x_k`, `-k` for its inverse.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeWord(Vec<i32>);

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    pub fn letter(l: i32) -> Self {
        assert!(l != 0);
        FreeWord(vec![l])
    }

    /// Freely reduces the given letters.
    pub fn from_letters(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0, "letter 0 is not allowed");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord(out)
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        FreeWord::from_letters(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn inv(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|l| -l).collect())
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&l| if l > 0 { format!("x{l}") } else { format!("x{}-", -l) })
            .collect();
        f.write_str(&parts.join("."))
    }
}

/// The free group on `x1, …, x_rank`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeGroup {
    rank: usize,
}

impl FreeGroup {
    pub fn new(rank: usize) -> Self {
        FreeGroup { rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn contains(&self, w: &FreeWord) -> bool {
        w.0.iter().all(|l| l.unsigned_abs() as usize <= self.rank)
    }

    /// Parses `1`, the empty string, or letters `xK` / `xK-` joined by `.`.
    pub fn parse(&self, token: &str) -> Result<FreeWord> {
        let t = token.trim();
        if t.is_empty() || t == "1" {
            return Ok(FreeWord::identity());
        }
        let mut letters = Vec::new();
        for part in t.split('.') {
            let (body, inverse) = match part.strip_suffix('-') {
                Some(b) => (b, true),
                None => (part, false),
            };
            let k: usize = body
                .strip_prefix('x')
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| Error::parse(token, format!("bad free-group letter `{part}`")))?;
            if k == 0 || k > self.rank {
                return Err(Error::parse(token, format!("letter x{k} outside rank {}", self.rank)));
            }
            letters.push(if inverse { -(k as i32) } else { k as i32 });
        }
        Ok(FreeWord::from_letters(letters))
    }

    /// All reduced words of length at most `bound`, shortest first.
    pub fn words_up_to(&self, bound: usize) -> Vec<FreeWord> {
        let mut out = vec![FreeWord::identity()];
        let mut frontier = vec![FreeWord::identity()];
        for _ in 0..bound {
            let mut next = Vec::new();
            for w in &frontier {
                for s in 0..2 * self.rank {
                    let l = slot_letter(s);
                    if w.0.last() == Some(&-l) {
                        continue;
                    }
                    let mut v = w.0.clone();
                    v.push(l);
                    next.push(FreeWord(v));
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
}

fn letter_slot(l: i32) -> usize {
    2 * (l.unsigned_abs() as usize - 1) + usize::from(l < 0)
}

fn slot_letter(s: usize) -> i32 {
    let k = (s / 2 + 1) as i32;
    if s.is_multiple_of(2) {
        k
    } else {
        -k
    }
}

/// Result of reading a word from the base state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trace {
    /// The whole word was read, ending at this state.
    Complete(usize),
    /// Reading stopped after `consumed` letters at `state`, which has no edge
    /// for the next letter.
    Stuck { consumed: usize, state: usize },
}

/// A folded, deterministic, inverse-closed automaton with base state 0: the
/// Stallings core graph of a subgroup of a free group. States are numbered in
/// breadth-first order from the base with letters visited as
/// `x1, x1⁻¹, x2, x2⁻¹, …`, which makes the representation canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreGraph {
    rank: usize,
    trans: Vec<Vec<Option<usize>>>,
    /// Breadth-first tree: (parent state, slot used to reach this state).
    tree: Vec<Option<(usize, usize)>>,
}

impl CoreGraph {
    /// Folds the wedge of loops labelled by `gens` and trims hanging trees.
    pub(crate) fn fold(rank: usize, gens: &[Element]) -> CoreGraph {
        let mut folder = Folder::new(rank);
        for g in gens {
            let w = match g {
                Element::Free(w) => w,
                _ => unreachable!("validated by caller"),
            };
            folder.add_loop(w.letters());
        }
        let trans = folder.finish();
        CoreGraph::canonical(rank, trim(trans))
    }

    fn canonical(rank: usize, trans: Vec<Vec<Option<usize>>>) -> CoreGraph {
        let mut order = vec![usize::MAX; trans.len()];
        let mut seq = vec![0];
        let mut parent_info: Vec<Option<(usize, usize)>> = vec![None];
        order[0] = 0;
        let mut i = 0;
        while i < seq.len() {
            let p = seq[i];
            for (s, next) in trans[p].iter().enumerate().take(2 * rank) {
                if let Some(q) = *next {
                    if order[q] == usize::MAX {
                        order[q] = seq.len();
                        seq.push(q);
                        parent_info.push(Some((order[p], s)));
                    }
                }
            }
            i += 1;
        }
        let new_trans = seq
            .iter()
            .map(|&p| trans[p].iter().map(|t| t.map(|q| order[q])).collect::<Vec<_>>())
            .collect();
        CoreGraph {
            rank,
            trans: new_trans,
            tree: parent_info,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn state_count(&self) -> usize {
        self.trans.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.trans.iter().flatten().all(Option::is_none)
    }

    pub fn transition(&self, state: usize, letter: i32) -> Option<usize> {
        self.trans[state][letter_slot(letter)]
    }

    pub fn trace(&self, w: &FreeWord) -> Trace {
        let mut state = 0;
        for (i, &l) in w.letters().iter().enumerate() {
            match self.trans[state][letter_slot(l)] {
                Some(q) => state = q,
                None => {
                    return Trace::Stuck { consumed: i, state };
                }
            }
        }
        Trace::Complete(state)
    }

    pub fn accepts(&self, w: &FreeWord) -> bool {
        self.trace(w) == Trace::Complete(0)
    }

    /// Finite (the number of states) exactly when every letter acts as a full
    /// permutation of the states.
    pub fn index(&self) -> Index {
        if self.trans.iter().flatten().all(Option::is_some) {
            Index::Finite(self.trans.len())
        } else {
            Index::Infinite
        }
    }

    /// Label of the tree path from the base to `state`.
    pub fn transversal_word(&self, state: usize) -> FreeWord {
        let mut letters = Vec::new();
        let mut s = state;
        while let Some((p, slot)) = self.tree[s] {
            letters.push(slot_letter(slot));
            s = p;
        }
        letters.reverse();
        FreeWord(letters)
    }

    /// Tree words for all states, base first.
    pub fn transversal(&self) -> Vec<FreeWord> {
        (0..self.state_count()).map(|q| self.transversal_word(q)).collect()
    }

    /// Free basis read off the breadth-first spanning tree: one generator per
    /// positively labelled edge outside the tree.
    pub fn basis(&self) -> Vec<FreeWord> {
        let reps = self.transversal();
        let mut out = Vec::new();
        for p in 0..self.state_count() {
            for s in (0..2 * self.rank).step_by(2) {
                let Some(q) = self.trans[p][s] else { continue };
                let tree_edge = self.tree[q] == Some((p, s)) || self.tree[p] == Some((q, s + 1));
                if tree_edge {
                    continue;
                }
                let l = slot_letter(s);
                out.push(reps[p].mul(&FreeWord::letter(l)).mul(&reps[q].inv()));
            }
        }
        out
    }

    /// Adds a path reading each excluded word where tracing gets stuck, then
    /// completes every letter to a permutation. The result contains the
    /// original subgroup, has finite index, and reads none of the excluded
    /// words as a loop (callers guarantee none is accepted beforehand).
    pub(crate) fn complete_avoiding(&self, excluded: &[&FreeWord]) -> CoreGraph {
        let mut trans = self.trans.clone();
        let width = 2 * self.rank;
        for w in excluded {
            let mut state = 0;
            for &l in w.letters() {
                let s = letter_slot(l);
                state = match trans[state][s] {
                    Some(q) => q,
                    None => {
                        trans.push(vec![None; width]);
                        let q = trans.len() - 1;
                        trans[state][s] = Some(q);
                        trans[q][letter_slot(-l)] = Some(state);
                        q
                    }
                };
            }
        }
        for s in (0..width).step_by(2) {
            let no_out: Vec<usize> = (0..trans.len()).filter(|&p| trans[p][s].is_none()).collect();
            let no_in: Vec<usize> = (0..trans.len()).filter(|&p| trans[p][s + 1].is_none()).collect();
            debug_assert_eq!(no_out.len(), no_in.len());
            for (p, q) in no_out.into_iter().zip(no_in) {
                trans[p][s] = Some(q);
                trans[q][s + 1] = Some(p);
            }
        }
        CoreGraph::canonical(self.rank, trans)
    }
}

/// Removes non-base states of valence one until none remain.
fn trim(mut trans: Vec<Vec<Option<usize>>>) -> Vec<Vec<Option<usize>>> {
    loop {
        let leaf = (1..trans.len()).find(|&p| trans[p].iter().filter(|t| t.is_some()).count() == 1);
        let Some(p) = leaf else { break };
        let s = trans[p].iter().position(Option::is_some).unwrap();
        let q = trans[p][s].take().unwrap();
        trans[q][s ^ 1] = None;
    }
    trans
}

struct Folder {
    width: usize,
    parent: Vec<usize>,
    trans: Vec<Vec<Option<usize>>>,
    pending: Vec<(usize, usize)>,
}

impl Folder {
    fn new(rank: usize) -> Self {
        Folder {
            width: 2 * rank,
            parent: vec![0],
            trans: vec![vec![None; 2 * rank]],
            pending: Vec::new(),
        }
    }

    fn new_state(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.trans.push(vec![None; self.width]);
        self.parent.len() - 1
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn add_loop(&mut self, letters: &[i32]) {
        if letters.is_empty() {
            return;
        }
        let mut cur = 0;
        for (i, &l) in letters.iter().enumerate() {
            let next = if i + 1 == letters.len() { 0 } else { self.new_state() };
            let c = self.find(cur);
            self.set(c, letter_slot(l), next);
            let n = self.find(next);
            let c = self.find(cur);
            self.set(n, letter_slot(-l), c);
            self.process();
            cur = next;
        }
    }

    fn set(&mut self, p: usize, slot: usize, q: usize) {
        let p = self.find(p);
        let q = self.find(q);
        match self.trans[p][slot] {
            Some(r) => {
                let r = self.find(r);
                if r != q {
                    self.pending.push((r, q));
                }
            }
            None => self.trans[p][slot] = Some(q),
        }
    }

    fn process(&mut self) {
        while let Some((a, b)) = self.pending.pop() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            let (keep, gone) = if a < b { (a, b) } else { (b, a) };
            self.parent[gone] = keep;
            for s in 0..self.width {
                if let Some(t) = self.trans[gone][s].take() {
                    self.set(keep, s, t);
                }
            }
        }
    }

    /// Resolves representatives and drops merged states; state 0 stays the base.
    fn finish(mut self) -> Vec<Vec<Option<usize>>> {
        let n = self.parent.len();
        let roots: Vec<usize> = (0..n).filter(|&x| self.find(x) == x).collect();
        let mut index = vec![usize::MAX; n];
        for (i, &r) in roots.iter().enumerate() {
            index[r] = i;
        }
        let mut out = Vec::with_capacity(roots.len());
        for &r in &roots {
            let row: Vec<Option<usize>> = self.trans[r][..self.width].to_vec();
            let row = row.into_iter().map(|t| t.map(|t| index[self.find(t)])).collect();
            out.push(row);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FreeGroup {
        FreeGroup::new(2)
    }

    fn w(s: &str) -> FreeWord {
        f2().parse(s).unwrap()
    }

    fn core(gens: &[&str]) -> CoreGraph {
        let gens: Vec<Element> = gens.iter().map(|g| Element::Free(w(g))).collect();
        CoreGraph::fold(2, &gens)
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w("x1.x2-").to_string(), "x1.x2-");
        assert_eq!(w("x1.x1-"), FreeWord::identity());
        assert_eq!(w("1").to_string(), "1");
        assert!(f2().parse("x3").is_err());
        assert!(f2().parse("y1").is_err());
    }

    #[test]
    fn index_two_example() {
        // <x^2, y, x y x^-1> has index 2 with transversal {1, x}.
        let c = core(&["x1.x1", "x2", "x1.x2.x1-"]);
        assert_eq!(c.state_count(), 2);
        assert_eq!(c.index(), Index::Finite(2));
        assert_eq!(c.transversal(), vec![FreeWord::identity(), w("x1")]);
        assert!(c.accepts(&w("x1.x1.x2")));
        assert!(!c.accepts(&w("x1")));
        assert_eq!(c.trace(&w("x1.x1.x1")), Trace::Complete(1));
        // Schreier: rank 2(2-1)+1 = 3.
        assert_eq!(c.basis().len(), 3);
    }

    #[test]
    fn generator_order_does_not_matter() {
        let a = core(&["x1.x1", "x2", "x1.x2.x1-"]);
        let b = core(&["x1.x2.x1-", "x1.x1", "x2"]);
        assert_eq!(a, b);
        let c = core(&["x2", "x1.x1", "x1.x2.x1-", "x2.x2"]);
        assert_eq!(a, c);
    }

    #[test]
    fn hair_at_base_is_kept() {
        let c = core(&["x1.x2.x1-"]);
        assert_eq!(c.state_count(), 2);
        assert_eq!(c.index(), Index::Infinite);
        assert!(c.accepts(&w("x1.x2.x2.x1-")));
        assert!(!c.accepts(&w("x2")));
    }

    #[test]
    fn completion_avoids_excluded_words() {
        let c = core(&["x1.x1"]);
        let x = w("x1");
        let y = w("x2.x1.x2-");
        let k = c.complete_avoiding(&[&x, &y]);
        assert!(k.index().is_finite());
        assert!(k.accepts(&w("x1.x1")));
        assert!(!k.accepts(&x));
        assert!(!k.accepts(&y));
    }

    #[test]
    fn words_up_to_counts() {
        // 1 + 4 + 12 reduced words of length <= 2 in F2.
        assert_eq!(f2().words_up_to(2).len(), 17);
    }
}
