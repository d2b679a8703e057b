//! Brute-force cross-check of membership decided by lifting through an
//! immersion.

use std::collections::{HashSet, VecDeque};

use crate::error::Result;
use crate::graph::VertexId;
use crate::morphism::DecoratedMorphism;
use crate::verifier::ball::enumerate_ball_elements;
use crate::word::Word;

const CLOSURE_LIMIT: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckReport {
    /// Loops examined.
    pub checked: usize,
    /// Loops the immersion reports as members.
    pub members: usize,
    /// Members that the bounded product search did not reach. Not an error by
    /// itself: the witness may need longer intermediate products.
    pub unconfirmed: usize,
    /// A loop written as a product of generators that the immersion rejects.
    pub counterexample: Option<Word>,
}

/// Enumerates reduced loops at `φ(u0)` with at most `n` syllables and compares
/// `m.subgroup_member` with the set of products of `gens` whose partial
/// products stay within `n + 2·max|gen|` syllables.
pub fn crosscheck(
    m: &DecoratedMorphism,
    u0: VertexId,
    gens: &[Word],
    n: usize,
    bound: Option<usize>,
) -> Result<CrosscheckReport> {
    let t = m.target();
    let v0 = m.phi_vertex(u0);
    let longest = gens.iter().map(Word::syllables).max().unwrap_or(1);
    let cap = n + 2 * longest;
    let mut steps: Vec<Word> = Vec::new();
    for g in gens {
        t.validate(g)?;
        let g = t.reduce(g);
        steps.push(t.inverse(&g));
        steps.push(g);
    }
    let one = t.identity_word(v0);
    let mut seen: HashSet<Word> = HashSet::from([one.clone()]);
    let mut queue = VecDeque::from([one]);
    while let Some(w) = queue.pop_front() {
        if seen.len() >= CLOSURE_LIMIT {
            break;
        }
        for s in &steps {
            let p = t.compose(&w, s)?;
            if p.syllables() <= cap && seen.insert(p.clone()) {
                queue.push_back(p);
            }
        }
    }
    let mut report = CrosscheckReport {
        checked: 0,
        members: 0,
        unconfirmed: 0,
        counterexample: None,
    };
    for w in enumerate_ball_elements(t, v0, n, bound)? {
        report.checked += 1;
        let by_lift = m.subgroup_member(u0, &w)?;
        let by_search = seen.contains(&w);
        if by_lift {
            report.members += 1;
            if !by_search {
                report.unconfirmed += 1;
            }
        } else if by_search && report.counterexample.is_none() {
            report.counterexample = Some(w);
        }
    }
    Ok(report)
}
