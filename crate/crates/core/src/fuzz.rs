//! Random instances for property tests and the command-line cross-check.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::completion::{complete_to_cover, TieBreak};
use crate::error::Result;
use crate::fold::fold_generators;
use crate::gog::GraphOfGroups;
use crate::graph::VertexId;
use crate::group::{Element, FreeWord, VertexGroup};
use crate::morphism::DecoratedMorphism;
use crate::word::Word;

/// A random element: uniform in a finite group, an integer in `[-3, 3]`, or a
/// reduced free word of length at most 2.
pub fn random_element<R: Rng + ?Sized>(g: &VertexGroup, rng: &mut R) -> Element {
    match g {
        VertexGroup::Finite(f) => Element::Finite(rng.gen_range(0..f.order())),
        VertexGroup::Integer => Element::Integer(rng.gen_range(-3..=3)),
        VertexGroup::Free(f) => {
            if f.rank() == 0 {
                return Element::Free(FreeWord::identity());
            }
            let len = rng.gen_range(0..=2);
            let r = f.rank() as i32;
            let letters = (0..len).map(|_| {
                let l = rng.gen_range(1..=r);
                if rng.gen_bool(0.5) {
                    l
                } else {
                    -l
                }
            });
            Element::Free(FreeWord::from_letters(letters))
        }
    }
}

/// A non-identity element, or the identity when the group is trivial.
pub fn random_nontrivial<R: Rng + ?Sized>(g: &VertexGroup, rng: &mut R) -> Element {
    for _ in 0..32 {
        let x = random_element(g, rng);
        if !g.is_identity(&x) {
            return x;
        }
    }
    g.identity()
}

/// A random reduced loop at `v0` with at most `max_syllables` syllables, found
/// by rejection sampling of random walks. Falls back to a single element.
pub fn random_loop<R: Rng + ?Sized>(g: &GraphOfGroups, v0: VertexId, max_syllables: usize, rng: &mut R) -> Word {
    let graph = g.graph();
    let max_edges = max_syllables.saturating_sub(1);
    for _ in 0..64 {
        let len = rng.gen_range(0..=max_edges);
        let mut v = v0;
        let mut elements = vec![random_element(g.group(v0), rng)];
        let mut edges = Vec::with_capacity(len);
        for _ in 0..len {
            let Some(&e) = graph.edges_from(v).choose(rng) else {
                break;
            };
            if edges.last() == Some(&e.bar()) {
                // Make the middle element non-trivial instead of backtracking.
                let last = elements.last_mut().unwrap();
                if g.group(v).is_identity(last) {
                    *last = random_nontrivial(g.group(v), rng);
                }
            }
            v = graph.tau(e);
            edges.push(e);
            elements.push(random_element(g.group(v), rng));
        }
        if v == v0 {
            let w = g.reduce(&Word::from_parts(graph, v0, elements, edges));
            if w.syllables() <= max_syllables.max(1) {
                return w;
            }
        }
    }
    Word::element(v0, random_element(g.group(v0), rng))
}

/// `count` random loops drawn from a ChaCha8 generator seeded with `seed`.
pub fn seeded_loops(g: &GraphOfGroups, v0: VertexId, count: usize, max_syllables: usize, seed: u64) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_loop(g, v0, max_syllables, &mut rng))
        .collect()
}

/// Folds `count` random loops at `v0` into an immersion.
pub fn random_immersion<R: Rng + ?Sized>(
    target: &Arc<GraphOfGroups>,
    v0: VertexId,
    count: usize,
    max_syllables: usize,
    rng: &mut R,
) -> Result<DecoratedMorphism> {
    let gens: Vec<Word> = (0..count)
        .map(|_| random_loop(target, v0, max_syllables, rng))
        .collect();
    fold_generators(target, v0, &gens)
}

/// Completes a random immersion to a cover. Every vertex group of `target`
/// must be finite.
pub fn random_cover<R: Rng + ?Sized>(
    target: &Arc<GraphOfGroups>,
    v0: VertexId,
    count: usize,
    max_syllables: usize,
    rng: &mut R,
) -> Result<(DecoratedMorphism, usize)> {
    let m = random_immersion(target, v0, count, max_syllables, rng)?;
    complete_to_cover(&m, TieBreak::Seeded(rng.gen()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn loops_are_reduced_and_closed() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in [catalog::c2_c3(), catalog::z_z(), catalog::c2_loop(), catalog::f2_c2()] {
            let v0 = g.base().unwrap();
            for _ in 0..50 {
                let w = random_loop(&g, v0, 7, &mut rng);
                assert!(w.is_loop() && w.start() == v0);
                assert!(g.is_reduced(&w));
                assert!(w.syllables() <= 7);
                g.validate(&w).unwrap();
            }
        }
    }

    #[test]
    fn random_covers_are_covers() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let g = Arc::new(catalog::c2_c2_c3());
        for _ in 0..20 {
            let (c, _) = random_cover(&g, g.base().unwrap(), 2, 5, &mut rng).unwrap();
            assert!(c.check_cover().is_ok());
        }
    }

    #[test]
    fn integers_stay_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            match random_element(&VertexGroup::Integer, &mut rng) {
                Element::Integer(n) => assert!(n.abs() <= 3),
                e => panic!("{e:?}"),
            }
        }
    }
}
