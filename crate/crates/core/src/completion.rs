//! Completing a finite immersion with finite-index vertex subgroups to a
//! finite-degree cover that contains it.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId};
use crate::group::{Element, Subgroup};
use crate::morphism::DecoratedMorphism;

/// How unmatched cosets are paired when completing a local bijection.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum TieBreak {
    /// Pair in order of (vertex id, transversal position) on both sides.
    #[default]
    Lexicographic,
    /// Shuffle the terminal side with a seeded ChaCha8 generator.
    Seeded(u64),
}

impl TieBreak {
    pub fn from_seed(seed: Option<u64>) -> Self {
        seed.map_or(TieBreak::Lexicographic, TieBreak::Seeded)
    }
}

/// Completes `m` to a cover. Returns the cover and its degree
/// `d = max_u Σ_{v over u} [G_u : S_v]`.
///
/// Over each target vertex `u` the fiber is padded with `d - d_u` vertices
/// carrying all of `G_u`. Then for every target edge pair the existing lifts
/// form a partial bijection between the cosets at its two ends, which is
/// extended by new edges decorated with the transversal representatives of
/// the cosets they join. Existing vertex and edge ids are kept, so the input
/// is literally a sub-morphism of the output.
pub fn complete_to_cover(m: &DecoratedMorphism, tie: TieBreak) -> Result<(DecoratedMorphism, usize)> {
    m.require_identity_lambda()?;
    m.check_immersion().map_err(Error::NotAnImmersion)?;
    let target = Arc::clone(m.target());
    let tg = target.graph();
    let mut reps: Vec<Vec<Element>> = Vec::with_capacity(m.vertex_count());
    for v in m.graph().vertices() {
        reps.push(m.subgroup(v).coset_reps().map_err(|_| Error::InfiniteIndexVertex(v))?);
    }
    let fiber_degree: Vec<usize> = tg
        .vertices()
        .map(|u| m.fiber(u).iter().map(|v| reps[v.0].len()).sum())
        .collect();
    let d = *fiber_degree.iter().max().expect("target has a vertex");

    let mut out = m.clone();
    for u in tg.vertices() {
        for _ in fiber_degree[u.0]..d {
            let full = Subgroup::full(target.group(u));
            out.push_vertex(u, full.clone());
            reps.push(full.coset_reps().expect("index one"));
        }
    }
    let mut rng = match tie {
        TieBreak::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        TieBreak::Lexicographic => None,
    };
    for f in tg.positive_edges() {
        let left = cosets_over(&out, &reps, tg.iota(f));
        let right = cosets_over(&out, &reps, tg.tau(f));
        let mut left_used = vec![false; left.len()];
        let mut right_used = vec![false; right.len()];
        for e in out.graph().edges().filter(|&e| out.phi_edge(e) == f) {
            let i = slot(&out, &left, out.graph().iota(e), out.delta(e));
            let j = slot(&out, &right, out.graph().tau(e), out.delta(e.bar()));
            left_used[i] = true;
            right_used[j] = true;
        }
        let free_left: Vec<usize> = (0..left.len()).filter(|&i| !left_used[i]).collect();
        let mut free_right: Vec<usize> = (0..right.len()).filter(|&j| !right_used[j]).collect();
        debug_assert_eq!(free_left.len(), free_right.len());
        if let Some(rng) = rng.as_mut() {
            free_right.shuffle(rng);
        }
        for (i, j) in free_left.into_iter().zip(free_right) {
            let (v, dv) = left[i].clone();
            let (x, dx) = right[j].clone();
            out.push_edge(v, x, f, dv, dx);
        }
    }
    let single_vertex = tg.vertex_count() == 1 && tg.edge_count() == 0;
    assert!(
        single_vertex || out.graph().is_connected(),
        "completed cover must be connected"
    );
    Ok((out, d))
}

/// `(vertex, representative)` for every coset at every domain vertex over `u`,
/// in vertex order then transversal order.
fn cosets_over(m: &DecoratedMorphism, reps: &[Vec<Element>], u: VertexId) -> Vec<(VertexId, Element)> {
    m.fiber(u)
        .into_iter()
        .flat_map(|v| reps[v.0].iter().map(move |t| (v, t.clone())))
        .collect()
}

fn slot(m: &DecoratedMorphism, cosets: &[(VertexId, Element)], v: VertexId, delta: &Element) -> usize {
    let s = m.subgroup(v);
    cosets
        .iter()
        .position(|(w, t)| *w == v && s.same_coset(delta, t))
        .expect("every decoration lies in some coset")
}

/// Whether `original` sits inside `cover` with the same ids: matching images,
/// decorations, base and endpoints, and each original subgroup contained in
/// the corresponding cover subgroup.
pub fn restriction_check(cover: &DecoratedMorphism, original: &DecoratedMorphism) -> bool {
    if !Arc::ptr_eq(cover.target(), original.target()) && **cover.target() != **original.target() {
        return false;
    }
    let (cg, og) = (cover.graph(), original.graph());
    if og.vertex_count() > cg.vertex_count() || og.edge_count() > cg.edge_count() {
        return false;
    }
    if original.base() != cover.base() {
        return false;
    }
    let vertices_ok = og.vertices().all(|v| {
        original.phi_vertex(v) == cover.phi_vertex(v) && cover.subgroup(v).contains_subgroup(original.subgroup(v))
    });
    let edges_ok = og.edges().all(|e: EdgeId| {
        og.iota(e) == cg.iota(e) && original.phi_edge(e) == cover.phi_edge(e) && original.delta(e) == cover.delta(e)
    });
    vertices_ok && edges_ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::fold::cover_index;
    use crate::group::Index;

    fn single_edge() -> DecoratedMorphism {
        let g = Arc::new(catalog::c2_c3());
        let mut m = DecoratedMorphism::new(Arc::clone(&g));
        let x = m.add_trivial_vertex(VertexId(0)).unwrap();
        let y = m.add_trivial_vertex(VertexId(1)).unwrap();
        m.add_edge(
            x,
            y,
            EdgeId(0),
            g.group(VertexId(0)).identity(),
            g.group(VertexId(1)).identity(),
        )
        .unwrap();
        m.set_base(x);
        m
    }

    #[test]
    fn single_edge_completes_to_degree_three() {
        let m = single_edge();
        let (cover, d) = complete_to_cover(&m, TieBreak::Lexicographic).unwrap();
        assert_eq!(d, 3);
        assert!(cover.check_cover().is_ok());
        assert_eq!(cover_index(&cover).unwrap(), 3);
        // One padding vertex over u with all of C2.
        assert_eq!(cover.fiber(VertexId(0)).len(), 2);
        assert_eq!(cover.subgroup(VertexId(2)).index(), Index::Finite(1));
        assert!(restriction_check(&cover, &m));
    }

    #[test]
    fn identity_cover_is_unchanged() {
        let id = DecoratedMorphism::identity(Arc::new(catalog::c2_c3()));
        let (cover, d) = complete_to_cover(&id, TieBreak::Lexicographic).unwrap();
        assert_eq!(d, 1);
        assert_eq!(cover, id);
    }

    #[test]
    fn seeds_change_the_cover_not_the_degree() {
        let m = crate::morphism::tests::ab_circle();
        let (a, da) = complete_to_cover(&m, TieBreak::Seeded(1)).unwrap();
        let (b, db) = complete_to_cover(&m, TieBreak::Seeded(2)).unwrap();
        assert_eq!(da, 3);
        assert_eq!(db, 3);
        assert!(restriction_check(&a, &m) && restriction_check(&b, &m));
        let (again, _) = complete_to_cover(&m, TieBreak::Seeded(1)).unwrap();
        assert_eq!(a, again);
    }

    #[test]
    fn unrelated_cover_fails_restriction() {
        let m = crate::morphism::tests::ab_circle();
        let id = DecoratedMorphism::identity(Arc::new(catalog::c2_c3()));
        assert!(!restriction_check(&id, &m));
    }

    #[test]
    fn rejects_infinite_index() {
        let z2 = Arc::new(catalog::z_z());
        let mut m = DecoratedMorphism::new(z2);
        m.add_trivial_vertex(VertexId(0)).unwrap();
        assert_eq!(
            complete_to_cover(&m, TieBreak::Lexicographic).unwrap_err(),
            Error::InfiniteIndexVertex(VertexId(0))
        );
    }
}
