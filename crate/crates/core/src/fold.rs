//! Building immersions from generating loops: wedge, fold, trim, and the
//! numerical invariants read off the result.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gog::GraphOfGroups;
use crate::graph::{EdgeId, VertexId};
use crate::group::{Element, Subgroup};
use crate::morphism::DecoratedMorphism;
use crate::word::Word;

/// The wedge of subdivided circles, one per generator of positive length,
/// joined at a base vertex over `v0`. Length-0 generators go into the base
/// subgroup.
///
/// For a generator `g0 e1 g1 … en gn` the i-th circle edge lies over `e_i` with
/// `δ = g_{i-1}` on its initial side and `1` on its terminal side, except that
/// the last terminal decoration is `gn⁻¹`. The circle then maps to the
/// generator itself.
pub fn wedge(target: &Arc<GraphOfGroups>, v0: VertexId, gens: &[Word]) -> Result<DecoratedMorphism> {
    let mut m = DecoratedMorphism::new(Arc::clone(target));
    let mut base_gens = Vec::new();
    let mut circles = Vec::new();
    for g in gens {
        target.validate(g)?;
        if g.start() != v0 || !g.is_loop() {
            return Err(Error::NotALoop { expected: v0 });
        }
        let g = target.reduce(g);
        if g.edge_count() == 0 {
            base_gens.push(g.elements()[0].clone());
        } else {
            circles.push(g);
        }
    }
    let base = m.push_vertex(v0, Subgroup::generate_trusted(target.group(v0), &base_gens));
    m.set_base(base);
    let tg = target.graph();
    for g in circles {
        let n = g.edge_count();
        let mut prev = base;
        for (i, &f) in g.edges().iter().enumerate() {
            let to_vertex = tg.tau(f);
            let next = if i + 1 == n {
                base
            } else {
                m.push_vertex(to_vertex, Subgroup::trivial(target.group(to_vertex)))
            };
            let group = target.group(to_vertex);
            let delta_bar = if i + 1 == n {
                group.inv(&g.elements()[n])
            } else {
                group.identity()
            };
            m.push_edge(prev, next, f, g.elements()[i].clone(), delta_bar);
            prev = next;
        }
    }
    Ok(m)
}

/// Working copy used while folding: vertices and edge pairs are retired in
/// place and compacted at the end.
struct Folding {
    target: Arc<GraphOfGroups>,
    over: Vec<VertexId>,
    subgroups: Vec<Subgroup>,
    vertex_alive: Vec<bool>,
    iota: Vec<usize>,
    edge_over: Vec<EdgeId>,
    deltas: Vec<Element>,
    pair_alive: Vec<bool>,
    base: usize,
}

impl Folding {
    fn from(m: &DecoratedMorphism, base: VertexId) -> Self {
        Folding {
            target: Arc::clone(&m.target),
            over: m.vertex_map.clone(),
            subgroups: m.subgroups.clone(),
            vertex_alive: vec![true; m.vertex_count()],
            iota: m.graph.edges().map(|e| m.graph.iota(e).0).collect(),
            edge_over: m.edge_map.clone(),
            deltas: m.deltas.clone(),
            pair_alive: vec![true; m.graph.edge_pair_count()],
            base: base.0,
        }
    }

    fn tau(&self, e: usize) -> usize {
        self.iota[e ^ 1]
    }

    fn edges_at(&self, v: usize) -> Vec<usize> {
        (0..self.iota.len())
            .filter(|&e| self.pair_alive[e >> 1] && self.iota[e] == v)
            .collect()
    }

    /// First pair `e1 < e2` at `v` over the same target edge in the same coset.
    fn find_fold(&self, v: usize) -> Option<(usize, usize)> {
        let edges = self.edges_at(v);
        let s = &self.subgroups[v];
        for (i, &e1) in edges.iter().enumerate() {
            for &e2 in &edges[i + 1..] {
                if self.edge_over[e1] == self.edge_over[e2] && s.same_coset(&self.deltas[e1], &self.deltas[e2]) {
                    return Some((e1, e2));
                }
            }
        }
        None
    }

    /// Identifies `e2` with `e1`. Returns the vertices whose local maps may
    /// have changed.
    fn fold(&mut self, v: usize, mut e1: usize, mut e2: usize) -> Vec<usize> {
        let mut x1 = self.tau(e1);
        let mut x2 = self.tau(e2);
        if x1 != x2 && x2 == self.base {
            std::mem::swap(&mut e1, &mut e2);
            std::mem::swap(&mut x1, &mut x2);
        }
        // Same coset at v: replacing δ_{e2} by δ_{e1} only changes e2 by an
        // element of S_v.
        self.deltas[e2] = self.deltas[e1].clone();
        let group = Arc::clone(self.target.group(self.over[x1]));
        if x1 == x2 {
            let s = group.right_quotient(&self.deltas[e1 ^ 1], &self.deltas[e2 ^ 1]);
            self.subgroups[x1] = self.subgroups[x1].with_element(&s);
            self.pair_alive[e2 >> 1] = false;
            return vec![v, x1];
        }
        // Conjugate the vertex x2 by k so that δ_{~e2} becomes δ_{~e1}.
        let k = group.right_quotient(&self.deltas[e2 ^ 1], &self.deltas[e1 ^ 1]);
        let k_inv = group.inv(&k);
        for d in 0..self.iota.len() {
            if self.pair_alive[d >> 1] && self.iota[d] == x2 {
                self.deltas[d] = group.mul(&k_inv, &self.deltas[d]);
            }
        }
        self.subgroups[x2] = self.subgroups[x2].conjugate(&k);
        self.pair_alive[e2 >> 1] = false;
        self.subgroups[x1] = self.subgroups[x1].join(&self.subgroups[x2]);
        for d in 0..self.iota.len() {
            if self.pair_alive[d >> 1] && self.iota[d] == x2 {
                self.iota[d] = x1;
            }
        }
        self.vertex_alive[x2] = false;
        vec![v, x1]
    }

    fn run(&mut self) {
        let n = self.over.len();
        let mut queued = vec![true; n];
        let mut queue: VecDeque<usize> = (0..n).collect();
        while let Some(v) = queue.pop_front() {
            queued[v] = false;
            if !self.vertex_alive[v] {
                continue;
            }
            if let Some((e1, e2)) = self.find_fold(v) {
                for x in self.fold(v, e1, e2) {
                    if !queued[x] {
                        queued[x] = true;
                        queue.push_back(x);
                    }
                }
            }
        }
    }

    fn finish(self) -> DecoratedMorphism {
        let mut m = DecoratedMorphism::new(Arc::clone(&self.target));
        let mut index = vec![usize::MAX; self.over.len()];
        for (v, slot) in index.iter_mut().enumerate() {
            if self.vertex_alive[v] {
                *slot = m.push_vertex(self.over[v], self.subgroups[v].clone()).0;
            }
        }
        for p in 0..self.pair_alive.len() {
            if !self.pair_alive[p] {
                continue;
            }
            let e = 2 * p;
            m.push_edge(
                VertexId(index[self.iota[e]]),
                VertexId(index[self.tau(e)]),
                self.edge_over[e],
                self.deltas[e].clone(),
                self.deltas[e ^ 1].clone(),
            );
        }
        m.set_base(VertexId(index[self.base]));
        m
    }
}

/// Folds until every local map is injective. The image of the fundamental
/// group at the base is unchanged. Decorations are finally replaced by
/// canonical coset representatives where the vertex subgroup has finite index.
pub fn fold(m: &DecoratedMorphism) -> Result<DecoratedMorphism> {
    m.require_identity_lambda()?;
    let base = m.base_or_err()?;
    let mut work = Folding::from(m, base);
    work.run();
    let mut out = work.finish();
    out.canonicalize_deltas();
    debug_assert!(out.check_immersion().is_ok());
    Ok(out)
}

/// `fold(wedge(...))`.
pub fn fold_generators(target: &Arc<GraphOfGroups>, v0: VertexId, gens: &[Word]) -> Result<DecoratedMorphism> {
    fold(&wedge(target, v0, gens)?)
}

/// Repeatedly deletes valence-1 vertices with trivial subgroup other than `u0`
/// and those in `keep`, together with their edge.
pub fn trim_core(m: &DecoratedMorphism, u0: VertexId, keep: &[VertexId]) -> DecoratedMorphism {
    let g = &m.graph;
    let mut alive = vec![true; m.vertex_count()];
    let mut pair_alive = vec![true; g.edge_pair_count()];
    let mut valence: Vec<usize> = g.vertices().map(|v| g.valence(v)).collect();
    let mut queue: VecDeque<VertexId> = g.vertices().collect();
    while let Some(v) = queue.pop_front() {
        if !alive[v.0] || v == u0 || keep.contains(&v) || valence[v.0] != 1 || !m.subgroups[v.0].is_trivial() {
            continue;
        }
        let e = *g
            .edges_from(v)
            .iter()
            .find(|e| pair_alive[e.pair()])
            .expect("valence one");
        alive[v.0] = false;
        pair_alive[e.pair()] = false;
        let w = g.tau(e);
        valence[w.0] -= 1;
        queue.push_back(w);
    }
    let keep_vertices: Vec<VertexId> = g.vertices().filter(|v| alive[v.0]).collect();
    let keep_pairs: Vec<usize> = (0..g.edge_pair_count()).filter(|&p| pair_alive[p]).collect();
    restrict(m, &keep_vertices, &keep_pairs)
}

/// The sub-morphism on the listed vertices and edge pairs, renumbered in the
/// given order.
pub(crate) fn restrict(m: &DecoratedMorphism, vertices: &[VertexId], pairs: &[usize]) -> DecoratedMorphism {
    let (graph, vmap, emap) = m.graph.restrict(vertices, pairs);
    let mut edge_map = vec![EdgeId(0); graph.edge_count()];
    let mut deltas = vec![Element::Integer(0); graph.edge_count()];
    for e in m.graph.edges() {
        if let Some(ne) = emap[e.0] {
            edge_map[ne.0] = m.edge_map[e.0];
            deltas[ne.0] = m.deltas[e.0].clone();
        }
    }
    DecoratedMorphism {
        target: Arc::clone(&m.target),
        graph,
        vertex_map: vertices.iter().map(|v| m.vertex_map[v.0]).collect(),
        edge_map,
        subgroups: vertices.iter().map(|v| m.subgroups[v.0].clone()).collect(),
        deltas,
        lambda: vertices.iter().map(|v| m.lambda[v.0].clone()).collect(),
        base: m.base.and_then(|b| vmap[b.0]),
    }
}

/// Kurosh rank of the image subgroup, read off the trimmed core.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KuroshRank {
    /// Graph rank plus the number of vertices with non-trivial subgroup.
    pub kappa: usize,
    /// `max(kappa - 1, 0)`.
    pub reduced: usize,
}

pub fn kurosh_rank(m: &DecoratedMorphism, u0: VertexId) -> KuroshRank {
    let core = trim_core(m, u0, &[]);
    let kappa = core.graph.rank() + core.subgroups.iter().filter(|s| !s.is_trivial()).count();
    KuroshRank {
        kappa,
        reduced: kappa.saturating_sub(1),
    }
}

/// Degree of a cover: the sum of subgroup indices over any vertex fiber. Every
/// vertex fiber and every edge fiber is checked to give the same number.
pub fn cover_index(m: &DecoratedMorphism) -> Result<usize> {
    m.check_cover().map_err(|v| Error::NotACover(v.to_string()))?;
    let t = m.target.graph();
    let mut degree = None;
    for u in t.vertices() {
        let d: usize = m
            .fiber(u)
            .iter()
            .map(|&v| m.subgroups[v.0].index().finite().expect("cover has finite index"))
            .sum();
        match degree {
            None => degree = Some(d),
            Some(x) if x != d => {
                return Err(Error::NotACover(format!(
                    "vertex fibers disagree: {x} over one vertex, {d} over {}",
                    m.target.vertex_name(u)
                )))
            }
            _ => {}
        }
    }
    let degree = degree.expect("target has a vertex");
    for f in t.edges() {
        let count = m.graph.edges().filter(|&e| m.edge_map[e.0] == f).count();
        if count != degree {
            return Err(Error::NotACover(format!(
                "edge fiber over {} has {count} edges, vertex fibers give {degree}",
                m.target.edge_name(f)
            )));
        }
    }
    Ok(degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::Index;

    fn words(g: &GraphOfGroups, ws: &[&[&str]]) -> Vec<Word> {
        ws.iter().map(|w| g.parse_word(w, None).unwrap()).collect()
    }

    #[test]
    fn wedge_examples() {
        let g = Arc::new(catalog::c2_c3());
        let u = g.base().unwrap();
        let gens = words(&g, &[&["a", "e", "b", "~e", "1"]]);
        let w = wedge(&g, u, &gens).unwrap();
        assert_eq!(w.vertex_count(), 2);
        assert_eq!(w.graph().edge_pair_count(), 2);
        assert!(w.subgroup(VertexId(0)).is_trivial());
        let circle = Word::from_parts(
            w.graph(),
            VertexId(0),
            vec![Element::Finite(0); 3],
            vec![EdgeId(0), EdgeId(2)],
        );
        assert_eq!(w.induced_image(&circle).unwrap(), gens[0]);

        let w = wedge(&g, u, &words(&g, &[&["a"]])).unwrap();
        assert_eq!(w.vertex_count(), 1);
        assert_eq!(w.subgroup(VertexId(0)).index(), Index::Finite(1));

        let w = wedge(&g, u, &[]).unwrap();
        assert_eq!(w.vertex_count(), 1);
        assert!(w.subgroup(VertexId(0)).is_trivial());

        let bad = words(&g, &[&["1", "e", "1"]]);
        assert!(matches!(wedge(&g, u, &bad), Err(Error::NotALoop { .. })));
    }

    #[test]
    fn fold_ab_is_the_circle() {
        let g = Arc::new(catalog::c2_c3());
        let u = g.base().unwrap();
        let gens = words(&g, &[&["a", "e", "b", "~e", "1"]]);
        let m = fold_generators(&g, u, &gens).unwrap();
        assert!(m.check_immersion().is_ok());
        assert_eq!(m.vertex_count(), 2);
        assert_eq!(m.graph().edge_pair_count(), 2);
        assert!(m.subgroup_member(VertexId(0), &gens[0]).unwrap());
    }

    #[test]
    fn fold_whole_group() {
        let g = Arc::new(catalog::c2_c3());
        let u = g.base().unwrap();
        let gens = words(&g, &[&["a"], &["1", "e", "b", "~e", "1"]]);
        let m = fold_generators(&g, u, &gens).unwrap();
        assert_eq!(m.vertex_count(), 2);
        assert_eq!(m.graph().edge_pair_count(), 1);
        assert_eq!(m.subgroup(VertexId(0)).index(), Index::Finite(1));
        assert_eq!(m.subgroup(VertexId(1)).index(), Index::Finite(1));
        assert_eq!(cover_index(&m).unwrap(), 1);
    }

    #[test]
    fn duplicate_generators_fold_away() {
        let g = Arc::new(catalog::c2_c3());
        let u = g.base().unwrap();
        let one = fold_generators(&g, u, &words(&g, &[&["a", "e", "b", "~e", "1"]])).unwrap();
        let three = fold_generators(
            &g,
            u,
            &words(
                &g,
                &[
                    &["a", "e", "b", "~e", "1"],
                    &["a", "e", "b", "~e", "1"],
                    &["a", "e", "b", "~e", "1"],
                ],
            ),
        )
        .unwrap();
        assert_eq!(one, three);
    }

    #[test]
    fn fold_creates_vertex_subgroups() {
        // b and b2 both appear on e-lifts from the same coset, forcing a
        // loop relation into the w-vertex.
        let g = Arc::new(catalog::c2_c3());
        let u = g.base().unwrap();
        let gens = words(&g, &[&["1", "e", "b", "~e", "1"]]);
        let m = fold_generators(&g, u, &gens).unwrap();
        assert_eq!(m.vertex_count(), 2);
        assert_eq!(m.subgroup(VertexId(1)).index(), Index::Finite(1));
        assert!(m.subgroup(VertexId(0)).is_trivial());
    }

    #[test]
    fn trim_removes_hair() {
        let m = crate::morphism::tests::ab_circle();
        assert_eq!(trim_core(&m, VertexId(0), &[]), m);
        let mut hairy = m.clone();
        let e = hairy.target().edge_by_name("e").unwrap();
        let z = hairy.add_trivial_vertex(VertexId(0)).unwrap();
        hairy
            .add_edge(VertexId(1), z, e.bar(), Element::Finite(2), Element::Finite(0))
            .unwrap();
        assert!(hairy.check_immersion().is_ok());
        let trimmed = trim_core(&hairy, VertexId(0), &[]);
        assert_eq!(trimmed.vertex_count(), 2);
        assert_eq!(kurosh_rank(&hairy, VertexId(0)), kurosh_rank(&m, VertexId(0)));
        let kept = trim_core(&hairy, VertexId(0), &[z]);
        assert_eq!(kept.vertex_count(), 3);
    }

    #[test]
    fn kurosh_rank_examples() {
        let z2 = Arc::new(catalog::z_z());
        let id = DecoratedMorphism::identity(Arc::clone(&z2));
        assert_eq!(kurosh_rank(&id, VertexId(0)), KuroshRank { kappa: 2, reduced: 1 });

        let m = crate::morphism::tests::ab_circle();
        assert_eq!(kurosh_rank(&m, VertexId(0)), KuroshRank { kappa: 1, reduced: 0 });

        let x = z2.base().unwrap();
        let gens = words(
            &z2,
            &[&["2"], &["0", "e", "1", "~e", "0"], &["1", "e", "1", "~e", "-1"]],
        );
        let m = fold_generators(&z2, x, &gens).unwrap();
        assert_eq!(kurosh_rank(&m, VertexId(0)), KuroshRank { kappa: 3, reduced: 2 });
        assert_eq!(cover_index(&m).unwrap(), 2);
    }

    #[test]
    fn cover_index_rejects_non_covers() {
        let m = crate::morphism::tests::ab_circle();
        assert!(matches!(cover_index(&m), Err(Error::NotACover(_))));
        let id = DecoratedMorphism::identity(Arc::new(catalog::c2_c3()));
        assert_eq!(cover_index(&id).unwrap(), 1);
    }
}
