//! Bounded enumeration: reduced loops, balls in the Bass–Serre tree, and the
//! tree map induced by a morphism.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::gog::GraphOfGroups;
use crate::graph::{EdgeId, Graph, VertexId};
use crate::group::{Element, VertexGroup};
use crate::morphism::DecoratedMorphism;
use crate::word::Word;

fn sample(group: &VertexGroup, bound: Option<usize>) -> Result<Vec<Element>> {
    match (group.order(), bound) {
        (Some(_), _) => Ok(group.sample_elements(0)),
        (None, Some(b)) => Ok(group.sample_elements(b)),
        (None, None) => Err(Error::UnboundedEnumeration),
    }
}

/// All reduced loops at `v0` with at most `n` syllables. For infinite vertex
/// groups `bound` limits the sampled elements and is then required.
pub fn enumerate_ball_elements(g: &GraphOfGroups, v0: VertexId, n: usize, bound: Option<usize>) -> Result<Vec<Word>> {
    let samples: Vec<Vec<Element>> = g
        .graph()
        .vertices()
        .map(|v| sample(g.group(v), bound))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    if n == 0 {
        return Ok(out);
    }
    let mut elements = Vec::new();
    let mut edges = Vec::new();
    for x in &samples[v0.0] {
        elements.push(x.clone());
        extend(g, &samples, v0, n, &mut elements, &mut edges, &mut out);
        elements.pop();
    }
    Ok(out)
}

fn extend(
    g: &GraphOfGroups,
    samples: &[Vec<Element>],
    v0: VertexId,
    n: usize,
    elements: &mut Vec<Element>,
    edges: &mut Vec<EdgeId>,
    out: &mut Vec<Word>,
) {
    let graph = g.graph();
    let here = edges.last().map_or(v0, |&e| graph.tau(e));
    if here == v0 {
        out.push(Word::from_parts(graph, v0, elements.clone(), edges.clone()));
    }
    if elements.len() == n {
        return;
    }
    let last_trivial = g.group(here).is_identity(elements.last().unwrap());
    for &e in graph.edges_from(here) {
        if last_trivial && edges.last() == Some(&e.bar()) {
            continue;
        }
        edges.push(e);
        for x in &samples[graph.tau(e).0] {
            elements.push(x.clone());
            extend(g, samples, v0, n, elements, edges, out);
            elements.pop();
        }
        edges.pop();
    }
}

/// A vertex of the Bass–Serre tree: the path `e1 g1 e2 … en gn` to the root,
/// whose leading element is absorbed into the vertex group at `vertex`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BallVertex {
    pub key: Vec<(EdgeId, Element)>,
    pub vertex: VertexId,
}

/// A ball around the root of a Bass–Serre tree. `parent[i]` is the index of the
/// neighbour one step closer to the root.
#[derive(Debug, Clone)]
pub struct TreeBall {
    pub vertices: Vec<BallVertex>,
    pub parent: Vec<Option<usize>>,
}

impl TreeBall {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Breadth-first ball of radius `r`. `elements(v)` lists the group elements
/// used at `v`; identity is recognised by `is_identity`.
fn ball_with(
    graph: &Graph,
    root: VertexId,
    r: usize,
    elements: &dyn Fn(VertexId) -> Vec<Element>,
    is_identity: &dyn Fn(VertexId, &Element) -> bool,
) -> TreeBall {
    let mut vertices = vec![BallVertex {
        key: Vec::new(),
        vertex: root,
    }];
    let mut parent = vec![None];
    let mut layer = vec![0usize];
    for _ in 0..r {
        let mut next = Vec::new();
        for &i in &layer {
            let here = vertices[i].vertex;
            let first = vertices[i].key.first().cloned();
            let elts = elements(here);
            for &e in graph.edges_from(here) {
                let e = e.bar();
                for x in &elts {
                    if let Some((f, _)) = &first {
                        if is_identity(here, x) && e == f.bar() {
                            continue;
                        }
                    }
                    let mut key = Vec::with_capacity(vertices[i].key.len() + 1);
                    key.push((e, x.clone()));
                    key.extend(vertices[i].key.iter().cloned());
                    next.push(vertices.len());
                    vertices.push(BallVertex {
                        key,
                        vertex: graph.iota(e),
                    });
                    parent.push(Some(i));
                }
            }
        }
        layer = next;
    }
    TreeBall { vertices, parent }
}

/// The ball of radius `r` around the vertex stabilised by `G_{v0}` in the
/// Bass–Serre tree of `g`.
pub fn tree_ball(g: &GraphOfGroups, v0: VertexId, r: usize, bound: Option<usize>) -> Result<TreeBall> {
    let samples: Vec<Vec<Element>> = g
        .graph()
        .vertices()
        .map(|v| sample(g.group(v), bound))
        .collect::<Result<_>>()?;
    Ok(ball_with(g.graph(), v0, r, &|v| samples[v.0].clone(), &|v, x| {
        g.group(v).is_identity(x)
    }))
}

/// Sizes and properties of the tree map restricted to a ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BallMapReport {
    pub domain_size: usize,
    pub image_size: usize,
    pub target_size: usize,
    pub injective: bool,
    pub surjective: bool,
}

/// Compares the ball of radius `r` at `u0` in the domain tree with the ball of
/// the same radius at `φ(u0)` in the target tree under the induced map.
/// Requires identity `λ`.
pub fn ball_map(m: &DecoratedMorphism, u0: VertexId, r: usize, bound: Option<usize>) -> Result<BallMapReport> {
    m.require_identity_lambda()?;
    let target = m.target();
    let mut domain_samples = Vec::with_capacity(m.vertex_count());
    for v in m.graph().vertices() {
        let s = m.subgroup(v);
        let xs = match s.elements() {
            Some(xs) => xs,
            None => sample(m.vertex_group(v), bound)?
                .into_iter()
                .filter(|x| s.contains(x))
                .collect(),
        };
        domain_samples.push(xs);
    }
    let domain = ball_with(m.graph(), u0, r, &|v| domain_samples[v.0].clone(), &|v, x| {
        m.vertex_group(v).is_identity(x)
    });
    let target_ball = tree_ball(target, m.phi_vertex(u0), r, bound)?;
    let target_keys: HashSet<&Vec<(EdgeId, Element)>> = target_ball.vertices.iter().map(|b| &b.key).collect();

    let mut image: BTreeSet<Vec<(EdgeId, Element)>> = BTreeSet::new();
    let mut injective = true;
    for b in &domain.vertices {
        let key = image_key(m, b);
        if !image.insert(key) {
            injective = false;
        }
    }
    let surjective = target_keys.iter().all(|k| image.contains(*k));
    Ok(BallMapReport {
        domain_size: domain.len(),
        image_size: image.len(),
        target_size: target_ball.len(),
        injective,
        surjective,
    })
}

/// Image of a domain tree vertex: the reduced target path
/// `δ_{d1}·φ(d1)·δ_{~d1}⁻¹ s1 δ_{d2} … φ(dn)·δ_{~dn}⁻¹ sn` with its leading
/// element dropped.
fn image_key(m: &DecoratedMorphism, b: &BallVertex) -> Vec<(EdgeId, Element)> {
    let target = m.target();
    let dg = m.graph();
    if b.key.is_empty() {
        return Vec::new();
    }
    let mut elements = Vec::with_capacity(b.key.len() + 1);
    let mut edges = Vec::with_capacity(b.key.len());
    elements.push(m.delta(b.key[0].0).clone());
    for (i, (d, s)) in b.key.iter().enumerate() {
        let w = dg.tau(*d);
        let h = m.vertex_group(w);
        let mut x = h.mul(&h.inv(m.delta(d.bar())), s);
        if let Some((next, _)) = b.key.get(i + 1) {
            x = h.mul(&x, m.delta(*next));
        }
        edges.push(m.phi_edge(*d));
        elements.push(x);
    }
    let start = m.phi_vertex(b.vertex);
    let w = target.reduce(&Word::from_parts(target.graph(), start, elements, edges));
    w.edges()
        .iter()
        .copied()
        .zip(w.elements()[1..].iter().cloned())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::completion::{complete_to_cover, TieBreak};
    use std::sync::Arc;

    #[test]
    fn loop_counts_in_c2_c3() {
        let g = catalog::c2_c3();
        let u = VertexId(0);
        // One syllable: 1, a. Three syllables: x e y ~e z with the middle
        // element non-trivial: 2 * 2 * 2.
        let words = enumerate_ball_elements(&g, u, 3, None).unwrap();
        assert_eq!(words.len(), 2 + 8);
        assert!(words.iter().all(|w| g.is_reduced(w) && w.is_loop()));
    }

    #[test]
    fn infinite_groups_need_a_bound() {
        let g = catalog::z_z();
        assert_eq!(
            enumerate_ball_elements(&g, VertexId(0), 1, None).unwrap_err(),
            Error::UnboundedEnumeration
        );
        assert_eq!(enumerate_ball_elements(&g, VertexId(0), 1, Some(2)).unwrap().len(), 5);
    }

    #[test]
    fn c2_c3_tree_ball_sizes() {
        // The tree is (2,3)-biregular; radius 2 from a valence-2 vertex.
        let g = catalog::c2_c3();
        let b = tree_ball(&g, VertexId(0), 2, None).unwrap();
        assert_eq!(b.len(), 1 + 2 + 2 * 2);
    }

    #[test]
    fn covers_induce_tree_isomorphisms() {
        let m = crate::morphism::tests::ab_circle();
        let (cover, _) = complete_to_cover(&m, TieBreak::Lexicographic).unwrap();
        let rep = ball_map(&cover, cover.base().unwrap(), 4, None).unwrap();
        assert!(rep.injective && rep.surjective);
        assert_eq!(rep.domain_size, rep.target_size);
    }

    #[test]
    fn identity_is_bijective_on_balls() {
        let id = DecoratedMorphism::identity(Arc::new(catalog::c2_c2_c3()));
        let rep = ball_map(&id, VertexId(1), 3, None).unwrap();
        assert!(rep.injective && rep.surjective);
    }

    #[test]
    fn immersion_is_injective_but_not_onto() {
        let m = crate::morphism::tests::ab_circle();
        let rep = ball_map(&m, m.base().unwrap(), 4, None).unwrap();
        assert!(rep.injective);
        assert!(!rep.surjective);
    }

    #[test]
    fn non_immersion_collapses_balls() {
        let g = Arc::new(catalog::c2_c3());
        let mut m = DecoratedMorphism::new(Arc::clone(&g));
        let x = m.add_trivial_vertex(VertexId(0)).unwrap();
        let y = m.add_trivial_vertex(VertexId(1)).unwrap();
        let one_u = g.group(VertexId(0)).identity();
        let one_w = g.group(VertexId(1)).identity();
        m.add_edge(x, y, EdgeId(0), one_u.clone(), one_w.clone()).unwrap();
        m.add_edge(x, y, EdgeId(0), one_u, one_w).unwrap();
        m.set_base(x);
        let rep = ball_map(&m, x, 1, None).unwrap();
        assert!(!rep.injective);
    }
}
