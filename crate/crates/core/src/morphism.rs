//! Decorated morphisms `H -> G` between graphs of groups with trivial edge
//! groups, represented as "subgroups of subgroups": every domain vertex `v`
//! carries a subgroup `S_v` of the target vertex group at `φ(v)`, and every
//! domain edge `e` carries `δ_e ∈ G_{φ(ι(e))}`.
//!
//! Cosets are right cosets. The lift `e` at `v` occupies the coset `S_v·δ_e`,
//! and the induced map on paths sends `e` to `δ_e · φ(e) · δ_{~e}⁻¹`.

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gog::GraphOfGroups;
use crate::graph::{EdgeId, Graph, VertexId};
use crate::group::{Element, Subgroup, VertexGroup};
use crate::word::Word;

/// Which coset convention external documents use for `δ`.
///
/// Internally everything is stored with right cosets. `PaperLeft` documents
/// store `δ' = δ⁻¹`, which turns the right coset `S·δ` into the left coset
/// `δ'·S` and the edge image into `δ'⁻¹ · f · δ'_{~e}`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CosetConvention {
    #[default]
    Right,
    PaperLeft,
}

impl CosetConvention {
    /// Converts a decoration given in this convention to the internal one.
    pub fn to_internal(self, group: &VertexGroup, delta: &Element) -> Element {
        match self {
            CosetConvention::Right => delta.clone(),
            CosetConvention::PaperLeft => group.inv(delta),
        }
    }

    /// Converts an internal decoration to this convention.
    pub fn from_internal(self, group: &VertexGroup, delta: &Element) -> Element {
        // The conversion is an involution.
        self.to_internal(group, delta)
    }

    /// The element whose membership in `S` decides that two lifts given in
    /// this convention share a coset: `δi·δj⁻¹` for right cosets, `δi⁻¹·δj`
    /// for left ones.
    pub fn discrepancy(self, group: &VertexGroup, di: &Element, dj: &Element) -> Element {
        match self {
            CosetConvention::Right => group.right_quotient(di, dj),
            CosetConvention::PaperLeft => group.mul(&group.inv(di), dj),
        }
    }
}

impl fmt::Display for CosetConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CosetConvention::Right => "right",
            CosetConvention::PaperLeft => "paper-left",
        })
    }
}

/// Two lifts of the same target edge at one vertex occupying the same coset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImmersionViolation {
    pub vertex: VertexId,
    pub target_edge: EdgeId,
    pub edges: (EdgeId, EdgeId),
}

impl fmt::Display for ImmersionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "local map at {} over {} is not injective: {} and {} occupy the same coset",
            self.vertex, self.target_edge, self.edges.0, self.edges.1
        )
    }
}

/// Why a morphism fails to be a cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverViolation {
    NotImmersion(ImmersionViolation),
    InfiniteIndexVertex(VertexId),
    /// No lift of `target_edge` at `vertex` occupies the coset of `representative`.
    MissingCoset {
        vertex: VertexId,
        target_edge: EdgeId,
        representative: Element,
    },
}

impl fmt::Display for CoverViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverViolation::NotImmersion(v) => v.fmt(f),
            CoverViolation::InfiniteIndexVertex(v) => {
                write!(f, "{v} carries an infinite-index subgroup")
            }
            CoverViolation::MissingCoset {
                vertex,
                target_edge,
                representative,
            } => write!(
                f,
                "local map at {vertex} over {target_edge} misses the coset of {representative:?}"
            ),
        }
    }
}

/// Result of lifting a target loop to the domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LiftOutcome {
    /// The lift returns to the base with terminal element `s`; the loop lies in
    /// the image subgroup exactly when `s ∈ S_{u0}`.
    Closed(Element),
    /// After `consumed` edges the lift sits at `vertex` with current element
    /// `element`, and no edge over `edge` occupies the required coset.
    Stuck {
        consumed: usize,
        vertex: VertexId,
        edge: EdgeId,
        element: Element,
    },
    /// The whole loop lifts but the lift ends at `vertex`, not at the base.
    OpenEnd { vertex: VertexId, element: Element },
}

/// A morphism of graphs of groups, stored as the domain graph together with its
/// decorations over a shared target.
#[derive(Debug, Clone, PartialEq)]
pub struct DecoratedMorphism {
    pub(crate) target: Arc<GraphOfGroups>,
    pub(crate) graph: Graph,
    pub(crate) vertex_map: Vec<VertexId>,
    pub(crate) edge_map: Vec<EdgeId>,
    pub(crate) subgroups: Vec<Subgroup>,
    pub(crate) deltas: Vec<Element>,
    /// `None` is the identity loop.
    pub(crate) lambda: Vec<Option<Word>>,
    pub(crate) base: Option<VertexId>,
}

impl DecoratedMorphism {
    /// The empty morphism into `target`.
    pub fn new(target: Arc<GraphOfGroups>) -> Self {
        DecoratedMorphism {
            target,
            graph: Graph::new(),
            vertex_map: Vec::new(),
            edge_map: Vec::new(),
            subgroups: Vec::new(),
            deltas: Vec::new(),
            lambda: Vec::new(),
            base: None,
        }
    }

    /// The degree-one cover `G -> G`: full vertex groups, every `δ = 1`.
    pub fn identity(target: Arc<GraphOfGroups>) -> Self {
        let mut m = DecoratedMorphism::new(Arc::clone(&target));
        for v in target.graph().vertices() {
            m.push_vertex(v, Subgroup::full(target.group(v)));
        }
        for f in target.graph().positive_edges() {
            let (a, b) = (target.graph().iota(f), target.graph().tau(f));
            m.push_edge(
                VertexId(a.0),
                VertexId(b.0),
                f,
                target.group(a).identity(),
                target.group(b).identity(),
            );
        }
        m.base = target.base();
        m
    }

    pub(crate) fn push_vertex(&mut self, over: VertexId, subgroup: Subgroup) -> VertexId {
        self.vertex_map.push(over);
        self.subgroups.push(subgroup);
        self.lambda.push(None);
        self.graph.add_vertex()
    }

    pub(crate) fn push_edge(
        &mut self,
        from: VertexId,
        to: VertexId,
        over: EdgeId,
        delta: Element,
        delta_bar: Element,
    ) -> EdgeId {
        self.edge_map.push(over);
        self.edge_map.push(over.bar());
        self.deltas.push(delta);
        self.deltas.push(delta_bar);
        self.graph.add_edge(from, to)
    }

    /// Adds a domain vertex over `over` carrying `subgroup`.
    pub fn add_vertex(&mut self, over: VertexId, subgroup: Subgroup) -> Result<VertexId> {
        if !self.target.graph().contains_vertex(over) {
            return Err(Error::InvalidMorphism(format!("target has no vertex {over}")));
        }
        self.check_subgroup_group(over, &subgroup)?;
        Ok(self.push_vertex(over, subgroup))
    }

    /// Adds a domain vertex over `over` with trivial subgroup.
    pub fn add_trivial_vertex(&mut self, over: VertexId) -> Result<VertexId> {
        if !self.target.graph().contains_vertex(over) {
            return Err(Error::InvalidMorphism(format!("target has no vertex {over}")));
        }
        let s = Subgroup::trivial(self.target.group(over));
        Ok(self.push_vertex(over, s))
    }

    /// Adds the edge pair `{e, ~e}` with `e: from -> to` over `over`,
    /// decorated by `δ_e = delta` and `δ_{~e} = delta_bar`.
    pub fn add_edge(
        &mut self,
        from: VertexId,
        to: VertexId,
        over: EdgeId,
        delta: Element,
        delta_bar: Element,
    ) -> Result<EdgeId> {
        let tg = self.target.graph();
        if !self.graph.contains_vertex(from) || !self.graph.contains_vertex(to) {
            return Err(Error::InvalidMorphism("edge endpoint is not a domain vertex".into()));
        }
        if !tg.contains_edge(over) {
            return Err(Error::InvalidMorphism(format!("target has no edge {over}")));
        }
        if tg.iota(over) != self.vertex_map[from.0] || tg.tau(over) != self.vertex_map[to.0] {
            return Err(Error::InvalidMorphism(format!(
                "edge over {} must join vertices over {} and {}",
                self.target.edge_name(over),
                self.target.vertex_name(tg.iota(over)),
                self.target.vertex_name(tg.tau(over)),
            )));
        }
        if !self.target.group(tg.iota(over)).contains(&delta) || !self.target.group(tg.tau(over)).contains(&delta_bar) {
            return Err(Error::InvalidMorphism(
                "edge decoration outside its vertex group".into(),
            ));
        }
        Ok(self.push_edge(from, to, over, delta, delta_bar))
    }

    fn check_subgroup_group(&self, over: VertexId, s: &Subgroup) -> Result<()> {
        let g = self.target.group(over);
        if Arc::ptr_eq(g, s.group()) || **g == **s.group() {
            Ok(())
        } else {
            Err(Error::InvalidMorphism(format!(
                "subgroup does not live in the group at {}",
                self.target.vertex_name(over)
            )))
        }
    }

    pub fn set_subgroup(&mut self, v: VertexId, s: Subgroup) -> Result<()> {
        self.check_subgroup_group(self.vertex_map[v.0], &s)?;
        self.subgroups[v.0] = s;
        Ok(())
    }

    pub fn set_delta(&mut self, e: EdgeId, delta: Element) -> Result<()> {
        let over = self.target.graph().iota(self.edge_map[e.0]);
        if !self.target.group(over).contains(&delta) {
            return Err(Error::ForeignElement);
        }
        self.deltas[e.0] = delta;
        Ok(())
    }

    /// Sets `λ_v`, a loop in the target at `φ(v)`. The identity loop is stored
    /// as the default.
    pub fn set_lambda(&mut self, v: VertexId, l: Word) -> Result<()> {
        let over = self.vertex_map[v.0];
        self.target.validate(&l)?;
        if l.start() != over || !l.is_loop() {
            return Err(Error::NotALoop { expected: over });
        }
        let l = self.target.reduce(&l);
        self.lambda[v.0] = if l == self.target.identity_word(over) {
            None
        } else {
            Some(l)
        };
        Ok(())
    }

    pub fn set_base(&mut self, v: VertexId) {
        assert!(self.graph.contains_vertex(v));
        self.base = Some(v);
    }

    pub fn target(&self) -> &Arc<GraphOfGroups> {
        &self.target
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn phi_vertex(&self, v: VertexId) -> VertexId {
        self.vertex_map[v.0]
    }

    pub fn phi_edge(&self, e: EdgeId) -> EdgeId {
        self.edge_map[e.0]
    }

    pub fn subgroup(&self, v: VertexId) -> &Subgroup {
        &self.subgroups[v.0]
    }

    pub fn delta(&self, e: EdgeId) -> &Element {
        &self.deltas[e.0]
    }

    /// `λ_v`, the identity loop unless set otherwise.
    pub fn lambda(&self, v: VertexId) -> Word {
        self.lambda[v.0]
            .clone()
            .unwrap_or_else(|| self.target.identity_word(self.vertex_map[v.0]))
    }

    pub fn base(&self) -> Option<VertexId> {
        self.base
    }

    pub(crate) fn base_or_err(&self) -> Result<VertexId> {
        self.base
            .ok_or_else(|| Error::InvalidMorphism("morphism has no base vertex".into()))
    }

    /// The group at `φ(v)`.
    pub fn vertex_group(&self, v: VertexId) -> &Arc<VertexGroup> {
        self.target.group(self.vertex_map[v.0])
    }

    /// Domain vertices over the target vertex `u`.
    pub fn fiber(&self, u: VertexId) -> Vec<VertexId> {
        self.graph.vertices().filter(|&v| self.vertex_map[v.0] == u).collect()
    }

    /// Rejects morphisms with a non-identity `λ`.
    pub fn require_identity_lambda(&self) -> Result<()> {
        match self.lambda.iter().position(Option::is_some) {
            Some(v) => Err(Error::NonTrivialLambda(VertexId(v))),
            None => Ok(()),
        }
    }

    /// Lifts of `f` at `v`, each with its decoration: the right coset
    /// `S_v·δ_e` it occupies.
    pub fn local_map(&self, v: VertexId, f: EdgeId) -> Result<Vec<(EdgeId, Element)>> {
        if !self.target.graph().contains_edge(f) || self.target.graph().iota(f) != self.vertex_map[v.0] {
            return Err(Error::EndpointMismatch { vertex: v, edge: f });
        }
        Ok(self
            .graph
            .edges_from(v)
            .iter()
            .filter(|&&e| self.edge_map[e.0] == f)
            .map(|&e| (e, self.deltas[e.0].clone()))
            .collect())
    }

    /// Target edges starting at `φ(v)`.
    fn target_edges_at(&self, v: VertexId) -> &[EdgeId] {
        self.target.graph().edges_from(self.vertex_map[v.0])
    }

    /// Every local map must be injective: distinct lifts of one target edge at
    /// one vertex occupy distinct right cosets.
    pub fn check_immersion(&self) -> std::result::Result<(), ImmersionViolation> {
        for v in self.graph.vertices() {
            let s = &self.subgroups[v.0];
            for &f in self.target_edges_at(v) {
                let lifts = self.local_map(v, f).expect("edge starts at the image");
                for i in 0..lifts.len() {
                    for j in i + 1..lifts.len() {
                        if s.same_coset(&lifts[i].1, &lifts[j].1) {
                            return Err(ImmersionViolation {
                                vertex: v,
                                target_edge: f,
                                edges: (lifts[i].0, lifts[j].0),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Every local map must be bijective onto the right cosets of `S_v`.
    pub fn check_cover(&self) -> std::result::Result<(), CoverViolation> {
        self.check_immersion().map_err(CoverViolation::NotImmersion)?;
        for v in self.graph.vertices() {
            let s = &self.subgroups[v.0];
            let reps = s.coset_reps().map_err(|_| CoverViolation::InfiniteIndexVertex(v))?;
            for &f in self.target_edges_at(v) {
                let lifts = self.local_map(v, f).expect("edge starts at the image");
                for t in &reps {
                    if !lifts.iter().any(|(_, d)| s.same_coset(d, t)) {
                        return Err(CoverViolation::MissingCoset {
                            vertex: v,
                            target_edge: f,
                            representative: t.clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks a path in the domain: edges chain and each element lies in the
    /// subgroup at its vertex.
    pub fn validate_domain_word(&self, w: &Word) -> Result<()> {
        let mut v = w.start();
        if !self.graph.contains_vertex(v) {
            return Err(Error::InvalidMorphism(format!("unknown domain vertex {v}")));
        }
        let mut vertices = vec![v];
        for (i, &e) in w.edges().iter().enumerate() {
            if !self.graph.contains_edge(e) || self.graph.iota(e) != v {
                return Err(Error::EdgeChainBroken { position: i + 1 });
            }
            v = self.graph.tau(e);
            vertices.push(v);
        }
        for (i, (x, v)) in w.elements().iter().zip(vertices).enumerate() {
            if !self.subgroups[v.0].contains(x) {
                return Err(Error::ElementOutOfGroup { position: i, vertex: v });
            }
        }
        Ok(())
    }

    /// Image of a domain path under the induced groupoid map, reduced. With
    /// identity `λ`, `e ↦ δ_e·φ(e)·δ_{~e}⁻¹` and vertex-group elements map to
    /// themselves.
    pub fn induced_image(&self, w: &Word) -> Result<Word> {
        self.validate_domain_word(w)?;
        let els = w.elements();
        let edges = w.edges();
        let mut out_elements = Vec::with_capacity(els.len());
        let mut out_edges = Vec::with_capacity(edges.len());
        let mut v = w.start();
        let mut acc = els[0].clone();
        for (i, &e) in edges.iter().enumerate() {
            let g = self.vertex_group(v);
            out_elements.push(g.mul(&acc, &self.deltas[e.0]));
            out_edges.push(self.edge_map[e.0]);
            v = self.graph.tau(e);
            let h = self.vertex_group(v);
            acc = h.mul(&h.inv(&self.deltas[e.bar().0]), &els[i + 1]);
        }
        out_elements.push(acc);
        let mut image = Word::from_parts(
            self.target.graph(),
            self.vertex_map[w.start().0],
            out_elements,
            out_edges,
        );
        if self.lambda.iter().any(Option::is_some) {
            let l0 = self.lambda(w.start());
            let l1 = self.lambda(w.end());
            image = self.target.compose(&self.target.inverse(&l0), &image)?;
            image = self.target.compose(&image, &l1)?;
        }
        Ok(self.target.reduce(&image))
    }

    /// Lifts the target loop `g` at `φ(u0)` starting from `u0`.
    ///
    /// The lift keeps a current element `c`: at domain vertex `v` the edge `f`
    /// lifts along the domain edge `e` over `f` with `c·δ_e⁻¹ ∈ S_v`, and the
    /// new current element is `δ_{~e}·g_{i+1}`. The loop is reduced first.
    pub fn lift_loop(&self, g: &Word, u0: VertexId) -> Result<LiftOutcome> {
        self.require_identity_lambda()?;
        self.target.validate(g)?;
        if g.start() != self.vertex_map[u0.0] || !g.is_loop() {
            return Err(Error::NotALoop {
                expected: self.vertex_map[u0.0],
            });
        }
        let g = self.target.reduce(g);
        let mut v = u0;
        let mut c = g.elements()[0].clone();
        for (i, &f) in g.edges().iter().enumerate() {
            let s = &self.subgroups[v.0];
            let hit = self
                .graph
                .edges_from(v)
                .iter()
                .copied()
                .find(|&e| self.edge_map[e.0] == f && s.same_coset(&c, &self.deltas[e.0]));
            let Some(e) = hit else {
                return Ok(LiftOutcome::Stuck {
                    consumed: i,
                    vertex: v,
                    edge: f,
                    element: c,
                });
            };
            v = self.graph.tau(e);
            c = self.vertex_group(v).mul(&self.deltas[e.bar().0], &g.elements()[i + 1]);
        }
        if v == u0 {
            Ok(LiftOutcome::Closed(c))
        } else {
            Ok(LiftOutcome::OpenEnd { vertex: v, element: c })
        }
    }

    /// Whether the target loop `g` lies in the image of `π1(H, u0)`. Only
    /// meaningful for immersions.
    pub fn subgroup_member(&self, u0: VertexId, g: &Word) -> Result<bool> {
        Ok(match self.lift_loop(g, u0)? {
            LiftOutcome::Closed(s) => self.subgroups[u0.0].contains(&s),
            _ => false,
        })
    }

    /// Image of the tree path from `u0` to every reachable domain vertex.
    fn tree_paths(&self, u0: VertexId) -> Vec<Option<Word>> {
        let tree = self.graph.spanning_tree(u0);
        let mut paths: Vec<Option<Word>> = vec![None; self.vertex_count()];
        paths[u0.0] = Some(self.target.identity_word(self.vertex_map[u0.0]));
        let mut queue = VecDeque::from([u0]);
        while let Some(v) = queue.pop_front() {
            for &e in self.graph.edges_from(v) {
                let w = self.graph.tau(e);
                if tree[w.0] == Some(e) {
                    let step = self.edge_image(e);
                    let p = self
                        .target
                        .compose(paths[v.0].as_ref().unwrap(), &step)
                        .expect("tree path composes");
                    paths[w.0] = Some(p);
                    queue.push_back(w);
                }
            }
        }
        paths
    }

    /// `δ_e·φ(e)·δ_{~e}⁻¹` as a target path.
    pub(crate) fn edge_image(&self, e: EdgeId) -> Word {
        let to = self.graph.tau(e);
        let h = self.vertex_group(to);
        Word::from_parts(
            self.target.graph(),
            self.vertex_map[self.graph.iota(e).0],
            vec![self.deltas[e.0].clone(), h.inv(&self.deltas[e.bar().0])],
            vec![self.edge_map[e.0]],
        )
    }

    /// Generators of the image of `π1(H, u0)` in `π1(G, φ(u0))`: the conjugates
    /// of vertex-subgroup generators along a spanning tree, then one loop per
    /// edge pair outside the tree.
    pub fn subgroup_generators(&self, u0: VertexId) -> Vec<Word> {
        let t = &self.target;
        let paths = self.tree_paths(u0);
        let tree = self.graph.spanning_tree(u0);
        let mut gens = Vec::new();
        for v in self.graph.vertices() {
            let Some(p) = &paths[v.0] else { continue };
            for s in self.subgroups[v.0].generators() {
                let x = Word::element(self.vertex_map[v.0], s.clone());
                let w = t.compose(&t.compose(p, &x).unwrap(), &t.inverse(p)).unwrap();
                gens.push(w);
            }
        }
        for e in self.graph.positive_edges() {
            let (a, b) = (self.graph.iota(e), self.graph.tau(e));
            if tree[b.0] == Some(e) || tree[a.0] == Some(e.bar()) {
                continue;
            }
            let (Some(pa), Some(pb)) = (&paths[a.0], &paths[b.0]) else {
                continue;
            };
            let w = t.compose(pa, &self.edge_image(e)).unwrap();
            gens.push(t.compose(&w, &t.inverse(pb)).unwrap());
        }
        gens
    }

    /// Replaces each decoration by the canonical representative of its coset
    /// wherever the vertex subgroup has finite index.
    pub fn canonicalize_deltas(&mut self) {
        for e in self.graph.edges() {
            let v = self.graph.iota(e);
            let s = &self.subgroups[v.0];
            self.deltas[e.0] = s.normalize(&self.deltas[e.0]);
        }
    }

    pub fn describe(&self) -> String {
        format!(
            "{} vertices, {} edge pairs over {}",
            self.vertex_count(),
            self.graph.edge_pair_count(),
            self.target.describe()
        )
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::catalog;

    /// The circle immersion for `<ab>` in `C2 * C3`: vertices `x` over `u` and
    /// `y` over `w`, edges `x -> y` with `δ = a, 1` and `y -> x` with
    /// `δ = b, 1`.
    pub(crate) fn ab_circle() -> DecoratedMorphism {
        let g = Arc::new(catalog::c2_c3());
        let u = g.vertex_by_name("u").unwrap();
        let w = g.vertex_by_name("w").unwrap();
        let e = g.edge_by_name("e").unwrap();
        let a = g.group(u).parse_element("a").unwrap();
        let b = g.group(w).parse_element("b").unwrap();
        let mut m = DecoratedMorphism::new(Arc::clone(&g));
        let x = m.add_trivial_vertex(u).unwrap();
        let y = m.add_trivial_vertex(w).unwrap();
        m.add_edge(x, y, e, a, g.group(w).identity()).unwrap();
        m.add_edge(y, x, e.bar(), b, g.group(u).identity()).unwrap();
        m.set_base(x);
        m
    }

    fn word(m: &DecoratedMorphism, toks: &[&str]) -> Word {
        m.target().parse_word(toks, None).unwrap()
    }

    #[test]
    fn local_map_examples() {
        let m = ab_circle();
        let e = m.target().edge_by_name("e").unwrap();
        let lifts = m.local_map(VertexId(0), e).unwrap();
        assert_eq!(lifts.len(), 2);
        assert_ne!(lifts[0].1, lifts[1].1);
        assert_eq!(m.local_map(VertexId(1), e.bar()).unwrap().len(), 2);
        assert!(matches!(
            m.local_map(VertexId(1), e),
            Err(Error::EndpointMismatch { .. })
        ));
    }

    #[test]
    fn immersion_and_cover_predicates() {
        let m = ab_circle();
        assert!(m.check_immersion().is_ok());
        match m.check_cover() {
            Err(CoverViolation::MissingCoset {
                vertex, representative, ..
            }) => {
                assert_eq!(vertex, VertexId(1));
                assert_eq!(m.vertex_group(vertex).format_element(&representative), "b2");
            }
            other => panic!("expected a missing coset, got {other:?}"),
        }
        let mut bad = m.clone();
        bad.set_delta(EdgeId(0), Element::Finite(0)).unwrap();
        let v = bad.check_immersion().unwrap_err();
        assert_eq!(v.vertex, VertexId(0));

        let id = DecoratedMorphism::identity(Arc::new(catalog::c2_c3()));
        assert!(id.check_cover().is_ok());

        let mut single = DecoratedMorphism::new(Arc::new(catalog::c2_c3()));
        single.add_trivial_vertex(VertexId(0)).unwrap();
        assert!(single.check_immersion().is_ok());
    }

    #[test]
    fn induced_image_of_circle_is_ab() {
        let m = ab_circle();
        let loop_ = Word::from_parts(
            m.graph(),
            VertexId(0),
            vec![Element::Finite(0); 3],
            vec![EdgeId(0), EdgeId(2)],
        );
        let img = m.induced_image(&loop_).unwrap();
        assert_eq!(m.target().format_word(&img), ["a", "e", "b", "~e", "1"]);
        let id = Word::element(VertexId(0), Element::Finite(0));
        assert_eq!(m.induced_image(&id).unwrap(), m.target().identity_word(VertexId(0)));
    }

    #[test]
    fn lifting_and_membership() {
        let m = ab_circle();
        let u0 = VertexId(0);
        let ab = word(&m, &["a", "e", "b", "~e", "1"]);
        assert!(matches!(m.lift_loop(&ab, u0).unwrap(), LiftOutcome::Closed(s) if s == Element::Finite(0)));
        assert!(m.subgroup_member(u0, &ab).unwrap());
        let ab3 = word(
            &m,
            &["a", "e", "b", "~e", "a", "e", "b", "~e", "a", "e", "b", "~e", "1"],
        );
        assert!(m.subgroup_member(u0, &ab3).unwrap());
        let a = word(&m, &["a"]);
        assert_eq!(m.lift_loop(&a, u0).unwrap(), LiftOutcome::Closed(Element::Finite(1)));
        assert!(!m.subgroup_member(u0, &a).unwrap());
        let id = m.target().identity_word(VertexId(0));
        assert_eq!(m.lift_loop(&id, u0).unwrap(), LiftOutcome::Closed(Element::Finite(0)));
        let ab2_inv = word(&m, &["1", "e", "b2", "~e", "a"]);
        assert!(m.subgroup_member(u0, &ab2_inv).unwrap());
        let stuck = word(&m, &["1", "e", "b", "~e", "1"]);
        assert!(matches!(
            m.lift_loop(&stuck, u0).unwrap(),
            LiftOutcome::Stuck { consumed: 1, .. }
        ));

        let full = DecoratedMorphism::identity(Arc::new(catalog::c2_c3()));
        assert!(full.subgroup_member(u0, &stuck).unwrap());
        assert!(full.subgroup_member(u0, &a).unwrap());
    }

    #[test]
    fn generators_of_circle() {
        let m = ab_circle();
        let gens = m.subgroup_generators(VertexId(0));
        assert_eq!(gens.len(), 1);
        assert_eq!(m.target().format_word(&gens[0]), ["a", "e", "b", "~e", "1"]);
    }

    #[test]
    fn paper_left_conversion_is_an_involution() {
        let g = VertexGroup::cyclic(3, "b");
        let b = g.parse_element("b").unwrap();
        let c = CosetConvention::PaperLeft;
        assert_eq!(c.from_internal(&g, &c.to_internal(&g, &b)), b);
        // Right quotient of internal values equals the left discrepancy of the
        // converted ones.
        let b2 = g.parse_element("b2").unwrap();
        let right = CosetConvention::Right.discrepancy(&g, &b, &b2);
        let left = c.discrepancy(&g, &c.from_internal(&g, &b), &c.from_internal(&g, &b2));
        assert_eq!(right, left);
    }

    #[test]
    fn lambda_must_be_a_loop_and_blocks_lifting() {
        let mut m = ab_circle();
        let a = word(&m, &["a"]);
        m.set_lambda(VertexId(0), a.clone()).unwrap();
        assert_eq!(m.require_identity_lambda(), Err(Error::NonTrivialLambda(VertexId(0))));
        assert!(m.lift_loop(&a, VertexId(0)).is_err());
        let open = word(&m, &["1", "e", "1"]);
        assert!(m.set_lambda(VertexId(0), open).is_err());
    }
}
