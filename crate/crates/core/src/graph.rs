//! Finite graphs in the sense of Serre: every edge has an initial vertex and a
//! fixed-point-free involution `e -> ~e`. Edges are stored in pairs so that
//! `bar(e)` is `e` with its lowest bit flipped.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0
    }

    /// The reversed edge.
    pub fn bar(self) -> EdgeId {
        EdgeId(self.0 ^ 1)
    }

    /// Whether this is the representative of its pair chosen by the orientation
    /// (the even member).
    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    /// Index of the edge pair `{e, ~e}`.
    pub fn pair(self) -> usize {
        self.0 >> 1
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "e{}", self.pair())
        } else {
            write!(f, "~e{}", self.pair())
        }
    }
}

/// A finite graph with involution-paired edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    iota: Vec<VertexId>,
    out: Vec<Vec<EdgeId>>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices(n: usize) -> Self {
        Graph {
            iota: Vec::new(),
            out: vec![Vec::new(); n],
        }
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.out.push(Vec::new());
        VertexId(self.out.len() - 1)
    }

    /// Adds the pair `{e, ~e}` with `iota(e) = from`, `tau(e) = to` and returns `e`.
    pub fn add_edge(&mut self, from: VertexId, to: VertexId) -> EdgeId {
        assert!(from.0 < self.out.len() && to.0 < self.out.len(), "vertex out of range");
        let e = EdgeId(self.iota.len());
        self.iota.push(from);
        self.iota.push(to);
        self.out[from.0].push(e);
        self.out[to.0].push(e.bar());
        e
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    /// Number of edges counting both orientations.
    pub fn edge_count(&self) -> usize {
        self.iota.len()
    }

    pub fn edge_pair_count(&self) -> usize {
        self.iota.len() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.out.len()).map(VertexId)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.iota.len()).map(EdgeId)
    }

    /// One edge from each pair.
    pub fn positive_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.iota.len()).step_by(2).map(EdgeId)
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v.0 < self.out.len()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        e.0 < self.iota.len()
    }

    pub fn iota(&self, e: EdgeId) -> VertexId {
        self.iota[e.0]
    }

    pub fn tau(&self, e: EdgeId) -> VertexId {
        self.iota[e.bar().0]
    }

    /// Edges `e` with `iota(e) = v`, in increasing id order.
    pub fn edges_from(&self, v: VertexId) -> &[EdgeId] {
        &self.out[v.0]
    }

    pub fn valence(&self, v: VertexId) -> usize {
        self.out[v.0].len()
    }

    /// Connected components as a vertex labelling, plus the component count.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &e in &self.out[v] {
                    let w = self.tau(e).0;
                    if label[w] == usize::MAX {
                        label[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.components().1 == 1
    }

    /// First Betti number: edges outside a maximal forest.
    pub fn rank(&self) -> usize {
        let (_, c) = self.components();
        self.edge_pair_count() + c - self.vertex_count()
    }

    /// Breadth-first spanning tree from `root`: for every reached vertex other
    /// than the root, the tree edge through which it was first reached (pointing
    /// away from the root). Neighbours are explored in edge-id order.
    pub fn spanning_tree(&self, root: VertexId) -> Vec<Option<EdgeId>> {
        let mut parent = vec![None; self.vertex_count()];
        let mut seen = vec![false; self.vertex_count()];
        seen[root.0] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.out[v.0] {
                let w = self.tau(e);
                if !seen[w.0] {
                    seen[w.0] = true;
                    parent[w.0] = Some(e);
                    queue.push_back(w);
                }
            }
        }
        parent
    }

    /// Rebuilds the graph keeping only the listed vertices and edge pairs, in
    /// their given order. Returns the new graph plus old->new maps.
    pub fn restrict(
        &self,
        keep_vertices: &[VertexId],
        keep_pairs: &[usize],
    ) -> (Graph, Vec<Option<VertexId>>, Vec<Option<EdgeId>>) {
        let mut vmap = vec![None; self.vertex_count()];
        let mut g = Graph::with_vertices(keep_vertices.len());
        for (i, v) in keep_vertices.iter().enumerate() {
            vmap[v.0] = Some(VertexId(i));
        }
        let mut emap = vec![None; self.edge_count()];
        for &p in keep_pairs {
            let e = EdgeId(2 * p);
            let from = vmap[self.iota(e).0].expect("kept edge has a removed endpoint");
            let to = vmap[self.tau(e).0].expect("kept edge has a removed endpoint");
            let ne = g.add_edge(from, to);
            emap[e.0] = Some(ne);
            emap[e.bar().0] = Some(ne.bar());
        }
        (g, vmap, emap)
    }
}
