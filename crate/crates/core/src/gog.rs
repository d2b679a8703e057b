//! Graphs of groups with trivial edge groups.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};
use crate::group::VertexGroup;

/// A finite connected graph with a vertex group at every vertex. Edge groups
/// are trivial, so the fundamental group is the free product of the vertex
/// groups with a free group whose rank is the rank of the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphOfGroups {
    graph: Graph,
    groups: Vec<Arc<VertexGroup>>,
    vertex_names: Vec<String>,
    /// One name per edge pair; the reverse edge is written `~name`.
    edge_names: Vec<String>,
    base: Option<VertexId>,
}

/// Incremental construction of a [`GraphOfGroups`].
#[derive(Debug, Default)]
pub struct GraphOfGroupsBuilder {
    graph: Graph,
    groups: Vec<Arc<VertexGroup>>,
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
    base: Option<VertexId>,
}

impl GraphOfGroupsBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, name: &str, group: VertexGroup) -> VertexId {
        self.vertex_shared(name, Arc::new(group))
    }

    pub fn vertex_shared(&mut self, name: &str, group: Arc<VertexGroup>) -> VertexId {
        self.groups.push(group);
        self.vertex_names.push(name.to_owned());
        self.graph.add_vertex()
    }

    pub fn edge(&mut self, name: &str, from: VertexId, to: VertexId) -> EdgeId {
        self.edge_names.push(name.to_owned());
        self.graph.add_edge(from, to)
    }

    pub fn base(&mut self, v: VertexId) -> &mut Self {
        self.base = Some(v);
        self
    }

    pub fn build(self) -> Result<GraphOfGroups> {
        if !self.graph.is_connected() {
            return Err(Error::InvalidGraph(
                "the underlying graph must be non-empty and connected".into(),
            ));
        }
        check_unique(&self.vertex_names, "vertex")?;
        check_unique(&self.edge_names, "edge")?;
        for name in &self.edge_names {
            if name.is_empty() || name.starts_with('~') {
                return Err(Error::InvalidGraph(format!("bad edge name `{name}`")));
            }
        }
        if let Some(b) = self.base {
            if !self.graph.contains_vertex(b) {
                return Err(Error::InvalidGraph(format!("base {b} is not a vertex")));
            }
        }
        Ok(GraphOfGroups {
            graph: self.graph,
            groups: self.groups,
            vertex_names: self.vertex_names,
            edge_names: self.edge_names,
            base: self.base,
        })
    }
}

fn check_unique(names: &[String], what: &str) -> Result<()> {
    let mut sorted: Vec<&String> = names.iter().collect();
    sorted.sort();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::InvalidGraph(format!("duplicate {what} name `{}`", w[0])));
        }
    }
    Ok(())
}

impl GraphOfGroups {
    pub fn builder() -> GraphOfGroupsBuilder {
        GraphOfGroupsBuilder::new()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn group(&self, v: VertexId) -> &Arc<VertexGroup> {
        &self.groups[v.0]
    }

    pub fn groups(&self) -> &[Arc<VertexGroup>] {
        &self.groups
    }

    pub fn base(&self) -> Option<VertexId> {
        self.base
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_names.iter().position(|n| n == name).map(VertexId)
    }

    /// `e` for a positive edge, `~e` for its reverse.
    pub fn edge_name(&self, e: EdgeId) -> String {
        let name = &self.edge_names[e.pair()];
        if e.is_positive() {
            name.clone()
        } else {
            format!("~{name}")
        }
    }

    pub fn edge_by_name(&self, token: &str) -> Option<EdgeId> {
        let (name, reversed) = match token.strip_prefix('~') {
            Some(n) => (n, true),
            None => (token, false),
        };
        let pair = self.edge_names.iter().position(|n| n == name)?;
        let e = EdgeId(2 * pair);
        Some(if reversed { e.bar() } else { e })
    }

    pub fn is_finite_kind(&self) -> bool {
        self.groups.iter().all(|g| g.order().is_some())
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self
            .graph
            .vertices()
            .map(|v| format!("{}:{}", self.vertex_name(v), self.group(v).label()))
            .collect();
        format!(
            "[{}] with {} edge pair(s)",
            parts.join(", "),
            self.graph.edge_pair_count()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_rejects_disconnected_graphs() {
        let mut b = GraphOfGroups::builder();
        b.vertex("u", VertexGroup::cyclic(2, "a"));
        b.vertex("w", VertexGroup::cyclic(3, "b"));
        assert!(matches!(b.build(), Err(Error::InvalidGraph(_))));
    }

    #[test]
    fn edge_names_round_trip() {
        let mut b = GraphOfGroups::builder();
        let u = b.vertex("u", VertexGroup::cyclic(2, "a"));
        let w = b.vertex("w", VertexGroup::cyclic(3, "b"));
        let e = b.edge("e", u, w);
        b.base(u);
        let g = b.build().unwrap();
        assert_eq!(g.edge_by_name("e"), Some(e));
        assert_eq!(g.edge_by_name("~e"), Some(e.bar()));
        assert_eq!(g.edge_name(e.bar()), "~e");
        assert_eq!(g.edge_by_name("f"), None);
        assert_eq!(g.vertex_by_name("w"), Some(w));
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let mut b = GraphOfGroups::builder();
        let u = b.vertex("u", VertexGroup::Integer);
        let w = b.vertex("u", VertexGroup::Integer);
        b.edge("e", u, w);
        assert!(b.build().is_err());
    }
}
