//! Graphviz export.

use std::fmt::Write;

use crate::gog::GraphOfGroups;
use crate::morphism::DecoratedMorphism;

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// One node per vertex labelled with its group, one arrow per edge pair.
pub fn gog_to_dot(g: &GraphOfGroups) -> String {
    let graph = g.graph();
    let mut out = String::from("digraph gog {\n");
    for v in graph.vertices() {
        let name = g.vertex_name(v);
        let mut label = format!("{name}: {}", g.group(v).label());
        if g.base() == Some(v) {
            label.push_str(" *");
        }
        let _ = writeln!(out, "  {} [label={}];", quote(name), quote(&label));
    }
    for e in graph.positive_edges() {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(g.vertex_name(graph.iota(e))),
            quote(g.vertex_name(graph.tau(e))),
            quote(&g.edge_name(e))
        );
    }
    out.push_str("}\n");
    out
}

/// Domain vertices show their image and subgroup; edges show their image and
/// both decorations.
pub fn morphism_to_dot(m: &DecoratedMorphism) -> String {
    let t = m.target();
    let graph = m.graph();
    let mut out = String::from("digraph morphism {\n");
    for v in graph.vertices() {
        let mut label = format!("{v} / {}\n{}", t.vertex_name(m.phi_vertex(v)), m.subgroup(v).describe());
        if m.base() == Some(v) {
            label.push_str(" *");
        }
        let _ = writeln!(out, "  {} [label={}];", quote(&v.to_string()), quote(&label));
    }
    for e in graph.positive_edges() {
        let (a, b) = (graph.iota(e), graph.tau(e));
        let label = format!(
            "{} ({}, {})",
            t.edge_name(m.phi_edge(e)),
            m.vertex_group(a).format_element(m.delta(e)),
            m.vertex_group(b).format_element(m.delta(e.bar()))
        );
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(&a.to_string()),
            quote(&b.to_string()),
            quote(&label)
        );
    }
    out.push_str("}\n");
    out
}
