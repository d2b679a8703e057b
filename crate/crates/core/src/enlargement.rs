//! Enlarging vertex subgroups to finite index without breaking the immersion.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::VertexId;
use crate::group::Element;
use crate::morphism::{DecoratedMorphism, ImmersionViolation};

/// Elements each enlarged vertex subgroup must avoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExclusionSets {
    sets: Vec<Vec<Element>>,
}

impl ExclusionSets {
    pub fn get(&self, v: VertexId) -> &[Element] {
        &self.sets[v.0]
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, &[Element])> {
        self.sets.iter().enumerate().map(|(i, s)| (VertexId(i), s.as_slice()))
    }
}

/// For every vertex `v`: the quotients `δ_i·δ_j⁻¹` over ordered pairs of
/// distinct lifts of a common target edge at `v`, together with `extra[v]`.
/// Sorted and without duplicates.
pub fn exclusion_sets(m: &DecoratedMorphism, extra: &BTreeMap<VertexId, Vec<Element>>) -> Result<ExclusionSets> {
    let mut sets = Vec::with_capacity(m.vertex_count());
    for v in m.graph().vertices() {
        let group = m.vertex_group(v);
        let s = m.subgroup(v);
        let mut xs: Vec<Element> = Vec::new();
        for &f in m.target().graph().edges_from(m.phi_vertex(v)) {
            let lifts = m.local_map(v, f)?;
            for (i, (ei, di)) in lifts.iter().enumerate() {
                for (j, (ej, dj)) in lifts.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    let x = group.right_quotient(di, dj);
                    if s.contains(&x) {
                        return Err(Error::NotAnImmersion(ImmersionViolation {
                            vertex: v,
                            target_edge: f,
                            edges: (*ei, *ej),
                        }));
                    }
                    xs.push(x);
                }
            }
        }
        if let Some(more) = extra.get(&v) {
            for x in more {
                if !group.contains(x) {
                    return Err(Error::ForeignElement);
                }
                xs.push(x.clone());
            }
        }
        xs.sort();
        xs.dedup();
        sets.push(xs);
    }
    for &v in extra.keys() {
        if !m.graph().contains_vertex(v) {
            return Err(Error::InvalidMorphism(format!("exclusion for unknown vertex {v}")));
        }
    }
    Ok(ExclusionSets { sets })
}

/// Replaces every `S_v` by a finite-index `K_v ⊇ S_v` avoiding `X_v`.
/// Decorations are left untouched, so distinct cosets stay distinct.
pub fn enlarge(m: &DecoratedMorphism, xs: &ExclusionSets) -> Result<DecoratedMorphism> {
    if xs.len() != m.vertex_count() {
        return Err(Error::InvalidMorphism(
            "exclusion sets do not match the domain vertices".into(),
        ));
    }
    let mut out = m.clone();
    for v in m.graph().vertices() {
        let k = m.subgroup(v).separate(xs.get(v))?;
        out.subgroups[v.0] = k;
    }
    Ok(out)
}
