//! Paths `g0 e1 g1 … en gn` in the fundamental groupoid of a graph of groups.
//!
//! With trivial edge groups the only relation besides the vertex-group
//! multiplication is `e·1·~e = 1`, so deleting such subwords yields a unique
//! normal form. Every public operation here returns reduced words.

use std::fmt;

use crate::error::{Error, Result};
use crate::gog::GraphOfGroups;
use crate::graph::{EdgeId, Graph, VertexId};
use crate::group::Element;

/// A word `g0 e1 g1 … en gn`. `elements` has one more entry than `edges`; the
/// element `g_i` lives in the vertex group at the i-th vertex of the path.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    start: VertexId,
    end: VertexId,
    elements: Vec<Element>,
    edges: Vec<EdgeId>,
}

impl Word {
    /// Assembles a word without validation. `end` is derived from the last edge.
    pub fn from_parts(graph: &Graph, start: VertexId, elements: Vec<Element>, edges: Vec<EdgeId>) -> Word {
        assert_eq!(
            elements.len(),
            edges.len() + 1,
            "word must alternate elements and edges"
        );
        let end = edges.last().map_or(start, |&e| graph.tau(e));
        Word {
            start,
            end,
            elements,
            edges,
        }
    }

    /// The length-0 word `[g]` at `v`.
    pub fn element(v: VertexId, g: Element) -> Word {
        Word {
            start: v,
            end: v,
            elements: vec![g],
            edges: Vec::new(),
        }
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn end(&self) -> VertexId {
        self.end
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of group elements, `n + 1` for `n` edges.
    pub fn syllables(&self) -> usize {
        self.elements.len()
    }

    pub fn is_loop(&self) -> bool {
        self.start == self.end
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.elements[0])?;
        for (e, g) in self.edges.iter().zip(&self.elements[1..]) {
            write!(f, " {e} {g:?}")?;
        }
        Ok(())
    }
}

impl GraphOfGroups {
    /// The vertices visited by `w`: `v0, v1, …, vn`.
    pub fn word_vertices(&self, w: &Word) -> Vec<VertexId> {
        let mut out = vec![w.start];
        out.extend(w.edges.iter().map(|&e| self.graph().tau(e)));
        out
    }

    /// Checks that edges chain head to tail starting at `w.start()` and that
    /// every element lies in the group of its vertex.
    pub fn validate(&self, w: &Word) -> Result<()> {
        let g = self.graph();
        if !g.contains_vertex(w.start) {
            return Err(Error::InvalidGraph(format!("unknown vertex {}", w.start)));
        }
        let mut v = w.start;
        for (i, &e) in w.edges.iter().enumerate() {
            if !g.contains_edge(e) || g.iota(e) != v {
                return Err(Error::EdgeChainBroken { position: i + 1 });
            }
            v = g.tau(e);
        }
        if v != w.end {
            return Err(Error::EdgeChainBroken {
                position: w.edges.len(),
            });
        }
        for (i, (x, v)) in w.elements.iter().zip(self.word_vertices(w)).enumerate() {
            if !self.group(v).contains(x) {
                return Err(Error::ElementOutOfGroup { position: i, vertex: v });
            }
        }
        Ok(())
    }

    /// Builds and validates a word starting at `start`.
    pub fn word(&self, start: VertexId, elements: Vec<Element>, edges: Vec<EdgeId>) -> Result<Word> {
        if elements.len() != edges.len() + 1 {
            return Err(Error::parse(
                format!("{} elements, {} edges", elements.len(), edges.len()),
                "a word alternates elements and edges, starting and ending with an element",
            ));
        }
        if !self.graph().contains_vertex(start) || edges.iter().any(|&e| !self.graph().contains_edge(e)) {
            return Err(Error::InvalidGraph("word refers to unknown vertices or edges".into()));
        }
        let w = Word::from_parts(self.graph(), start, elements, edges);
        self.validate(&w)?;
        Ok(w)
    }

    /// The identity loop `[1]` at `v`.
    pub fn identity_word(&self, v: VertexId) -> Word {
        Word::element(v, self.group(v).identity())
    }

    /// Deletes every `e·1·~e`, merging the flanking elements. Stack based, so a
    /// single left-to-right pass suffices.
    pub fn reduce(&self, w: &Word) -> Word {
        let g = self.graph();
        let mut elements = vec![w.elements[0].clone()];
        let mut edges: Vec<EdgeId> = Vec::new();
        for (&e, x) in w.edges.iter().zip(&w.elements[1..]) {
            let v = g.iota(e);
            let cancels = edges.last() == Some(&e.bar()) && self.group(v).is_identity(elements.last().unwrap());
            if cancels {
                edges.pop();
                elements.pop();
                let u = g.tau(e);
                let last = elements.last_mut().unwrap();
                *last = self.group(u).mul(last, x);
            } else {
                edges.push(e);
                elements.push(x.clone());
            }
        }
        Word {
            start: w.start,
            end: w.end,
            elements,
            edges,
        }
    }

    pub fn is_reduced(&self, w: &Word) -> bool {
        let vs = self.word_vertices(w);
        !w.edges
            .windows(2)
            .enumerate()
            .any(|(i, p)| p[1] == p[0].bar() && self.group(vs[i + 1]).is_identity(&w.elements[i + 1]))
    }

    /// Concatenation followed by reduction.
    pub fn compose(&self, a: &Word, b: &Word) -> Result<Word> {
        if a.end != b.start {
            return Err(Error::Composability {
                end: a.end,
                start: b.start,
            });
        }
        let v = a.end;
        let mut elements = a.elements.clone();
        let joint = self.group(v).mul(elements.last().unwrap(), &b.elements[0]);
        *elements.last_mut().unwrap() = joint;
        elements.extend(b.elements[1..].iter().cloned());
        let mut edges = a.edges.clone();
        edges.extend(b.edges.iter().copied());
        Ok(self.reduce(&Word {
            start: a.start,
            end: b.end,
            elements,
            edges,
        }))
    }

    /// The formal inverse `gn⁻¹ ~en … ~e1 g0⁻¹`, reduced.
    pub fn inverse(&self, w: &Word) -> Word {
        let vs = self.word_vertices(w);
        let elements = w
            .elements
            .iter()
            .zip(&vs)
            .rev()
            .map(|(x, &v)| self.group(v).inv(x))
            .collect();
        let edges = w.edges.iter().rev().map(|e| e.bar()).collect();
        self.reduce(&Word {
            start: w.end,
            end: w.start,
            elements,
            edges,
        })
    }

    /// Whether the loop is reduced and not of the form `g0 e … ~e gn` with
    /// `gn·g0 = 1`.
    pub fn is_cyclically_reduced(&self, w: &Word) -> bool {
        if !w.is_loop() || !self.is_reduced(w) {
            return false;
        }
        match (w.edges.first(), w.edges.last()) {
            (Some(&first), Some(&last)) if last == first.bar() => {
                let v = w.start;
                let gn_g0 = self.group(v).mul(w.elements.last().unwrap(), &w.elements[0]);
                !self.group(v).is_identity(&gn_g0)
            }
            _ => true,
        }
    }

    /// Conjugates a loop until it is cyclically reduced. The result may be based
    /// at a different vertex.
    pub fn cyclic_reduce(&self, w: &Word) -> Result<Word> {
        if !w.is_loop() {
            return Err(Error::NotALoop { expected: w.start });
        }
        let mut w = self.reduce(w);
        loop {
            let n = w.edges.len();
            if n < 2 || w.edges[n - 1] != w.edges[0].bar() {
                return Ok(w);
            }
            let v = w.start;
            let gn_g0 = self.group(v).mul(&w.elements[n], &w.elements[0]);
            if !self.group(v).is_identity(&gn_g0) {
                return Ok(w);
            }
            let start = self.graph().tau(w.edges[0]);
            w = Word {
                start,
                end: start,
                elements: w.elements[1..n].to_vec(),
                edges: w.edges[1..n - 1].to_vec(),
            };
        }
    }

    /// Parses the alternating token list `["a","e","b","~e","1"]`. The start
    /// vertex comes from the first edge; length-0 words use `start`, falling
    /// back to the base vertex.
    pub fn parse_word<S: AsRef<str>>(&self, tokens: &[S], start: Option<VertexId>) -> Result<Word> {
        if tokens.len().is_multiple_of(2) {
            return Err(Error::parse(
                format!("{} tokens", tokens.len()),
                "a word needs an odd number of tokens",
            ));
        }
        let mut edges = Vec::new();
        for t in tokens.iter().skip(1).step_by(2) {
            let t = t.as_ref();
            edges.push(self.edge_by_name(t).ok_or_else(|| Error::parse(t, "unknown edge"))?);
        }
        let v0 = match edges.first() {
            Some(&e) => self.graph().iota(e),
            None => start
                .or(self.base())
                .ok_or_else(|| Error::parse(tokens[0].as_ref(), "length-0 word needs a start vertex or a base"))?,
        };
        if let (Some(s), Some(_)) = (start, edges.first()) {
            if s != v0 {
                return Err(Error::NotALoop { expected: s });
            }
        }
        let mut v = v0;
        let mut vertices = vec![v0];
        for (i, &e) in edges.iter().enumerate() {
            if self.graph().iota(e) != v {
                return Err(Error::EdgeChainBroken { position: i + 1 });
            }
            v = self.graph().tau(e);
            vertices.push(v);
        }
        let elements = tokens
            .iter()
            .step_by(2)
            .zip(&vertices)
            .enumerate()
            .map(|(i, (t, &v))| {
                self.group(v)
                    .parse_element(t.as_ref())
                    .map_err(|_| Error::ElementOutOfGroup { position: i, vertex: v })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Word::from_parts(self.graph(), v0, elements, edges))
    }

    pub fn format_word(&self, w: &Word) -> Vec<String> {
        let vs = self.word_vertices(w);
        let mut out = vec![self.group(vs[0]).format_element(&w.elements[0])];
        for (i, &e) in w.edges.iter().enumerate() {
            out.push(self.edge_name(e));
            out.push(self.group(vs[i + 1]).format_element(&w.elements[i + 1]));
        }
        out
    }

    pub fn show_word(&self, w: &Word) -> String {
        format!("[{}]", self.format_word(w).join(", "))
    }
}
