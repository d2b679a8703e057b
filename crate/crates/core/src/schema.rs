//! JSON documents: graphs of groups, morphisms and separation certificates.
//!
//! Structural errors carry a JSON pointer from `serde_path_to_error`; semantic
//! errors (unknown names, elements outside their group, broken edge chains)
//! carry a pointer to the offending value as well. Both surface as
//! [`Error::Schema`].

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gog::GraphOfGroups;
use crate::graph::{EdgeId, VertexId};
use crate::group::{Element, FiniteGroup, Subgroup, VertexGroup, DEFAULT_ORDER_CAP};
use crate::morphism::{CosetConvention, DecoratedMorphism, LiftOutcome};
use crate::separator::{Check, PathCase, SeparationCertificate};
use crate::word::Word;

pub const SCHEMA_VERSION: u32 = 1;

/// Limits applied while building values from documents.
#[derive(Debug, Clone, Copy)]
pub struct LoadOptions {
    /// Largest finite vertex group accepted.
    pub order_cap: usize,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            order_cap: DEFAULT_ORDER_CAP,
        }
    }
}

fn schema(pointer: impl Into<String>, message: impl ToString) -> Error {
    Error::Schema {
        pointer: pointer.into(),
        message: message.to_string(),
    }
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } => {
                out.push('/');
                out.push_str(&key.replace('~', "~0").replace('/', "~1"));
            }
            Segment::Enum { variant } => {
                out.push('/');
                out.push_str(variant);
            }
            Segment::Unknown => out.push_str("/?"),
        }
    }
    out
}

/// Deserializes `text`, reporting the JSON pointer of the first violation.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let pointer = pointer_of(e.path());
        schema(pointer, e.into_inner())
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

fn check_version(v: u32, at: &str) -> Result<()> {
    if v == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(schema(
            format!("{at}/schema_version"),
            format!("unsupported schema version {v}, expected {SCHEMA_VERSION}"),
        ))
    }
}

/// A vertex group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GroupDoc {
    /// Named elements and a multiplication table: `table[x][j]` is `x·elements[j]`.
    Finite {
        elements: Vec<String>,
        table: BTreeMap<String, Vec<String>>,
    },
    /// Shorthand for the cyclic group `1, g, g2, …`.
    Cyclic {
        order: usize,
        generator: String,
    },
    Integer,
    Free {
        rank: usize,
    },
}

impl GroupDoc {
    pub fn build(&self, at: &str, opts: LoadOptions) -> Result<VertexGroup> {
        match self {
            GroupDoc::Finite { elements, table } => {
                let index: BTreeMap<&str, usize> = elements.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
                if let Some(k) = table.keys().find(|k| !index.contains_key(k.as_str())) {
                    return Err(schema(format!("{at}/table/{k}"), "row for an unknown element"));
                }
                let mut rows = Vec::with_capacity(elements.len());
                for name in elements {
                    let row = table
                        .get(name)
                        .ok_or_else(|| schema(format!("{at}/table"), format!("missing row for `{name}`")))?;
                    let row: Vec<usize> = row
                        .iter()
                        .enumerate()
                        .map(|(j, x)| {
                            index.get(x.as_str()).copied().ok_or_else(|| {
                                schema(format!("{at}/table/{name}/{j}"), format!("unknown element `{x}`"))
                            })
                        })
                        .collect::<Result<_>>()?;
                    rows.push(row);
                }
                FiniteGroup::from_table(elements.clone(), rows, opts.order_cap, None)
                    .map(VertexGroup::Finite)
                    .map_err(|e| schema(at, e))
            }
            GroupDoc::Cyclic { order, generator } => {
                if *order == 0 || *order > opts.order_cap {
                    return Err(schema(
                        format!("{at}/order"),
                        format!("order must lie in 1..={}", opts.order_cap),
                    ));
                }
                if generator.is_empty() || generator == "1" {
                    return Err(schema(
                        format!("{at}/generator"),
                        "generator needs a name other than `1`",
                    ));
                }
                Ok(VertexGroup::cyclic(*order, generator))
            }
            GroupDoc::Integer => Ok(VertexGroup::Integer),
            GroupDoc::Free { rank } => Ok(VertexGroup::free(*rank)),
        }
    }

    /// Cyclic groups built from the shorthand serialize back to it.
    pub fn from_group(g: &VertexGroup) -> GroupDoc {
        match g {
            VertexGroup::Finite(f) => {
                let n = f.order();
                if n >= 2 && *f == FiniteGroup::cyclic(n, f.name(1)) {
                    return GroupDoc::Cyclic {
                        order: n,
                        generator: f.name(1).to_owned(),
                    };
                }
                let elements = f.names().to_vec();
                let table = (0..n)
                    .map(|i| {
                        let row = (0..n).map(|j| f.name(f.mul(i, j)).to_owned()).collect();
                        (f.name(i).to_owned(), row)
                    })
                    .collect();
                GroupDoc::Finite { elements, table }
            }
            VertexGroup::Integer => GroupDoc::Integer,
            VertexGroup::Free(f) => GroupDoc::Free { rank: f.rank() },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDoc {
    pub name: String,
    pub group: GroupDoc,
}

/// One edge pair; `~name` refers to the reverse edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub name: String,
    pub from: String,
    pub to: String,
}

/// A graph of groups, optionally with subgroup generators as loops at the base.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GogDoc {
    pub schema_version: u32,
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<EdgeDoc>,
    pub base: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<Vec<Vec<String>>>,
}

impl GogDoc {
    pub fn parse(text: &str) -> Result<GogDoc> {
        from_json(text)
    }

    pub fn build(&self, opts: LoadOptions) -> Result<GraphOfGroups> {
        self.build_at("", opts)
    }

    fn build_at(&self, at: &str, opts: LoadOptions) -> Result<GraphOfGroups> {
        check_version(self.schema_version, at)?;
        let mut b = GraphOfGroups::builder();
        let mut names = BTreeMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            let p = format!("{at}/vertices/{i}");
            let g = v.group.build(&format!("{p}/group"), opts)?;
            if names.insert(v.name.as_str(), b.vertex(&v.name, g)).is_some() {
                return Err(schema(format!("{p}/name"), format!("duplicate vertex `{}`", v.name)));
            }
        }
        let lookup = |name: &str, p: String| {
            names
                .get(name)
                .copied()
                .ok_or_else(|| schema(p, format!("unknown vertex `{name}`")))
        };
        for (i, e) in self.edges.iter().enumerate() {
            let p = format!("{at}/edges/{i}");
            let from = lookup(&e.from, format!("{p}/from"))?;
            let to = lookup(&e.to, format!("{p}/to"))?;
            if e.name.is_empty() || e.name.starts_with('~') {
                return Err(schema(
                    format!("{p}/name"),
                    "edge names are non-empty and do not start with `~`",
                ));
            }
            b.edge(&e.name, from, to);
        }
        let base = lookup(&self.base, format!("{at}/base"))?;
        b.base(base);
        b.build().map_err(|e| schema(at, e))
    }

    pub fn from_gog(g: &GraphOfGroups) -> GogDoc {
        let graph = g.graph();
        GogDoc {
            schema_version: SCHEMA_VERSION,
            vertices: graph
                .vertices()
                .map(|v| VertexDoc {
                    name: g.vertex_name(v).to_owned(),
                    group: GroupDoc::from_group(g.group(v)),
                })
                .collect(),
            edges: graph
                .positive_edges()
                .map(|e| EdgeDoc {
                    name: g.edge_name(e),
                    from: g.vertex_name(graph.iota(e)).to_owned(),
                    to: g.vertex_name(graph.tau(e)).to_owned(),
                })
                .collect(),
            base: g.base().map_or_else(String::new, |b| g.vertex_name(b).to_owned()),
            subgroup: None,
        }
    }

    /// The inline subgroup generators, as loops at the base of `g`.
    pub fn subgroup_words(&self, g: &GraphOfGroups) -> Result<Vec<Word>> {
        let Some(ws) = &self.subgroup else {
            return Ok(Vec::new());
        };
        ws.iter()
            .enumerate()
            .map(|(i, toks)| parse_loop(g, g.base(), toks, &format!("/subgroup/{i}")))
            .collect()
    }
}

/// Parses a word at `start` and requires a loop.
pub fn parse_loop(g: &GraphOfGroups, start: Option<VertexId>, tokens: &[String], at: &str) -> Result<Word> {
    let w = g.parse_word(tokens, start).map_err(|e| schema(at, e))?;
    if let Some(s) = start {
        if w.start() != s || !w.is_loop() {
            return Err(schema(at, Error::NotALoop { expected: s }));
        }
    }
    Ok(w)
}

pub fn load_gog(text: &str, opts: LoadOptions) -> Result<GraphOfGroups> {
    GogDoc::parse(text)?.build(opts)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainVertexDoc {
    /// Name of the target vertex.
    pub over: String,
    /// Generators of the vertex subgroup.
    pub subgroup: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainEdgeDoc {
    /// Name of the target edge, `e` or `~e`.
    pub over: String,
    pub from: usize,
    pub to: usize,
    pub delta: String,
    pub delta_bar: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaDoc {
    pub vertex: usize,
    pub word: Vec<String>,
}

/// A morphism into an embedded target. Decorations are written in
/// `convention`; everything else is convention independent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub schema_version: u32,
    #[serde(default)]
    pub convention: CosetConvention,
    pub target: GogDoc,
    pub vertices: Vec<DomainVertexDoc>,
    pub edges: Vec<DomainEdgeDoc>,
    pub base: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lambda: Vec<LambdaDoc>,
}

impl MorphismDoc {
    pub fn parse(text: &str) -> Result<MorphismDoc> {
        from_json(text)
    }

    pub fn build(&self, opts: LoadOptions) -> Result<DecoratedMorphism> {
        self.build_at("", opts)
    }

    fn build_at(&self, at: &str, opts: LoadOptions) -> Result<DecoratedMorphism> {
        check_version(self.schema_version, at)?;
        let target = Arc::new(self.target.build_at(&format!("{at}/target"), opts)?);
        let mut m = DecoratedMorphism::new(Arc::clone(&target));
        for (i, v) in self.vertices.iter().enumerate() {
            let p = format!("{at}/vertices/{i}");
            let u = target
                .vertex_by_name(&v.over)
                .ok_or_else(|| schema(format!("{p}/over"), format!("unknown target vertex `{}`", v.over)))?;
            let group = target.group(u);
            let gens = v
                .subgroup
                .iter()
                .enumerate()
                .map(|(j, t)| {
                    group
                        .parse_element(t)
                        .map_err(|e| schema(format!("{p}/subgroup/{j}"), e))
                })
                .collect::<Result<Vec<_>>>()?;
            let s = Subgroup::generate(group, &gens).map_err(|e| schema(format!("{p}/subgroup"), e))?;
            m.add_vertex(u, s).map_err(|e| schema(&p, e))?;
        }
        let n = self.vertices.len();
        for (i, e) in self.edges.iter().enumerate() {
            let p = format!("{at}/edges/{i}");
            let f = target
                .edge_by_name(&e.over)
                .ok_or_else(|| schema(format!("{p}/over"), format!("unknown target edge `{}`", e.over)))?;
            for (field, v) in [("from", e.from), ("to", e.to)] {
                if v >= n {
                    return Err(schema(format!("{p}/{field}"), format!("no domain vertex {v}")));
                }
            }
            let tg = target.graph();
            let (ga, gb) = (target.group(tg.iota(f)), target.group(tg.tau(f)));
            let d = ga
                .parse_element(&e.delta)
                .map_err(|x| schema(format!("{p}/delta"), x))?;
            let db = gb
                .parse_element(&e.delta_bar)
                .map_err(|x| schema(format!("{p}/delta_bar"), x))?;
            let d = self.convention.to_internal(ga, &d);
            let db = self.convention.to_internal(gb, &db);
            m.add_edge(VertexId(e.from), VertexId(e.to), f, d, db)
                .map_err(|x| schema(&p, x))?;
        }
        if self.base >= n {
            return Err(schema(format!("{at}/base"), format!("no domain vertex {}", self.base)));
        }
        m.set_base(VertexId(self.base));
        for (i, l) in self.lambda.iter().enumerate() {
            let p = format!("{at}/lambda/{i}");
            if l.vertex >= n {
                return Err(schema(format!("{p}/vertex"), format!("no domain vertex {}", l.vertex)));
            }
            let v = VertexId(l.vertex);
            let w = parse_loop(&target, Some(m.phi_vertex(v)), &l.word, &format!("{p}/word"))?;
            m.set_lambda(v, w).map_err(|x| schema(&p, x))?;
        }
        Ok(m)
    }

    pub fn from_morphism(m: &DecoratedMorphism, convention: CosetConvention) -> MorphismDoc {
        let t = m.target();
        let g = m.graph();
        let vertices = g
            .vertices()
            .map(|v| {
                let group = m.vertex_group(v);
                DomainVertexDoc {
                    over: t.vertex_name(m.phi_vertex(v)).to_owned(),
                    subgroup: m
                        .subgroup(v)
                        .generators()
                        .iter()
                        .map(|x| group.format_element(x))
                        .collect(),
                }
            })
            .collect();
        let edges = g
            .positive_edges()
            .map(|e| {
                let ga = m.vertex_group(g.iota(e));
                let gb = m.vertex_group(g.tau(e));
                DomainEdgeDoc {
                    over: t.edge_name(m.phi_edge(e)),
                    from: g.iota(e).0,
                    to: g.tau(e).0,
                    delta: ga.format_element(&convention.from_internal(ga, m.delta(e))),
                    delta_bar: gb.format_element(&convention.from_internal(gb, m.delta(e.bar()))),
                }
            })
            .collect();
        let lambda = g
            .vertices()
            .filter(|&v| m.lambda[v.0].is_some())
            .map(|v| LambdaDoc {
                vertex: v.0,
                word: t.format_word(&m.lambda(v)),
            })
            .collect();
        MorphismDoc {
            schema_version: SCHEMA_VERSION,
            convention,
            target: GogDoc::from_gog(t),
            vertices,
            edges,
            base: m.base().map_or(0, |b| b.0),
            lambda,
        }
    }
}

pub fn load_morphism(text: &str, opts: LoadOptions) -> Result<DecoratedMorphism> {
    MorphismDoc::parse(text)?.build(opts)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CaseDoc {
    NotLoop { vertex: usize },
    LoopWithElement { element: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum WitnessDoc {
    Closed {
        element: String,
    },
    Stuck {
        consumed: usize,
        vertex: usize,
        edge: String,
        element: String,
    },
    OpenEnd {
        vertex: usize,
        element: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckDoc {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// A separation certificate. The cover embeds the target; words are loops at
/// the image of the cover's base.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub schema_version: u32,
    #[serde(default)]
    pub convention: CosetConvention,
    pub degree: usize,
    pub base: usize,
    pub subgroup_generators: Vec<Vec<String>>,
    pub excluded: Vec<String>,
    pub case: CaseDoc,
    pub witness: WitnessDoc,
    pub cover: MorphismDoc,
    #[serde(default)]
    pub transcript: Vec<CheckDoc>,
}

impl CertificateDoc {
    pub fn parse(text: &str) -> Result<CertificateDoc> {
        from_json(text)
    }

    pub fn build(&self, opts: LoadOptions) -> Result<SeparationCertificate> {
        check_version(self.schema_version, "")?;
        let cover = self.cover.build_at("/cover", opts)?;
        let n = cover.vertex_count();
        let t = Arc::clone(cover.target());
        let vertex = |v: usize, p: &str| {
            if v < n {
                Ok(VertexId(v))
            } else {
                Err(schema(p, format!("no cover vertex {v}")))
            }
        };
        let base = vertex(self.base, "/base")?;
        let b0 = Some(cover.phi_vertex(base));
        let subgroup_generators = self
            .subgroup_generators
            .iter()
            .enumerate()
            .map(|(i, w)| parse_loop(&t, b0, w, &format!("/subgroup_generators/{i}")))
            .collect::<Result<Vec<_>>>()?;
        let excluded = parse_loop(&t, b0, &self.excluded, "/excluded")?;
        let element_at = |v: VertexId, s: &str, p: &str| -> Result<Element> {
            cover.vertex_group(v).parse_element(s).map_err(|e| schema(p, e))
        };
        let case = match &self.case {
            CaseDoc::NotLoop { vertex: v } => PathCase::NotLoop(vertex(*v, "/case/vertex")?),
            CaseDoc::LoopWithElement { element } => {
                PathCase::LoopWithElement(element_at(base, element, "/case/element")?)
            }
        };
        let witness = match &self.witness {
            WitnessDoc::Closed { element } => LiftOutcome::Closed(element_at(base, element, "/witness/element")?),
            WitnessDoc::Stuck {
                consumed,
                vertex: v,
                edge,
                element,
            } => {
                let v = vertex(*v, "/witness/vertex")?;
                let f: EdgeId = t
                    .edge_by_name(edge)
                    .ok_or_else(|| schema("/witness/edge", format!("unknown target edge `{edge}`")))?;
                LiftOutcome::Stuck {
                    consumed: *consumed,
                    vertex: v,
                    edge: f,
                    element: element_at(v, element, "/witness/element")?,
                }
            }
            WitnessDoc::OpenEnd { vertex: v, element } => {
                let v = vertex(*v, "/witness/vertex")?;
                LiftOutcome::OpenEnd {
                    vertex: v,
                    element: element_at(v, element, "/witness/element")?,
                }
            }
        };
        Ok(SeparationCertificate {
            cover,
            degree: self.degree,
            base,
            subgroup_generators,
            excluded,
            case,
            witness,
            transcript: self
                .transcript
                .iter()
                .map(|c| Check {
                    name: c.name.clone(),
                    passed: c.passed,
                    detail: c.detail.clone(),
                })
                .collect(),
        })
    }

    pub fn from_certificate(c: &SeparationCertificate, convention: CosetConvention) -> CertificateDoc {
        let cover = &c.cover;
        let t = cover.target();
        let fmt = |v: VertexId, x: &Element| cover.vertex_group(v).format_element(x);
        CertificateDoc {
            schema_version: SCHEMA_VERSION,
            convention,
            degree: c.degree,
            base: c.base.0,
            subgroup_generators: c.subgroup_generators.iter().map(|w| t.format_word(w)).collect(),
            excluded: t.format_word(&c.excluded),
            case: match &c.case {
                PathCase::NotLoop(v) => CaseDoc::NotLoop { vertex: v.0 },
                PathCase::LoopWithElement(s) => CaseDoc::LoopWithElement {
                    element: fmt(c.base, s),
                },
            },
            witness: match &c.witness {
                LiftOutcome::Closed(s) => WitnessDoc::Closed {
                    element: fmt(c.base, s),
                },
                LiftOutcome::Stuck {
                    consumed,
                    vertex,
                    edge,
                    element,
                } => WitnessDoc::Stuck {
                    consumed: *consumed,
                    vertex: vertex.0,
                    edge: t.edge_name(*edge),
                    element: fmt(*vertex, element),
                },
                LiftOutcome::OpenEnd { vertex, element } => WitnessDoc::OpenEnd {
                    vertex: vertex.0,
                    element: fmt(*vertex, element),
                },
            },
            cover: MorphismDoc::from_morphism(cover, convention),
            transcript: c
                .transcript
                .iter()
                .map(|k| CheckDoc {
                    name: k.name.clone(),
                    passed: k.passed,
                    detail: k.detail.clone(),
                })
                .collect(),
        }
    }
}

pub fn load_certificate(text: &str, opts: LoadOptions) -> Result<SeparationCertificate> {
    CertificateDoc::parse(text)?.build(opts)
}

/// Parses a JSON array of word tokens such as `["a","e","b","~e","1"]`.
pub fn parse_tokens(text: &str) -> Result<Vec<String>> {
    from_json(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::separator::{separate_element, SeparateOptions};

    fn round_trip_gog(g: &GraphOfGroups) {
        let doc = GogDoc::from_gog(g);
        let text = to_json(&doc);
        let again = GogDoc::parse(&text).unwrap();
        assert_eq!(again, doc);
        assert_eq!(&again.build(LoadOptions::default()).unwrap(), g);
    }

    #[test]
    fn catalog_round_trips() {
        for g in [
            catalog::c2_c3(),
            catalog::d_inf(),
            catalog::z_z(),
            catalog::c2_c3_c2(),
            catalog::f2_c2(),
            catalog::z_c3(),
            catalog::c2_loop(),
        ] {
            round_trip_gog(&g);
        }
    }

    #[test]
    fn explicit_table_is_accepted() {
        let text = r#"{
          "schema_version": 1,
          "vertices": [
            {"name": "u", "group": {"kind": "finite", "elements": ["1", "a"],
              "table": {"1": ["1", "a"], "a": ["a", "1"]}}},
            {"name": "w", "group": {"kind": "cyclic", "order": 3, "generator": "b"}}
          ],
          "edges": [{"name": "e", "from": "u", "to": "w"}],
          "base": "u"
        }"#;
        let g = load_gog(text, LoadOptions::default()).unwrap();
        assert_eq!(g, catalog::c2_c3());
    }

    #[test]
    fn structural_errors_carry_pointers() {
        let text = r#"{"schema_version": 1, "vertices": [{"name": "u", "group": {"kind": "cyclic", "order": "two"}}], "edges": [], "base": "u"}"#;
        match GogDoc::parse(text).unwrap_err() {
            // Tagged groups are buffered, so the pointer stops at the group.
            Error::Schema { pointer, .. } => assert_eq!(pointer, "/vertices/0/group"),
            e => panic!("unexpected {e}"),
        }
        let text =
            r#"{"schema_version": 1, "vertices": [], "edges": [{"name": "e", "from": 0, "to": "u"}], "base": "u"}"#;
        match GogDoc::parse(text).unwrap_err() {
            Error::Schema { pointer, .. } => assert_eq!(pointer, "/edges/0/from"),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn semantic_errors_carry_pointers() {
        let text = r#"{"schema_version": 1, "vertices": [{"name": "u", "group": {"kind": "integer"}}],
          "edges": [{"name": "e", "from": "u", "to": "nowhere"}], "base": "u"}"#;
        match load_gog(text, LoadOptions::default()).unwrap_err() {
            Error::Schema { pointer, .. } => assert_eq!(pointer, "/edges/0/to"),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn order_cap_is_enforced() {
        let text = r#"{"schema_version": 1, "vertices": [{"name": "u", "group": {"kind": "cyclic", "order": 65, "generator": "a"}}], "edges": [], "base": "u"}"#;
        assert!(load_gog(text, LoadOptions::default()).is_err());
        assert!(load_gog(text, LoadOptions { order_cap: 65 }).is_ok());
    }

    #[test]
    fn morphism_round_trips_in_both_conventions() {
        let m = crate::morphism::tests::ab_circle();
        for conv in [CosetConvention::Right, CosetConvention::PaperLeft] {
            let doc = MorphismDoc::from_morphism(&m, conv);
            let text = to_json(&doc);
            let back = load_morphism(&text, LoadOptions::default()).unwrap();
            assert_eq!(back, m);
            assert_eq!(MorphismDoc::parse(&text).unwrap(), doc);
        }
        let left = MorphismDoc::from_morphism(&m, CosetConvention::PaperLeft);
        assert_eq!(left.edges[1].delta, "b2");
    }

    #[test]
    fn certificate_round_trips() {
        let g = Arc::new(catalog::c2_c3());
        let u = g.base().unwrap();
        let ab = g.parse_word(&["a", "e", "b", "~e", "1"], None).unwrap();
        let a = g.parse_word(&["a"], None).unwrap();
        let c = separate_element(&g, u, &[ab], &a, SeparateOptions::default()).unwrap();
        for conv in [CosetConvention::Right, CosetConvention::PaperLeft] {
            let doc = CertificateDoc::from_certificate(&c, conv);
            let text = to_json(&doc);
            assert_eq!(load_certificate(&text, LoadOptions::default()).unwrap(), c);
            assert_eq!(CertificateDoc::parse(&text).unwrap(), doc);
        }
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"schema_version": 1, "vertices": [], "edges": [], "base": "u", "extra": 1}"#;
        assert!(matches!(GogDoc::parse(text), Err(Error::Schema { .. })));
    }

    #[test]
    fn inline_subgroup_words() {
        let mut doc = GogDoc::from_gog(&catalog::c2_c3());
        doc.subgroup = Some(vec![vec!["a".into(), "e".into(), "b".into(), "~e".into(), "1".into()]]);
        let g = doc.build(LoadOptions::default()).unwrap();
        assert_eq!(doc.subgroup_words(&g).unwrap().len(), 1);
        doc.subgroup = Some(vec![vec!["1".into(), "e".into(), "b".into()]]);
        assert!(doc.subgroup_words(&g).is_err());
    }
}
