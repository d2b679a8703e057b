//! Separating an element from a finitely generated subgroup by a finite-index
//! subgroup, with a certificate that can be checked independently.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::completion::{complete_to_cover, TieBreak};
use crate::enlargement::{enlarge, exclusion_sets};
use crate::error::{Error, Result};
use crate::fold::{cover_index, fold_generators, trim_core};
use crate::gog::GraphOfGroups;
use crate::graph::VertexId;
use crate::group::Element;
use crate::morphism::{DecoratedMorphism, LiftOutcome};
use crate::verifier::coset::{coset_enumerate, CosetResult, Presentation};
use crate::word::Word;

/// How the excluded element escapes the immersion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathCase {
    /// The lift of the element does not close up; it ends at this vertex.
    NotLoop(VertexId),
    /// The lift closes up at the base with this terminal element, which is not
    /// in the base subgroup.
    LoopWithElement(Element),
}

/// Makes sure the lift of `g` exists in the immersion: if lifting gets stuck,
/// the rest of `g` is attached as a path of new vertices with trivial
/// subgroups. The result is still an immersion.
///
/// Each new edge carries the current element on its initial side and `1` on
/// its terminal side, so the next current element is the next letter of `g`.
pub fn attach_separating_path(m: &DecoratedMorphism, u0: VertexId, g: &Word) -> Result<(DecoratedMorphism, PathCase)> {
    let target = m.target();
    match m.lift_loop(g, u0)? {
        LiftOutcome::Closed(s) => {
            if m.subgroup(u0).contains(&s) {
                Err(Error::AlreadyMember)
            } else {
                Ok((m.clone(), PathCase::LoopWithElement(s)))
            }
        }
        LiftOutcome::OpenEnd { vertex, .. } => Ok((m.clone(), PathCase::NotLoop(vertex))),
        LiftOutcome::Stuck {
            consumed,
            vertex,
            element,
            ..
        } => {
            let g = target.reduce(g);
            let mut out = m.clone();
            let mut cur = vertex;
            let mut c = element;
            for (i, &f) in g.edges().iter().enumerate().skip(consumed) {
                let to = target.graph().tau(f);
                let y = out.add_trivial_vertex(to)?;
                out.add_edge(cur, y, f, c, target.group(to).identity())?;
                cur = y;
                c = g.elements()[i + 1].clone();
            }
            Ok((out, PathCase::NotLoop(cur)))
        }
    }
}

/// One named check in a verification transcript.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// A finite-degree cover whose subgroup contains every generator and not the
/// excluded element.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparationCertificate {
    pub cover: DecoratedMorphism,
    pub degree: usize,
    pub base: VertexId,
    pub subgroup_generators: Vec<Word>,
    pub excluded: Word,
    pub case: PathCase,
    /// Lift of the excluded element in the cover.
    pub witness: LiftOutcome,
    pub transcript: Vec<Check>,
}

/// Options for [`separate_element`].
#[derive(Debug, Clone, Copy, Default)]
pub struct SeparateOptions {
    pub tie: TieBreak,
}

/// Intermediate stages, kept for inspection and tests.
#[derive(Debug, Clone)]
pub struct SeparationTrace {
    pub folded: DecoratedMorphism,
    pub with_path: DecoratedMorphism,
    pub enlarged: DecoratedMorphism,
}

/// Folds the generators, attaches the path of `g` if needed, enlarges the
/// vertex subgroups away from the exclusion sets (adding the terminal element
/// in the closed-loop case) and completes to a cover.
pub fn separate_element(
    target: &Arc<GraphOfGroups>,
    v0: VertexId,
    gens: &[Word],
    g: &Word,
    opts: SeparateOptions,
) -> Result<SeparationCertificate> {
    separate_element_traced(target, v0, gens, g, opts).map(|(c, _)| c)
}

pub fn separate_element_traced(
    target: &Arc<GraphOfGroups>,
    v0: VertexId,
    gens: &[Word],
    g: &Word,
    opts: SeparateOptions,
) -> Result<(SeparationCertificate, SeparationTrace)> {
    target.validate(g)?;
    if g.start() != v0 || !g.is_loop() {
        return Err(Error::NotALoop { expected: v0 });
    }
    let folded = fold_generators(target, v0, gens)?;
    let u0 = folded.base_or_err()?;
    let folded = trim_core(&folded, u0, &[]);
    let u0 = folded.base_or_err()?;
    if folded.subgroup_member(u0, g)? {
        return Err(Error::AlreadyMember);
    }
    let (with_path, case) = attach_separating_path(&folded, u0, g)?;
    let mut extra = BTreeMap::new();
    if let PathCase::LoopWithElement(s) = &case {
        extra.insert(u0, vec![s.clone()]);
    }
    let xs = exclusion_sets(&with_path, &extra)?;
    let enlarged = enlarge(&with_path, &xs)?;
    let (cover, degree) = complete_to_cover(&enlarged, opts.tie)?;
    let witness = cover.lift_loop(g, u0)?;
    let mut cert = SeparationCertificate {
        cover,
        degree,
        base: u0,
        subgroup_generators: gens.iter().map(|w| target.reduce(w)).collect(),
        excluded: target.reduce(g),
        case,
        witness,
        transcript: Vec::new(),
    };
    cert.transcript = verify_certificate(&cert).checks;
    Ok((
        cert,
        SeparationTrace {
            folded,
            with_path,
            enlarged,
        },
    ))
}

fn describe_lift(cover: &DecoratedMorphism, base: VertexId, l: &LiftOutcome) -> String {
    let fmt = |v: VertexId, x: &Element| cover.vertex_group(v).format_element(x);
    match l {
        LiftOutcome::Closed(s) => format!("closes at {base} with terminal element {}", fmt(base, s)),
        LiftOutcome::Stuck {
            consumed,
            vertex,
            edge,
            element,
        } => format!(
            "stuck at {vertex} after {consumed} edge(s): no lift of {} for {}",
            cover.target().edge_name(*edge),
            fmt(*vertex, element)
        ),
        LiftOutcome::OpenEnd { vertex, element } => {
            format!("ends at {vertex} with element {}", fmt(*vertex, element))
        }
    }
}

/// Outcome of [`verify_certificate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub checks: Vec<Check>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Options for [`verify_certificate_with`].
#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    /// When set and every vertex group is finite, also run coset enumeration
    /// on the cover's subgroup and compare its index with the degree.
    pub coset_cap: Option<usize>,
}

pub fn verify_certificate(c: &SeparationCertificate) -> Verification {
    verify_certificate_with(c, VerifyOptions::default())
}

/// Recomputes everything the certificate claims from the cover alone.
pub fn verify_certificate_with(c: &SeparationCertificate, opts: VerifyOptions) -> Verification {
    let mut checks = Vec::new();
    let cover = &c.cover;
    let target = cover.target();

    let lambda = cover.require_identity_lambda();
    checks.push(Check::new("identity-lambda", lambda.is_ok(), describe(&lambda)));

    let base_ok = cover.graph().contains_vertex(c.base) && cover.base() == Some(c.base);
    checks.push(Check::new("base", base_ok, format!("{}", c.base)));
    if !base_ok {
        return Verification { checks };
    }

    let cover_check = cover.check_cover();
    let detail = match &cover_check {
        Ok(()) => "every local map is bijective".to_owned(),
        Err(v) => v.to_string(),
    };
    checks.push(Check::new("cover", cover_check.is_ok(), detail));

    let degree = cover_index(cover);
    let degree_ok = degree.as_ref().is_ok_and(|&d| d == c.degree);
    checks.push(Check::new(
        "degree",
        degree_ok,
        match &degree {
            Ok(d) => format!("computed {d}, claimed {}", c.degree),
            Err(e) => e.to_string(),
        },
    ));

    for (i, g) in c.subgroup_generators.iter().enumerate() {
        let r = cover.subgroup_member(c.base, g);
        checks.push(Check::new(
            format!("generator-{i}-member"),
            matches!(r, Ok(true)),
            format!("{} -> {}", target.show_word(g), describe_bool(&r)),
        ));
    }

    let r = cover.subgroup_member(c.base, &c.excluded);
    checks.push(Check::new(
        "excluded-non-member",
        matches!(r, Ok(false)),
        format!("{} -> {}", target.show_word(&c.excluded), describe_bool(&r)),
    ));

    let lift = cover.lift_loop(&c.excluded, c.base);
    let witness_ok = lift.as_ref().is_ok_and(|l| *l == c.witness);
    checks.push(Check::new(
        "witness",
        witness_ok,
        match &lift {
            Ok(l) => describe_lift(cover, c.base, l),
            Err(e) => e.to_string(),
        },
    ));

    if let (Some(cap), true) = (opts.coset_cap, target.is_finite_kind()) {
        let gens = cover.subgroup_generators(c.base);
        let check = match Presentation::from_gog(target, cover.phi_vertex(c.base)) {
            Ok(p) => {
                let words: Vec<Vec<i32>> = gens.iter().map(|w| p.translate(w)).collect();
                match coset_enumerate(&p, &words, cap) {
                    CosetResult::Closed(t) => Check::new(
                        "coset-enumeration",
                        t.index() == c.degree,
                        format!("{} cosets", t.index()),
                    ),
                    CosetResult::DidNotClose { bound } => Check::new(
                        "coset-enumeration",
                        false,
                        format!("did not close within {bound} cosets"),
                    ),
                }
            }
            Err(e) => Check::new("coset-enumeration", false, e.to_string()),
        };
        checks.push(check);
    }
    Verification { checks }
}

fn describe(r: &Result<()>) -> String {
    match r {
        Ok(()) => "ok".to_owned(),
        Err(e) => e.to_string(),
    }
}

fn describe_bool(r: &Result<bool>) -> String {
    match r {
        Ok(b) => b.to_string(),
        Err(e) => e.to_string(),
    }
}
