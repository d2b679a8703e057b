//! Graphs of groups with finite, infinite cyclic or free vertex groups and
//! trivial edge groups: folding subgroups into immersions, completing them to
//! finite covers, and separating elements from finitely generated subgroups.

pub mod catalog;
pub mod completion;
pub mod dot;
pub mod enlargement;
pub mod error;
pub mod fold;
pub mod fuzz;
pub mod gog;
pub mod graph;
pub mod group;
pub mod morphism;
pub mod schema;
pub mod separator;
pub mod verifier;
pub mod word;

pub use completion::{complete_to_cover, restriction_check, TieBreak};
pub use enlargement::{enlarge, exclusion_sets, ExclusionSets};
pub use error::{Error, Result};
pub use fold::{cover_index, fold, fold_generators, kurosh_rank, trim_core, wedge, KuroshRank};
pub use gog::{GraphOfGroups, GraphOfGroupsBuilder};
pub use graph::{EdgeId, Graph, VertexId};
pub use group::{Element, GroupKind, Index, Subgroup, VertexGroup};
pub use morphism::{CosetConvention, CoverViolation, DecoratedMorphism, ImmersionViolation, LiftOutcome};
pub use schema::{
    load_certificate, load_gog, load_morphism, CertificateDoc, GogDoc, LoadOptions, MorphismDoc, SCHEMA_VERSION,
};
pub use separator::{
    attach_separating_path, separate_element, separate_element_traced, verify_certificate, verify_certificate_with,
    Check, PathCase, SeparateOptions, SeparationCertificate, SeparationTrace, Verification, VerifyOptions,
};
pub use word::Word;
