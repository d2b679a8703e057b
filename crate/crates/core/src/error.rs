use thiserror::Error;

use crate::graph::{EdgeId, VertexId};
use crate::morphism::ImmersionViolation;

/// Errors raised by the group, graph and morphism machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge chain broken at position {position}: edge does not start where the previous one ends")]
    EdgeChainBroken { position: usize },

    #[error("element at position {position} is not in the vertex group at {vertex}")]
    ElementOutOfGroup { position: usize, vertex: VertexId },

    #[error("element does not belong to this group")]
    ForeignElement,

    #[error("cannot compose: first word ends at {end}, second starts at {start}")]
    Composability { end: VertexId, start: VertexId },

    #[error("word is not a loop at {expected}")]
    NotALoop { expected: VertexId },

    #[error("subgroup has infinite index")]
    InfiniteIndex,

    #[error("coset is not represented in the core graph")]
    UntracedCoset,

    #[error("excluded element {0} already lies in the subgroup")]
    NotSeparated(String),

    #[error("target edge {edge} does not start at the image of domain vertex {vertex}")]
    EndpointMismatch { vertex: VertexId, edge: EdgeId },

    #[error("morphism is not an immersion: {0}")]
    NotAnImmersion(ImmersionViolation),

    #[error("morphism is not a cover: {0}")]
    NotACover(String),

    #[error("domain vertex {0} carries an infinite-index subgroup")]
    InfiniteIndexVertex(VertexId),

    #[error("element already lies in the subgroup")]
    AlreadyMember,

    #[error("domain vertex {0} has a non-identity lambda; only identity lambdas are supported")]
    NonTrivialLambda(VertexId),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("invalid graph of groups: {0}")]
    InvalidGraph(String),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("enumeration needs finite vertex groups or an element bound")]
    UnboundedEnumeration,

    #[error("schema violation at `{pointer}`: {message}")]
    Schema { pointer: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            reason: reason.into(),
        }
    }
}
