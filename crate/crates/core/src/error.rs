use thiserror::Error;

use crate::Vertex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range (n = {n})")]
    InvalidVertex { vertex: Vertex, n: usize },
    #[error("malformed edge {edge:?}: {reason}")]
    InvalidEdge { edge: Vec<Vertex>, reason: String },
    #[error("arity {d} outside 1..{k}")]
    BadArity { d: usize, k: usize },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("no connectivity witness between {e:?} and {f:?}")]
    WitnessNotFound { e: Vec<Vertex>, f: Vec<Vertex> },
    #[error("hypergraph is not tightly connected")]
    NotTightlyConnected,
    #[error("part of base vertex {base_vertex} has {available} usable vertices, {needed} needed")]
    PartTooSmall { base_vertex: usize, needed: usize, available: usize },

    #[error("complex has no facets")]
    EmptyComplex,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },
    #[error("operation needs a {expected}-dimensional complex, found dimension {found}")]
    WrongDim { expected: usize, found: usize },
    #[error("{0:?} is not a facet")]
    MissingFacet(Vec<Vertex>),
    #[error("vertex sets intersect in {found:?}, expected exactly {expected:?}")]
    BadOverlap { expected: Vec<Vertex>, found: Vec<Vertex> },
    #[error("family facet for path edge {0} is missing")]
    MissingFamilyFacet(usize),

    #[error("Hall condition fails: {violator_size} pairs see only {neighbourhood} edges")]
    HallFailure { violator_size: usize, neighbourhood: usize },
    #[error("odd leftover and no edge outside the pair assignment to absorb it")]
    ParityFixImpossible,
    #[error("auxiliary graph on {vertices} leftover vertices has no perfect matching")]
    NoPerfectMatching { vertices: usize },
    #[error("no edge through the singleton part can be rerouted")]
    SingletonUnresolvable,
    #[error("reduced base graph fails the degree condition: {0}")]
    ReducedDegreeFailure(String),

    #[error("enumeration budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),

    #[error("link {index}: {source}")]
    Link { index: usize, source: Box<Error> },
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }

    pub(crate) fn in_link(self, index: usize) -> Self {
        Error::Link { index, source: Box::new(self) }
    }
}
