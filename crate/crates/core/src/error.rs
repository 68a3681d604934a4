use thiserror::Error;

/// Errors raised by the constructions in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("relation forces a cycle through `{0}` and `{1}`")]
    CycleDetected(String, String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("invalid valuation: {0}")]
    InvalidValuation(String),
    #[error("truncation exceeded: {0}")]
    TruncationExceeded(String),
    #[error("not a simplicial subset: {0}")]
    NotASubobject(String),
    #[error("diagram is not monotone: {0}")]
    NonMonotoneDiagram(String),
    #[error("axiom {axiom} violated: {witness}")]
    AxiomViolation { axiom: String, witness: String },
    #[error("not a chain of splittings: {0}")]
    NotAChain(String),
    #[error("map is not monotone: {0}")]
    NotMonotone(String),
    #[error("assertion failed: {0}")]
    AssertionFailure(String),
    #[error("homology not trusted: {0}")]
    Untrusted(String),
    #[error("simplicial identity violated: {0}")]
    SimplicialIdentity(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
