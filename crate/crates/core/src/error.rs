use thiserror::Error;

/// Errors raised while building or analysing complexes.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("simplex has no vertices")]
    EmptySimplex,
    #[error("simplex {0:?} repeats a vertex")]
    RepeatedVertex(Vec<usize>),
    #[error("vertex {0} has no valuation entry")]
    UnknownVertex(usize),
    #[error("vertices {0} and {1} share a valuation; f must be injective")]
    DuplicateValue(usize, usize),
    #[error("values of different nesting depth cannot be compared")]
    IncomparableDepth,
    #[error("value is not totally ordered (NaN?)")]
    UnorderedValue,
    #[error("simplex {0:?} is not in the complex")]
    NotInComplex(Vec<usize>),
    #[error("cell {0} is out of range")]
    UnknownCell(usize),
    #[error("node {0} is not in the graph")]
    UnknownNode(usize),
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("edge {{{0}, {1}}} given twice")]
    DuplicateEdge(usize, usize),
    #[error("edges {0} and {1} share a vertex and have equal weight")]
    AdjacentTie(usize, usize),
    #[error("pair ({0}, {1}) is not a facet relation")]
    NotAFacet(usize, usize),
    #[error("cell {0} occurs in more than one pair")]
    CellPairedTwice(usize),
    #[error("search budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("closed V-path through cell {0}")]
    CycleDetected(usize),
    #[error("complex is not discrete smooth ({0} witnesses)")]
    NotSmooth(usize),
    #[error("invalid poset with inconsistent pairs: {0}")]
    InvalidPip(String),
    #[error("greedy matching does not certify collapsibility: {0}")]
    NotCollapsible(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
