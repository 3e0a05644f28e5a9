use thiserror::Error;

/// A parse failure in a GEM v1 or HDG v1 document, tagged with the 1-based
/// line it was detected on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error("missing header `{0}`")]
    MissingHeader(&'static str),
    #[error("vertex {vertex} out of range 1..={max}")]
    VertexOutOfRange { vertex: usize, max: usize },
    #[error("colour {0} repeated")]
    ColourRepeated(u8),
    #[error("missing colour {0}")]
    MissingColour(u8),
    #[error("fixed point at vertex {0}")]
    FixedPoint(usize),
    #[error("non-involution pairing: vertex {0} paired twice")]
    NonInvolution(usize),
    #[error("incomplete matching: vertex {0} unpaired")]
    Unpaired(usize),
    #[error("vertex count {0} is not a positive even integer")]
    BadVertexCount(usize),
    #[error("{0}")]
    Inconsistent(String),
}

impl ParseError {
    pub(crate) fn new(line: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, kind }
    }

    pub(crate) fn malformed(line: usize, what: impl Into<String>) -> Self {
        ParseError::new(line, ParseErrorKind::Malformed(what.into()))
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid gem: {0}")]
    InvalidGem(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("gem is not contracted")]
    NotContracted,
    #[error("gem is not a manifold gem")]
    NotManifold,
    #[error("colour set must have {expected} colours, got {got}")]
    ColourSetSize { expected: &'static str, got: usize },
    #[error("{what} budget exceeded (cap {cap})")]
    BudgetExceeded { what: &'static str, cap: u64 },
    #[error("census order {0} is above the cap of 12 vertices or odd")]
    CensusOrder(usize),
    #[error("no catalogue entry matches the selection")]
    EmptySelection,
    #[error("system is not reduced")]
    NotReduced,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
