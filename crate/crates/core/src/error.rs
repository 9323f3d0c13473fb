use thiserror::Error;

/// Errors raised by construction, simulation and witness routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("points {0} and {1} have identical coordinates")]
    DuplicatePoint(usize, usize),

    #[error("points {0:?} are cocircular; enable the id tie-break to resolve")]
    Cocircular([usize; 4]),

    #[error("points {0:?} are collinear and do not define a circle")]
    DegenerateTriangle([usize; 3]),

    #[error("points {0} and {1} are coincident")]
    CoincidentPoints(usize, usize),

    #[error("k = {0} is not supported: the degree and stretch guarantees require k >= 14")]
    InvalidK(usize),

    #[error(
        "point ids must form the contiguous range 0..{n}; position {position} holds id {found}"
    )]
    InvalidIds {
        n: usize,
        position: usize,
        found: usize,
    },

    #[error("point {0} has a non-finite coordinate")]
    NonFinite(usize),

    #[error("at least {need} points are required, got {got}")]
    TooFewPoints { need: usize, got: usize },

    #[error("unknown point id {0}")]
    UnknownPoint(usize),

    #[error("graphs are defined over different vertex sets")]
    VertexSetMismatch,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(
        "no intermediate point found between {0} and {1}; the graph is not Delaunay-consistent"
    )]
    NoIntermediatePoint(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
