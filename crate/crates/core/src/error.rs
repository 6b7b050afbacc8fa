use thiserror::Error;

/// Errors raised by polygon construction and geodesic queries.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeoError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {0} repeats its predecessor (zero-length edge)")]
    DegenerateEdge(usize),
    #[error("edges {0} and {1} intersect")]
    SelfIntersecting(usize, usize),
    #[error("polygon has zero area")]
    ZeroArea,
    #[error("non-finite coordinate at vertex {0}")]
    NonFinite(usize),
    #[error("point ({0}, {1}) lies outside the polygon")]
    PointOutside(f64, f64),
    #[error("radius must be non-negative, got {0}")]
    NegativeRadius(f64),
    #[error("bisector of coincident points is undefined")]
    CoincidentPoints,
    #[error("partition endpoints coincide")]
    DegeneratePartition,
    #[error("decision context was built for pair ({0}, {1})")]
    ContextMismatch(usize, usize),
    #[error("edge index {0} out of range")]
    BadEdge(usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, GeoError>;
