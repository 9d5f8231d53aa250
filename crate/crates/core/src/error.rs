use thiserror::Error;

/// Errors shared across the coordinate, metric, and path modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("geometric point needs Im tau > 0, got {0}")]
    NonPositiveImag(f64),

    #[error("boundary parameter tau must avoid the integers, got {0}")]
    IntegerTau(f64),

    #[error("chart parameter beta must be positive, got {0}")]
    NonPositiveBeta(f64),

    #[error("algebraic point needs beta >= 1, got {0} (use a chart conversion for beta < 1)")]
    BetaBelowWall(f64),

    #[error("point belongs to chamber {have}, not chamber {want}")]
    ChamberMismatch { have: i64, want: i64 },

    #[error("empty object range: n_min = {n_min} > n_max = {n_max}")]
    EmptyRange { n_min: i64, n_max: i64 },

    #[error("sup-inf center needs sup >= 0 >= inf, got sup = {sup}, inf = {inf}")]
    SupInfOrder { sup: f64, inf: f64 },

    #[error("operation needs an interior (upper half-plane) point, got one on the real axis")]
    BoundaryPoint,

    #[error("operation does not accept a boundary stability point")]
    BoundaryStabPoint,

    #[error("the two points must be distinct")]
    CoincidentPoints,

    #[error("Moebius map must have positive determinant, got {0}")]
    NonPositiveDet(f64),

    #[error("empty search range: {0}")]
    EmptySearch(String),

    #[error("polyline needs at least two distinct consecutive points")]
    DegeneratePolyline,

    #[error("polyline mixes point spaces or pairs a space with an incompatible metric")]
    MixedSpaces,

    #[error("path is not additive within {tol}: worst defect {defect}")]
    NotGeodesic { defect: f64, tol: f64 },

    #[error("cumulative arclength is not strictly increasing at segment {segment}")]
    NonIncreasingLength { segment: usize },

    #[error("parameter out of range: {0}")]
    BadParameter(String),

    #[error("composite path needs at least one non-geometric endpoint")]
    NoAlgebraicEndpoint,
}

pub type Result<T> = std::result::Result<T, Error>;
