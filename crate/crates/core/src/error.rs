use thiserror::Error;

/// Errors produced by the geometric and algebraic operations of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("points are collinear")]
    CollinearPoints,
    #[error("two or more points coincide")]
    DuplicatePoints,
    #[error("distance ratio {0} must lie strictly between 0 and 1")]
    DegenerateRatio(f64),
    #[error("foci coincide")]
    CoincidentFoci,
    #[error("point is not on the circle")]
    PointNotOnCircle,
    #[error("lines are parallel")]
    ParallelLines,
    #[error("triangle is degenerate")]
    DegenerateTriangle,
    #[error("input {0} is a pole of the map")]
    PoleInput(String),
    #[error("the three cevians are medians and meet at the centroid (q = 1/2)")]
    MedianDegeneracy,
    #[error("every branch of the formula has a vanishing denominator")]
    AllBranchesDegenerate,
    #[error("triangles are not equisectionally equivalent")]
    NotEquivalent,
    #[error("every branch lands on a pole of the tangent")]
    AllBranchesPole,
    #[error("side lengths violate the triangle inequality")]
    TriangleInequalityViolated,
    #[error("reference point lies on the base line")]
    CollinearReference,
    #[error("triangle has no equisectionally equivalent right triangle")]
    NoRightPartner,
    #[error("division by zero")]
    DivisionByZero,
    #[error("value outside the domain: {0}")]
    DomainError(String),
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("construction replay diverged at step {step}: {detail}")]
    ReplayMismatch { step: usize, detail: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
