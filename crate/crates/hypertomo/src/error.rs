//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the documented domain of an operation.
    #[error("input domain error: {0}")]
    InputDomain(String),

    /// A body specification has a parameter outside its documented range.
    #[error("construction error: {0}")]
    Construction(String),

    /// The perturbation amplitude destroys the body (defining equation has
    /// no positive solution in some direction).
    #[error("epsilon too large: {0}")]
    EpsilonTooLarge(String),

    /// A hyperbolic-volume operation met a radial value >= 1.
    #[error("body not contained in the open unit ball: {0}")]
    BodyNotContained(String),

    /// Degenerate geometric input (coincident points, non-strict axis order).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("invalid curvature bound: {0}")]
    InvalidCurvature(String),

    /// Homogeneity degree incompatible with the requested transform method.
    #[error("method mismatch: {0}")]
    MethodMismatch(String),

    /// A result is smaller than the numerical error attached to it.
    #[error("indeterminate (below error estimate): {0}")]
    Indeterminate(String),

    /// An extrapolation ladder or iteration failed to converge.
    #[error("numerical instability: {0}")]
    NumericalInstability(String),

    /// A seed body was rejected (its scan did not certify negativity).
    #[error("seed rejected: {0}")]
    SeedRejected(String),

    /// A precondition of a constructive operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A constructive pipeline ran out of options.
    #[error("construction failed: {0}")]
    ConstructionFailed(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
