use thiserror::Error;

/// Errors surfaced by the numeric pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("root solver failed to converge on polynomial of degree {degree}: {detail}")]
    NonConvergence { degree: usize, detail: String },
    #[error("map does not attain the requested value at the given point (got {got}, wanted {wanted})")]
    ValueMismatch { got: String, wanted: String },
    #[error("map is constant; ramification analysis requires a nonconstant map")]
    ConstantMap,
    #[error("degenerate data: {0}")]
    DegenerateData(String),
    #[error("data is only defined on the universal cover; immersion refused")]
    NotWellDefined,
    #[error("evaluation at a singularity of the data (z = {0})")]
    EvaluationAtSingularity(String),
    #[error("no valid contour radius around {0}: another singular point is too close")]
    ContourTooClose(String),
    #[error("path passes within guard distance of a singularity (z = {0})")]
    PathHitsSingularity(String),
    #[error("integration tolerance not met: {0}")]
    ToleranceNotMet(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
