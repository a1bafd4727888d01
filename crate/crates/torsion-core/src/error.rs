//! Error type shared by every layer of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum TorsionError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("root bracketing failed for {family} near index {index}: {detail}")]
    Bracketing {
        family: String,
        index: usize,
        detail: String,
    },

    #[error("series or continued fraction failed to converge: {0}")]
    NoConvergence(String),

    #[error("integer Bessel order {0} in a negative-order/Y context (logarithmic case excluded)")]
    IntegerOrder(f64),

    #[error("argument {0} lies on a pole of the zeta function")]
    PoleArgument(f64),

    #[error("analytic continuation unavailable: {0}")]
    ContinuationUnavailable(String),

    #[error("section schema violation: {0}")]
    Schema(String),

    #[error("duality violation in section data: {0}")]
    Duality(String),

    #[error("eigenvalues not strictly ascending and positive: {0}")]
    NonAscending(String),

    #[error("missing heat coefficients for degree {0}")]
    MissingHeatCoeffs(usize),

    #[error("section torsion unavailable: {0}")]
    MissingSectionTorsion(String),

    #[error("middle-degree harmonic rank {0} is odd; ideal boundary conditions need an even split")]
    OddMiddleRank(usize),

    #[error("exact finite part requested but the residue {0} is nonzero")]
    NonzeroResidue(String),

    #[error("invalid geometry: {0}")]
    Geometry(String),

    #[error("need at least {0} sample points, got {1}")]
    InsufficientPoints(usize, usize),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, TorsionError>;
