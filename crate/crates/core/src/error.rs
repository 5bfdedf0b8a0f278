use alloc::string::String;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension {0} outside supported range 2..=8")]
    DimensionOutOfRange(usize),
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("entries must be finite")]
    NonFiniteEntry,
    #[error("field mismatch")]
    FieldMismatch,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("cannot projectivize the zero vector")]
    ZeroVector,
    #[error("matrix is singular (threshold {tol})")]
    SingularMatrix { tol: f64 },
    #[error("point lies outside chart {chart}: |coordinate| = {modulus}")]
    OutsideChart { chart: usize, modulus: f64 },
    #[error("chart index {0} out of range for dimension {1}")]
    ChartIndexOutOfRange(usize, usize),
    #[error("incidence violated: residual {residual} exceeds {allowed}")]
    IncidenceViolated { residual: f64, allowed: f64 },
    #[error("lift is not unique at the origin (|x| = {norm} below cutoff)")]
    LiftAtOrigin { norm: f64 },
    #[error("invalid map specification: {0}")]
    InvalidMapSpec(String),
    #[error("steps must be strictly decreasing and positive")]
    BadStepSchedule,
    #[error("image leaves chart {chart} at step {step}")]
    LeftChart { chart: usize, step: f64 },
    #[error("orbit evaluation failed at index {index}: {source}")]
    OrbitFailure {
        index: usize,
        #[source]
        source: alloc::boxed::Box<Error>,
    },
    #[error("subspace is not invariant: residual {residual} exceeds {tol}")]
    NotInvariant { residual: f64, tol: f64 },
    #[error("conjugacy check failed: residual {residual} exceeds {tol}")]
    ConjugacyFailed { residual: f64, tol: f64 },
    #[error("invalid allocation: {0}")]
    InvalidAllocation(String),
    #[error("levels must be strictly increasing")]
    NonMonotoneLevels,
    #[error("epsilon {eps} is not below the first level {first}")]
    EpsilonTooLarge { eps: f64, first: f64 },
    #[error("radii must be strictly decreasing and positive")]
    BadRadiusSchedule,
    #[error("unsupported: {0}")]
    Unsupported(String),
}
