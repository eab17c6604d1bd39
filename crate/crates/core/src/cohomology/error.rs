use thiserror::Error;

use crate::linalg::LinalgError;
use crate::space::SpaceError;
use crate::IntVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("expected {expected} restrictions, got {actual}")]
    MissingRestriction { expected: usize, actual: usize },
    #[error("restriction at {point} is not homogeneous of degree {degree}")]
    NotHomogeneous { point: String, degree: u32 },
    #[error("cohomological degree must be even, got {0}")]
    OddDegree(u32),
    #[error("classes live on different spaces")]
    SpaceMismatch,
    #[error("direction is not generic: weight {weight:?} at {point} pairs to zero")]
    NonGeneric { point: String, weight: IntVector },
    #[error("direction does not separate fixed points: {0} and {1} share a value")]
    Tie(String, String),
    #[error("no class meets the flow-up conditions at {0}")]
    Infeasible(String),
    #[error("degree {degree}: solved dimension {solved} disagrees with Morse count {morse}")]
    MorseMismatch { degree: u32, solved: usize, morse: usize },
    #[error("class is not in H^{0}")]
    NotAClass(u32),
    #[error("{0}")]
    Provenance(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Space(#[from] SpaceError),
}
