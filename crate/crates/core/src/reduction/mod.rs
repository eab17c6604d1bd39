//! Kernels of Kirwan maps and the cohomology of symplectic reductions.

mod kernel;
mod stages;
mod structure;

use thiserror::Error;

use crate::cohomology::CohomologyError;
use crate::linalg::LinalgError;
use crate::space::SpaceError;
use crate::IntVector;

pub use crate::cohomology::forget_to_subtorus;
pub use kernel::{
    reduce, sample_directions, DirectionSet, HalfSpaceCondition, KernelSlice, KernelVerdict, KirwanMap,
    ReductionReport, SufficiencyReport,
};
pub use stages::{check_stage_dimensions, StageCheck};
pub use structure::{Generator, Product, StructureConstants};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("mu is not a regular value")]
    NotRegular,
    #[error("direction must be nonzero")]
    ZeroDirection,
    #[error("no directions given")]
    NoDirections,
    #[error("direction {xi:?} has length {actual}, expected {expected}")]
    DirectionLength {
        xi: IntVector,
        expected: usize,
        actual: usize,
    },
    #[error("fixed point {point} lies on the hyperplane through mu normal to {xi:?}")]
    OnHyperplane { point: String, xi: IntVector },
    #[error("degree {degree} exceeds the computed bound {bound}")]
    DegreeTooLarge { degree: u32, bound: u32 },
    #[error("subtorus is not generic: {0}")]
    NonGenericSubtorus(String),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
