//! Hamiltonian torus spaces presented by fixed-point data, and the
//! geometry of their moment polytopes.

mod geometry;
mod model;

use thiserror::Error;

pub use geometry::{
    canonical, in_convex_hull, is_regular_value, primitive, primitive_from_rational, product, project_moment,
    wall_normals, wall_normals_for, walls, MomentData, Projection, Wall,
};
pub use model::{
    gkm_warnings, multiple_of, pair, pair_int, parallel, validate, weight_form, FixedPoint, GkmEdge, GkmSpace,
    Provenance, Subtorus, TorusAction, Violation,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("unknown fixed point {0}")]
    UnknownPoint(String),
    #[error("invalid space ({} violations): {}", .0.len(), .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("invalid subtorus: {0}")]
    BadSubtorus(String),
    #[error("torus rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("expected a vector of length {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("dilation must be positive, got {0}")]
    BadDilation(String),
}
