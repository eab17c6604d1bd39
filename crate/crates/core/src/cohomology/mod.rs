//! Equivariant cohomology as tuples of fixed-point restrictions.

mod basis;
mod class;
mod error;
mod morse;

pub use basis::{basis, DegreeBasis, GradedCohomology};
pub use class::{forget_into, forget_to_subtorus, gkm_check, kunneth, EquivariantClass};
pub use error::CohomologyError;
pub use morse::{
    ascending_reach, check_separating, flow_up_class, generic_direction, morse_counts, morse_index,
    negative_euler_class,
};
