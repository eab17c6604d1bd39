//! Exact arithmetic: polynomials, dense matrices and subspaces over any
//! [`Field`].

mod error;
mod field;
mod matrix;
mod poly;
mod subspace;

pub use error::LinalgError;
pub use field::Field;
pub use matrix::Matrix;
pub use poly::{monomial_count, monomials, Monomial, Polynomial};
pub use subspace::Subspace;
