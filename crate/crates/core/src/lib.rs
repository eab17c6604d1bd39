//! Equivariant cohomology of Hamiltonian torus spaces presented by GKM
//! fixed-point data, and kernels of (equivariant) Kirwan maps to their
//! symplectic reductions, in exact rational arithmetic.
//!
//! The linear algebra layer is generic over an exact [`linalg::Field`]; the
//! rest of the crate works over [`Rational`].

pub mod cohomology;
pub mod linalg;
pub mod reduction;
pub mod report;
pub mod space;

pub use num_bigint::BigInt;

/// Arbitrary-precision rational, always in lowest terms.
pub type Rational = num_rational::BigRational;
/// Polynomial over `Rational`; elements of `H_T^*(pt)`.
pub type MultiPoly = linalg::Polynomial<Rational>;
pub type RatMatrix = linalg::Matrix<Rational>;
pub type RatSubspace = linalg::Subspace<Rational>;

/// Integer vector in the Lie algebra or weight lattice.
pub type IntVector = Vec<i64>;
/// Rational vector, e.g. a moment image or a regular value.
pub type RatVector = Vec<Rational>;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_rational_vector(v: &[i64]) -> RatVector {
    v.iter().map(|&x| rational(x)).collect()
}
