//! Exact computation of dissection and dependency patterns of vector
//! configurations, their f-, f*- and g-matrices, spherical arc crossing
//! numbers, and the k-arc statistics of lifted cylinder configurations.
//!
//! Every routine is generic over an exact [`Scalar`]; the aliases below fix
//! it to arbitrary-precision rationals, which is what the CLI uses.

pub mod config;
pub mod covectors;
pub mod crossings;
pub mod error;
pub mod feasibility;
pub mod format;
pub mod gmatrix;
pub mod karcs;
pub mod linalg;
pub mod motion;
pub mod poly;
pub mod roots;
pub mod scalar;
pub mod sign;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{Scalar, Sign};
pub use sign::SignVector;

/// Arbitrary-precision rational scalar.
pub type Rational = num_rational::BigRational;
/// A configuration over [`Rational`].
pub type Configuration = config::VectorConfiguration<Rational>;
