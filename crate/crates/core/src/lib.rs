//! Exact combinatorial transgressions of cycles under simplicial subdivision,
//! and order cohomology of finite posets with coefficient systems.
//!
//! All algorithms are generic over an exact [`Field`]; the aliases below fix the
//! field to arbitrary-precision rationals, which is what the command-line tool
//! and the test corpus use.

pub mod cochain;
pub mod complex;
pub mod error;
pub mod euler;
pub mod linalg;
pub mod order;
pub mod scalar;
pub mod sheaf;
pub mod subdivision;
pub mod transgression;

pub use complex::{Chain, OrientedComplex, Simplex, Vertex};
pub use error::{Error, ErrorClass, Result};
pub use scalar::Field;

/// Arbitrary-precision rational scalar.
pub type Rational = num_rational::BigRational;
pub type RationalMatrix = linalg::Matrix<Rational>;
pub type RationalChain = Chain<Rational>;
