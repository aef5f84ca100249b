//! Random instances, fixtures and independently coded oracles shared by the
//! integration and acceptance tests.

pub mod fixtures;
pub mod oracle;
pub mod random;

pub use num_rational::BigRational as Q;

pub fn q(n: i64, d: i64) -> Q { Q::new(n.into(), d.into()) }

pub fn int(n: i64) -> Q { Q::from_integer(n.into()) }
