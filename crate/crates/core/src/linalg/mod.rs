//! Exact linear algebra: dense and sparse matrices, rank, kernels, and
//! minimum-norm solves with respect to the standard coordinate inner product.

mod dense;
mod sparse;

pub use dense::{Echelon, Matrix};
pub use sparse::SparseMatrix;

use crate::scalar::Field;

/// Standard inner product of coordinate vectors.
pub fn dot<F: Field>(a: &[F], b: &[F]) -> F {
  assert_eq!(a.len(), b.len(), "dot length mismatch");
  a.iter().zip(b).fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn norm_squared<F: Field>(a: &[F]) -> F { dot(a, a) }

pub fn add_vec<F: Field>(a: &[F], b: &[F]) -> Vec<F> { a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect() }

pub fn sub_vec<F: Field>(a: &[F], b: &[F]) -> Vec<F> { a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect() }

pub fn scale_vec<F: Field>(c: &F, a: &[F]) -> Vec<F> { a.iter().map(|x| c.clone() * x.clone()).collect() }

pub fn is_zero_vec<F: Field>(a: &[F]) -> bool { a.iter().all(|x| x.is_zero()) }

/// The unique solution of `a · x = b` of minimum Euclidean norm, or `None` when
/// `b` is outside the column space.
///
/// The minimizer is the solution lying in the row space of `a`, i.e. `x = aᵀy`
/// for any `y` solving the (consistent) normal system `a aᵀ y = b`.
pub fn min_norm_solve<F: Field>(a: &Matrix<F>, b: &[F]) -> Option<Vec<F>> {
  assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
  if is_zero_vec(b) {
    return Some(vec![F::zero(); a.cols()]);
  }
  let at = a.transpose();
  let gram = a * &at;
  let y = gram.solve(b)?;
  let x = at.mul_vec(&y);
  // gram is consistent exactly when b is in the column space of a
  debug_assert_eq!(a.mul_vec(&x), b);
  Some(x)
}

/// Orthogonal projection of `b` onto the column space of `a`.
pub fn project_onto_columns<F: Field>(a: &Matrix<F>, b: &[F]) -> Vec<F> {
  let at = a.transpose();
  let y = (&at * a).solve(&at.mul_vec(b)).expect("normal equations are always consistent");
  a.mul_vec(&y)
}
