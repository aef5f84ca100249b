use super::{Chain, OrientedComplex};
use crate::error::Result;
use crate::linalg::{Matrix, SparseMatrix};
use crate::scalar::Field;

/// Rational Betti numbers `dim H_k` for `k = 0..=dim X`; empty for the empty complex.
pub fn homology_dimensions<F: Field>(x: &OrientedComplex) -> Vec<usize> {
  let Some(top) = x.dim() else { return Vec::new() };
  let ranks: Vec<usize> = (0..=top + 1).map(|k| x.boundary_matrix::<F>(k).rank()).collect();
  (0..=top).map(|k| x.count(k) - ranks[k] - ranks[k + 1]).collect()
}

/// Cycle and boundary spaces of one degree, as column bases.
#[derive(Clone, Debug)]
pub struct CycleData<F> {
  pub degree: usize,
  /// Kernel basis of `∂_k` (columns).
  pub cycles: Matrix<F>,
  /// `∂_{k+1}` as a dense matrix; its column space is the boundary space.
  pub boundaries: Matrix<F>,
}

impl<F: Field> CycleData<F> {
  pub fn new(x: &OrientedComplex, k: usize) -> Self {
    Self { degree: k, cycles: x.boundary_matrix::<F>(k).to_dense().kernel(), boundaries: x.boundary_matrix::<F>(k + 1).to_dense() }
  }

  pub fn homology_dim(&self) -> usize { self.cycles.cols() - self.boundaries.rank() }
}

/// Whether a chain is a boundary in `x`.
pub fn is_boundary<F: Field>(x: &OrientedComplex, c: &Chain<F>) -> Result<bool> {
  let coords = x.coords(c)?;
  Ok(x.boundary_matrix::<F>(c.degree() + 1).to_dense().solve(&coords).is_some())
}

/// Rank of the map `H_k(source) → H_k(target)` induced by a degree-`k` chain map
/// given as a `target_k × source_k` matrix.
pub fn induced_homology_rank<F: Field>(map: &SparseMatrix<F>, source: &OrientedComplex, target: &OrientedComplex, k: usize) -> usize {
  let z = CycleData::<F>::new(source, k).cycles;
  let b = target.boundary_matrix::<F>(k + 1).to_dense();
  let image = &map.to_dense() * &z;
  b.hstack(&image).rank() - b.rank()
}

#[cfg(test)]
mod tests {
  use num_rational::BigRational;

  use super::*;
  use crate::complex::Simplex;

  fn hollow_tetrahedron() -> OrientedComplex {
    OrientedComplex::from_maximal([["a", "b", "c"], ["a", "b", "d"], ["a", "c", "d"], ["b", "c", "d"]]).unwrap()
  }

  #[test]
  fn betti_numbers() {
    assert_eq!(homology_dimensions::<BigRational>(&hollow_tetrahedron()), vec![1, 0, 1]);
    assert_eq!(homology_dimensions::<BigRational>(&OrientedComplex::from_maximal([["p"]]).unwrap()), vec![1]);
    let circle = OrientedComplex::from_maximal([["a", "b"], ["b", "c"], ["a", "c"]]).unwrap();
    assert_eq!(homology_dimensions::<BigRational>(&circle), vec![1, 1]);
    assert!(homology_dimensions::<BigRational>(&OrientedComplex::empty()).is_empty());
  }

  #[test]
  fn boundary_detection() {
    let disk = OrientedComplex::from_maximal([["a", "b", "c"]]).unwrap();
    let cycle: Chain<BigRational> = Chain::simplex(Simplex::new(["a", "b", "c"]).unwrap()).boundary();
    assert!(is_boundary(&disk, &cycle).unwrap());
    let circle = OrientedComplex::from_maximal([["a", "b"], ["b", "c"], ["a", "c"]]).unwrap();
    assert!(!is_boundary(&circle, &cycle).unwrap());
  }
}
