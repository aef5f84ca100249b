//! Abstract oriented simplicial complexes and their rational chain spaces.

mod chain;
mod homology;
mod simplex;

use std::collections::{BTreeMap, BTreeSet};

pub use chain::Chain;
pub use homology::{homology_dimensions, induced_homology_rank, is_boundary, CycleData};
pub use simplex::{Simplex, Vertex};

use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::scalar::Field;

/// A finite abstract simplicial complex, closed under faces.
///
/// Simplices of each dimension are kept in sorted order; that order is the
/// coordinate basis of the chain space in that degree.
#[derive(Clone, PartialEq, Eq)]
pub struct OrientedComplex {
  by_dim: Vec<Vec<Simplex>>,
  index: Vec<BTreeMap<Simplex, usize>>,
}

impl OrientedComplex {
  pub fn empty() -> Self { Self { by_dim: Vec::new(), index: Vec::new() } }

  /// Face closure of the given simplices.
  pub fn from_simplices(simplices: impl IntoIterator<Item = Simplex>) -> Self {
    let mut all = BTreeSet::new();
    for s in simplices {
      if all.contains(&s) {
        continue;
      }
      all.extend(s.faces());
    }
    Self::from_closed_set(all)
  }

  /// Face closure of simplices given as vertex lists.
  pub fn from_maximal<V: Into<Vertex>, S: IntoIterator<Item = V>>(simplices: impl IntoIterator<Item = S>) -> Result<Self> {
    let parsed: Result<Vec<Simplex>> = simplices.into_iter().map(Simplex::new).collect();
    Ok(Self::from_simplices(parsed?))
  }

  /// Complex with a declared vertex list (allowing isolated vertices) and simplices
  /// whose vertices must all be declared.
  pub fn with_vertices<V: Into<Vertex>>(vertices: impl IntoIterator<Item = V>, simplices: Vec<Simplex>) -> Result<Self> {
    let vs: BTreeSet<Vertex> = vertices.into_iter().map(Into::into).collect();
    for s in &simplices {
      if let Some(v) = s.vertices().iter().find(|v| !vs.contains(v)) {
        return Err(Error::VertexNotFound(v.to_string()));
      }
    }
    Ok(Self::from_simplices(vs.into_iter().map(Simplex::vertex).chain(simplices)))
  }

  fn from_closed_set(all: BTreeSet<Simplex>) -> Self {
    let mut by_dim: Vec<Vec<Simplex>> = Vec::new();
    for s in all {
      let d = s.dim();
      if by_dim.len() <= d {
        by_dim.resize_with(d + 1, Vec::new);
      }
      by_dim[d].push(s);
    }
    let index = by_dim.iter().map(|ss| ss.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect()).collect();
    Self { by_dim, index }
  }

  /// Top dimension, or `None` for the empty complex.
  pub fn dim(&self) -> Option<usize> { self.by_dim.len().checked_sub(1) }

  pub fn is_empty(&self) -> bool { self.by_dim.is_empty() }

  pub fn simplices(&self, k: usize) -> &[Simplex] { self.by_dim.get(k).map_or(&[], Vec::as_slice) }

  pub fn count(&self, k: usize) -> usize { self.simplices(k).len() }

  pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> { self.by_dim.iter().flatten() }

  pub fn len(&self) -> usize { self.by_dim.iter().map(Vec::len).sum() }

  pub fn index_of(&self, s: &Simplex) -> Option<usize> { self.index.get(s.dim())?.get(s).copied() }

  pub fn contains(&self, s: &Simplex) -> bool { self.index_of(s).is_some() }

  pub fn vertices(&self) -> impl Iterator<Item = &Vertex> { self.simplices(0).iter().map(|s| &s.vertices()[0]) }

  pub fn has_vertex(&self, v: &Vertex) -> bool { self.contains(&Simplex::vertex(v.clone())) }

  /// Simplices not properly contained in another simplex.
  pub fn maximal_simplices(&self) -> Vec<Simplex> {
    let mut covered = BTreeSet::new();
    for k in 1..self.by_dim.len() {
      for s in &self.by_dim[k] {
        for (_, f) in s.boundary_faces() {
          covered.insert(f);
        }
      }
    }
    self.all_simplices().filter(|s| !covered.contains(*s)).cloned().collect()
  }

  pub fn euler_characteristic(&self) -> i64 {
    self.by_dim.iter().enumerate().map(|(k, ss)| if k % 2 == 0 { ss.len() as i64 } else { -(ss.len() as i64) }).sum()
  }

  /// Boundary operator from degree `k` to `k - 1`; columns index `k`-simplices,
  /// rows index `(k-1)`-simplices. In degree 0 this is the `0 × n₀` matrix.
  pub fn boundary_matrix<F: Field>(&self, k: usize) -> SparseMatrix<F> {
    let rows = if k == 0 { 0 } else { self.count(k - 1) };
    let mut m = SparseMatrix::zeros(rows, 0);
    for s in self.simplices(k) {
      m.push_column(s.boundary_faces().map(|(odd, f)| (self.index_of(&f).expect("complex is closed"), F::sign(odd))));
    }
    m
  }

  /// Checks that every simplex of `c` lies in this complex.
  pub fn check_chain<F: Field>(&self, c: &Chain<F>) -> Result<()> {
    match c.support().find(|s| !self.contains(s)) {
      Some(s) => Err(Error::SimplexNotFound(s.to_string())),
      None => Ok(()),
    }
  }

  pub fn boundary<F: Field>(&self, c: &Chain<F>) -> Result<Chain<F>> {
    self.check_chain(c)?;
    Ok(c.boundary())
  }

  /// Coordinates of a chain in the sorted simplex basis of its degree.
  pub fn coords<F: Field>(&self, c: &Chain<F>) -> Result<Vec<F>> {
    let mut x = vec![F::zero(); self.count(c.degree())];
    for (s, v) in c.iter() {
      let i = self.index_of(s).ok_or_else(|| Error::SimplexNotFound(s.to_string()))?;
      x[i] = v.clone();
    }
    Ok(x)
  }

  pub fn chain_from_coords<F: Field>(&self, degree: usize, x: &[F]) -> Chain<F> {
    assert_eq!(x.len(), self.count(degree), "coordinate length mismatch");
    Chain::from_terms(degree, self.simplices(degree).iter().cloned().zip(x.iter().cloned())).expect("degrees agree")
  }

  pub fn is_subcomplex_of(&self, other: &Self) -> bool { self.all_simplices().all(|s| other.contains(s)) }

  pub fn intersection(&self, other: &Self) -> Self {
    Self::from_closed_set(self.all_simplices().filter(|s| other.contains(s)).cloned().collect())
  }

  pub fn union(&self, other: &Self) -> Self { Self::from_closed_set(self.all_simplices().chain(other.all_simplices()).cloned().collect()) }

  /// Closure of a single simplex.
  pub fn closure_of(s: &Simplex) -> Self { Self::from_simplices([s.clone()]) }

  /// Subcomplex of simplices satisfying a predicate; the predicate must be
  /// inherited by faces for the result to be a complex.
  pub fn filter(&self, keep: impl Fn(&Simplex) -> bool) -> Self {
    Self::from_closed_set(self.all_simplices().filter(|s| keep(s)).cloned().collect())
  }

  /// Link of a vertex: simplices `τ` not containing `v` with `τ ∪ {v}` in the complex.
  pub fn link(&self, v: &Vertex) -> Result<Self> {
    if !self.has_vertex(v) {
      return Err(Error::VertexNotFound(v.to_string()));
    }
    let vs = Simplex::vertex(v.clone());
    let link = self.all_simplices().filter(|s| s.contains(v) && s.dim() > 0).filter_map(|s| s.minus(&vs));
    Ok(Self::from_closed_set(link.collect()))
  }

  /// Renames vertices; the map must be injective on the vertex set.
  pub fn relabel(&self, rename: impl Fn(&Vertex) -> Vertex) -> Result<Self> {
    let mapped: Result<Vec<Simplex>> = self.all_simplices().map(|s| Simplex::new(s.vertices().iter().map(&rename))).collect();
    let out = Self::from_simplices(mapped?);
    if out.len() != self.len() {
      return Err(Error::DimensionMismatch("relabeling is not injective".into()));
    }
    Ok(out)
  }
}

impl std::fmt::Debug for OrientedComplex {
  fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
    f.debug_list().entries(self.maximal_simplices()).finish()
  }
}

#[cfg(test)]
mod tests {
  use num_rational::BigRational;

  use super::*;

  #[test]
  fn closure_counts() {
    let x = OrientedComplex::from_maximal([vec!["a", "b", "c", "d"]]).unwrap();
    assert_eq!((x.count(0), x.count(1), x.count(2), x.count(3)), (4, 6, 4, 1));
    assert_eq!(x.euler_characteristic(), 1);
    assert_eq!(x.maximal_simplices().len(), 1);
  }

  #[test]
  fn boundary_matrices_compose_to_zero() {
    let x = OrientedComplex::from_maximal([vec!["a", "b", "c", "d"]]).unwrap();
    for k in 1..3 {
      let d1 = x.boundary_matrix::<BigRational>(k);
      let d2 = x.boundary_matrix::<BigRational>(k + 1);
      assert!(d1.mul(&d2).is_zero());
    }
  }

  #[test]
  fn link_of_cone_point() {
    let x = OrientedComplex::from_maximal([vec!["a", "b", "w"], vec!["b", "c", "w"], vec!["a", "c", "w"]]).unwrap();
    let lk = x.link(&"w".into()).unwrap();
    assert_eq!((lk.count(0), lk.count(1), lk.count(2)), (3, 3, 0));
    assert!(x.link(&"z".into()).is_err());
  }

  #[test]
  fn chain_outside_complex() {
    let x = OrientedComplex::from_maximal([vec!["a", "b"]]).unwrap();
    let c: Chain<BigRational> = Chain::simplex(Simplex::new(["a", "c"]).unwrap());
    assert!(matches!(x.boundary(&c), Err(Error::SimplexNotFound(_))));
  }

  #[test]
  fn isolated_vertices_are_kept() {
    let x = OrientedComplex::with_vertices(["a", "b", "z"], vec![Simplex::new(["a", "b"]).unwrap()]).unwrap();
    assert_eq!(x.count(0), 3);
    assert!(OrientedComplex::with_vertices(["a"], vec![Simplex::new(["a", "b"]).unwrap()]).is_err());
  }
}
