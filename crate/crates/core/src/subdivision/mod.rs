//! Subdivisions of complexes: carriers, induced chain maps and parties.

mod script;
mod stellar;

use std::collections::BTreeMap;

pub use script::{Move, SubdivisionScript};
pub use stellar::{barycentric_subdivide, barycentric_vertex_name, stellar_subdivide};

use crate::complex::{homology_dimensions, induced_homology_rank, Chain, OrientedComplex, Simplex};
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::scalar::Field;

/// A subdivision `coarse → fine` with its carrier map and induced chain map.
#[derive(Clone, Debug, PartialEq)]
pub struct SubdivisionMap<F> {
  coarse: OrientedComplex,
  fine: OrientedComplex,
  /// Fine simplex ↦ minimal coarse simplex whose subdivision contains it.
  carrier: BTreeMap<Simplex, Simplex>,
  /// Per degree `k`, the `fine_k × coarse_k` matrix of the chain map.
  chain_map: Vec<SparseMatrix<F>>,
}

/// The fine `k`-simplices making up the subdivided image of one coarse `k`-simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Party {
  pub degree: usize,
  pub coarse_simplex: Simplex,
  pub fine_simplices: Vec<Simplex>,
}

impl<F: Field> SubdivisionMap<F> {
  pub fn identity(x: &OrientedComplex) -> Self {
    let carrier = x.all_simplices().map(|s| (s.clone(), s.clone())).collect();
    let chain_map = (0..x.dim().map_or(0, |d| d + 1)).map(|k| SparseMatrix::identity(x.count(k))).collect();
    Self { coarse: x.clone(), fine: x.clone(), carrier, chain_map }
  }

  /// Assembles a subdivision from explicit data and validates every invariant.
  pub fn from_parts(
    coarse: OrientedComplex,
    fine: OrientedComplex,
    carrier: BTreeMap<Simplex, Simplex>,
    chain_map: Vec<SparseMatrix<F>>,
  ) -> Result<Self> {
    let s = Self { coarse, fine, carrier, chain_map };
    s.validate()?;
    Ok(s)
  }

  pub(crate) fn from_parts_unchecked(
    coarse: OrientedComplex,
    fine: OrientedComplex,
    carrier: BTreeMap<Simplex, Simplex>,
    chain_map: Vec<SparseMatrix<F>>,
  ) -> Self {
    Self { coarse, fine, carrier, chain_map }
  }

  pub fn coarse(&self) -> &OrientedComplex { &self.coarse }

  pub fn fine(&self) -> &OrientedComplex { &self.fine }

  pub fn carrier(&self, fine_simplex: &Simplex) -> Option<&Simplex> { self.carrier.get(fine_simplex) }

  /// Chain map matrix in degree `k` (`fine_k × coarse_k`).
  pub fn matrix(&self, k: usize) -> SparseMatrix<F> {
    self.chain_map.get(k).cloned().unwrap_or_else(|| SparseMatrix::zeros(self.fine.count(k), self.coarse.count(k)))
  }

  /// Image of a coarse chain.
  pub fn apply(&self, c: &Chain<F>) -> Result<Chain<F>> {
    let x = self.coarse.coords(c)?;
    let y = self.matrix(c.degree()).mul_vec(&x);
    Ok(self.fine.chain_from_coords(c.degree(), &y))
  }

  /// Fine subcomplex lying over the closed coarse simplex `tau`.
  pub fn restricted_to(&self, tau: &Simplex) -> OrientedComplex {
    self.fine.filter(|t| self.carrier.get(t).is_some_and(|c| c.is_face_of(tau)))
  }

  pub fn compose(&self, next: &SubdivisionMap<F>) -> Result<SubdivisionMap<F>> {
    if self.fine != next.coarse {
      return Err(Error::ComplexMismatch("fine complex of the first map differs from the coarse complex of the second".into()));
    }
    let carrier = next
      .carrier
      .iter()
      .map(|(t, mid)| (t.clone(), self.carrier[mid].clone()))
      .collect();
    let top = self.coarse.dim().map_or(0, |d| d + 1);
    let chain_map = (0..top).map(|k| next.matrix(k).mul(&self.matrix(k))).collect();
    Ok(Self { coarse: self.coarse.clone(), fine: next.fine.clone(), carrier, chain_map })
  }

  /// Parties of degree `k`, one per coarse `k`-simplex, in coarse simplex order.
  pub fn parties(&self, k: usize) -> Vec<Party> {
    let mut groups: BTreeMap<&Simplex, Vec<Simplex>> = self.coarse.simplices(k).iter().map(|s| (s, Vec::new())).collect();
    for t in self.fine.simplices(k) {
      let c = &self.carrier[t];
      if c.dim() == k {
        groups.get_mut(c).expect("carrier lies in the coarse complex").push(t.clone());
      }
    }
    groups
      .into_iter()
      .map(|(s, fine_simplices)| Party { degree: k, coarse_simplex: s.clone(), fine_simplices })
      .collect()
  }

  /// Checks `Φ∂ = ∂Φ` in every degree.
  pub fn check_chain_map(&self) -> Result<()> {
    let top = self.coarse.dim().map_or(0, |d| d + 1);
    for k in 1..top {
      let lhs = self.matrix(k - 1).mul(&self.coarse.boundary_matrix(k));
      let rhs = self.fine.boundary_matrix::<F>(k).mul(&self.matrix(k));
      if lhs != rhs {
        return Err(Error::NotAChainMap { degree: k });
      }
    }
    Ok(())
  }

  /// Checks that `Φ` induces isomorphisms on rational homology.
  pub fn check_homology_isomorphism(&self) -> Result<()> {
    let hc = homology_dimensions::<F>(&self.coarse);
    let hf = homology_dimensions::<F>(&self.fine);
    for k in 0..hc.len().max(hf.len()) {
      let (a, b) = (hc.get(k).copied().unwrap_or(0), hf.get(k).copied().unwrap_or(0));
      if a != b || induced_homology_rank(&self.matrix(k), &self.coarse, &self.fine, k) != a {
        return Err(Error::HomologyMismatch { degree: k });
      }
    }
    Ok(())
  }

  fn check_carrier(&self) -> Result<()> {
    for t in self.fine.all_simplices() {
      let c = self.carrier.get(t).ok_or_else(|| Error::InvalidCarrier(format!("no carrier for {t}")))?;
      if !self.coarse.contains(c) {
        return Err(Error::InvalidCarrier(format!("carrier {c} of {t} is not a coarse simplex")));
      }
      if c.dim() < t.dim() {
        return Err(Error::InvalidCarrier(format!("carrier {c} is smaller than {t}")));
      }
      for (_, f) in t.boundary_faces() {
        if !self.carrier.get(&f).is_some_and(|cf| cf.is_face_of(c)) {
          return Err(Error::InvalidCarrier(format!("carrier of face {f} is not a face of {c}")));
        }
      }
    }
    if self.carrier.len() != self.fine.len() {
      return Err(Error::InvalidCarrier("carrier defined on simplices outside the fine complex".into()));
    }
    for v in self.coarse.simplices(0) {
      if self.carrier.get(v) != Some(v) {
        return Err(Error::InvalidCarrier(format!("coarse vertex {v} is not a fine vertex carried by itself")));
      }
    }
    Ok(())
  }

  fn check_supports(&self) -> Result<()> {
    let top = self.coarse.dim().map_or(0, |d| d + 1);
    if self.chain_map.len() != top {
      return Err(Error::DimensionMismatch(format!("expected {top} chain map blocks, got {}", self.chain_map.len())));
    }
    for k in 0..top {
      let m = &self.chain_map[k];
      if m.rows() != self.fine.count(k) || m.cols() != self.coarse.count(k) {
        return Err(Error::DimensionMismatch(format!("chain map block {k} has the wrong shape")));
      }
      for (j, tau) in self.coarse.simplices(k).iter().enumerate() {
        let expected: Vec<usize> = (0..self.fine.count(k)).filter(|&i| self.carrier[&self.fine.simplices(k)[i]] == *tau).collect();
        let support: Vec<usize> = m.column(j).iter().map(|(i, _)| *i).collect();
        if support != expected {
          return Err(Error::InvalidCarrier(format!("image of {tau} is not supported on its party")));
        }
        if m.column(j).iter().any(|(_, v)| *v != F::one() && *v != -F::one()) {
          return Err(Error::InvalidCarrier(format!("image of {tau} has a coefficient other than ±1")));
        }
      }
    }
    Ok(())
  }

  /// Validates carrier monotonicity, party supports, the chain-map identity and
  /// the homology isomorphism.
  pub fn validate(&self) -> Result<()> {
    self.check_carrier()?;
    self.check_supports()?;
    self.check_chain_map()?;
    self.check_homology_isomorphism()
  }
}

#[cfg(test)]
mod tests {
  use num_rational::BigRational;

  use super::*;

  #[test]
  fn identity_is_valid() {
    let x = OrientedComplex::from_maximal([["a", "b", "c"], ["c", "d", "e"]]).unwrap();
    let id = SubdivisionMap::<BigRational>::identity(&x);
    id.validate().unwrap();
    let parties = id.parties(2);
    assert_eq!(parties.len(), 2);
    assert!(parties.iter().all(|p| p.fine_simplices == vec![p.coarse_simplex.clone()]));
  }

  #[test]
  fn compose_rejects_mismatch() {
    let x = OrientedComplex::from_maximal([["a", "b"]]).unwrap();
    let y = OrientedComplex::from_maximal([["a", "c"]]).unwrap();
    let f = SubdivisionMap::<BigRational>::identity(&x);
    let g = SubdivisionMap::<BigRational>::identity(&y);
    assert!(matches!(f.compose(&g), Err(Error::ComplexMismatch(_))));
  }

  #[test]
  fn from_parts_rejects_bad_signs() {
    let x = OrientedComplex::from_maximal([["a", "b"]]).unwrap();
    let mut bad = SubdivisionMap::<BigRational>::identity(&x);
    bad.chain_map[1] = SparseMatrix::from_columns(1, vec![vec![(0, -BigRational::from_integer(1.into()))]]);
    let err = SubdivisionMap::from_parts(bad.coarse, bad.fine, bad.carrier, bad.chain_map).unwrap_err();
    assert_eq!(err, Error::NotAChainMap { degree: 1 });
  }
}
