use std::collections::BTreeMap;

use crate::cochain::rank_modulo;
use crate::complex::{Chain, OrientedComplex};
use crate::error::{Error, Result};
use crate::linalg::{project_onto_columns, Matrix};
use crate::order::{CoefficientSystem, FinitePoset};
use crate::scalar::Field;
use crate::subdivision::{SubdivisionMap, SubdivisionScript};

/// A finite chain complex `C_n → ⋯ → C_0` of coordinate spaces.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex<F> {
  dims: Vec<usize>,
  /// `boundary[i] : C_i → C_{i-1}`; `boundary[0]` has no rows.
  boundary: Vec<Matrix<F>>,
}

impl<F: Field> ChainComplex<F> {
  /// `boundary[i - 1]` is `∂_i` for `i ≥ 1`.
  pub fn new(dims: Vec<usize>, boundary: Vec<Matrix<F>>) -> Result<Self> {
    if boundary.len() + 1 != dims.len().max(1) {
      return Err(Error::DimensionMismatch(format!("{} boundary maps for {} degrees", boundary.len(), dims.len())));
    }
    let mut all = Vec::with_capacity(dims.len());
    if let Some(&d0) = dims.first() {
      all.push(Matrix::zeros(0, d0));
    }
    for (j, m) in boundary.into_iter().enumerate() {
      let i = j + 1;
      if m.rows() != dims[i - 1] || m.cols() != dims[i] {
        return Err(Error::DimensionMismatch(format!("boundary map in degree {i} has the wrong shape")));
      }
      all.push(m);
    }
    for i in 2..all.len() {
      if !(&all[i - 1] * &all[i]).is_zero() {
        return Err(Error::InvariantViolation(format!("∂∘∂ ≠ 0 in degree {i}")));
      }
    }
    Ok(Self { dims, boundary: all })
  }

  pub fn from_complex(x: &OrientedComplex) -> Self {
    let top = x.dim().map_or(0, |d| d + 1);
    let dims = (0..top).map(|k| x.count(k)).collect();
    let boundary = (1..top).map(|k| x.boundary_matrix::<F>(k).to_dense()).collect();
    Self::new(dims, boundary).expect("simplicial boundaries square to zero")
  }

  pub fn len(&self) -> usize { self.dims.len() }

  pub fn is_empty(&self) -> bool { self.dims.is_empty() }

  pub fn dim(&self, i: usize) -> usize { self.dims.get(i).copied().unwrap_or(0) }

  pub fn dims(&self) -> &[usize] { &self.dims }

  /// `∂_i`, with zero maps outside the stored range.
  pub fn boundary(&self, i: usize) -> Matrix<F> {
    self.boundary.get(i).cloned().unwrap_or_else(|| Matrix::zeros(if i == 0 { 0 } else { self.dim(i - 1) }, self.dim(i)))
  }

  pub fn cycles(&self, i: usize) -> Matrix<F> { self.boundary(i).kernel() }

  pub fn homology_dim(&self, i: usize) -> usize { self.boundary(i).nullity() - self.boundary(i + 1).rank() }

  pub fn is_cycle(&self, i: usize, v: &[F]) -> bool { self.boundary(i).mul_vec(v).iter().all(|x| x.is_zero()) }

  pub fn is_boundary(&self, i: usize, v: &[F]) -> bool { self.boundary(i + 1).solve(v).is_some() }

  /// The representative of `[z]` orthogonal to all boundaries.
  pub fn harmonic(&self, i: usize, z: &[F]) -> Vec<F> {
    let p = project_onto_columns(&self.boundary(i + 1), z);
    z.iter().zip(p).map(|(a, b)| a.clone() - b).collect()
  }
}

/// Chain complexes over a poset with chain maps `Φ(p,q)` for `p ≤ q`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainSystem<F> {
  poset: FinitePoset,
  complexes: Vec<ChainComplex<F>>,
  /// Per comparable pair, the chain map in each degree.
  maps: BTreeMap<(usize, usize), Vec<Matrix<F>>>,
}

impl<F: Field> ChainSystem<F> {
  /// Derives composites from maps on covering pairs, then checks that they are
  /// chain maps, that all composites agree and that every map is a quasi-isomorphism.
  pub fn new(poset: FinitePoset, complexes: Vec<ChainComplex<F>>, cover_maps: BTreeMap<(usize, usize), Vec<Matrix<F>>>) -> Result<Self> {
    if complexes.len() != poset.len() {
      return Err(Error::DimensionMismatch(format!("{} complexes for {} elements", complexes.len(), poset.len())));
    }
    let top = complexes.iter().map(ChainComplex::len).max().unwrap_or(0);
    let name = |p: usize| poset.name(p).to_string();
    for &(p, q) in poset.covers() {
      let maps = cover_maps.get(&(p, q)).ok_or_else(|| Error::Incoherent(format!("missing map {}→{}", name(p), name(q))))?;
      for i in 0..top {
        let m = maps.get(i).cloned().unwrap_or_else(|| Matrix::zeros(complexes[q].dim(i), complexes[p].dim(i)));
        if m.rows() != complexes[q].dim(i) || m.cols() != complexes[p].dim(i) {
          return Err(Error::DimensionMismatch(format!("map {}→{} in degree {i} has the wrong shape", name(p), name(q))));
        }
      }
    }
    if let Some(&(p, q)) = cover_maps.keys().find(|(p, q)| !poset.covers().contains(&(*p, *q))) {
      return Err(Error::Incoherent(format!("{}→{} is not a covering pair", name(p), name(q))));
    }
    let pad = |p: usize, q: usize, maps: &[Matrix<F>]| -> Vec<Matrix<F>> {
      (0..top).map(|i| maps.get(i).cloned().unwrap_or_else(|| Matrix::zeros(complexes[q].dim(i), complexes[p].dim(i)))).collect()
    };
    let order = poset.linear_extension();
    let mut all: BTreeMap<(usize, usize), Vec<Matrix<F>>> = BTreeMap::new();
    for &p in &order {
      all.insert((p, p), (0..top).map(|i| Matrix::identity(complexes[p].dim(i))).collect());
      for &r in &order {
        if !poset.lt(p, r) {
          continue;
        }
        let mut value: Option<(usize, Vec<Matrix<F>>)> = None;
        for &(q, t) in poset.covers() {
          if t != r || !poset.leq(p, q) {
            continue;
          }
          let step = pad(q, r, &cover_maps[&(q, r)]);
          let candidate: Vec<Matrix<F>> = step.iter().zip(&all[&(p, q)]).map(|(a, b)| a * b).collect();
          match &value {
            None => value = Some((q, candidate)),
            Some((q0, v)) if *v != candidate => {
              return Err(Error::Incoherent(format!("{}→{}→{} and {}→{}→{}", name(p), name(*q0), name(r), name(p), name(q), name(r))));
            },
            _ => {},
          }
        }
        all.insert((p, r), value.expect("strict relations factor through covers").1);
      }
    }
    let sys = Self { poset, complexes, maps: all };
    sys.check_chain_maps()?;
    sys.check_quasi_isomorphisms()?;
    Ok(sys)
  }

  fn check_chain_maps(&self) -> Result<()> {
    for &(p, q) in self.poset.covers() {
      for i in 1..self.degrees() {
        let lhs = &self.map(p, q, i - 1) * &self.complexes[p].boundary(i);
        let rhs = &self.complexes[q].boundary(i) * &self.map(p, q, i);
        if lhs != rhs {
          return Err(Error::NotAChainMap { degree: i });
        }
      }
    }
    Ok(())
  }

  fn check_quasi_isomorphisms(&self) -> Result<()> {
    for &(p, q) in self.poset.covers() {
      for i in 0..self.degrees() {
        let (cp, cq) = (&self.complexes[p], &self.complexes[q]);
        let h = cp.homology_dim(i);
        if h != cq.homology_dim(i) || rank_modulo(&(&self.map(p, q, i) * &cp.cycles(i)), &cq.boundary(i + 1)) != h {
          return Err(Error::HomologyMismatch { degree: i });
        }
      }
    }
    Ok(())
  }

  pub fn poset(&self) -> &FinitePoset { &self.poset }

  pub fn complex(&self, p: usize) -> &ChainComplex<F> { &self.complexes[p] }

  /// Number of chain degrees.
  pub fn degrees(&self) -> usize { self.complexes.iter().map(ChainComplex::len).max().unwrap_or(0) }

  /// `Φ(p,q)` in degree `i`; panics unless `p ≤ q`.
  pub fn map(&self, p: usize, q: usize, i: usize) -> Matrix<F> {
    self.maps[&(p, q)].get(i).cloned().unwrap_or_else(|| Matrix::zeros(self.complexes[q].dim(i), self.complexes[p].dim(i)))
  }

  /// The coefficient system `p ↦ C_i(p)`.
  pub fn coefficient_system(&self, i: usize) -> CoefficientSystem<F> {
    let dims = self.complexes.iter().map(|c| c.dim(i)).collect();
    let maps = self.poset.covers().iter().map(|&(p, q)| ((p, q), self.map(p, q, i))).collect();
    CoefficientSystem::new(self.poset.clone(), dims, maps).expect("a coherent system is functorial in each degree")
  }

  /// Restriction to the induced subposet on `elements`.
  pub fn restrict(&self, elements: &[usize]) -> Self {
    let poset = self.poset.induced(elements);
    let complexes = elements.iter().map(|&p| self.complexes[p].clone()).collect();
    let maps = poset.covers().iter().map(|&(a, b)| ((a, b), self.maps[&(elements[a], elements[b])].clone())).collect();
    Self::new(poset, complexes, maps).expect("restriction preserves coherence")
  }
}

/// A poset of triangulations with subdivision maps on covering pairs.
#[derive(Clone, Debug)]
pub struct TriangulationSystem<F> {
  pub complexes: Vec<OrientedComplex>,
  pub subdivisions: BTreeMap<(usize, usize), SubdivisionMap<F>>,
  pub system: ChainSystem<F>,
}

impl<F: Field> TriangulationSystem<F> {
  pub fn new(poset: FinitePoset, complexes: Vec<OrientedComplex>, subdivisions: BTreeMap<(usize, usize), SubdivisionMap<F>>) -> Result<Self> {
    if complexes.len() != poset.len() {
      return Err(Error::DimensionMismatch(format!("{} complexes for {} elements", complexes.len(), poset.len())));
    }
    for (&(p, q), s) in &subdivisions {
      if s.coarse() != &complexes[p] || s.fine() != &complexes[q] {
        return Err(Error::ComplexMismatch(format!("subdivision {}→{} does not connect the given complexes", poset.name(p), poset.name(q))));
      }
      s.validate()?;
    }
    let chains = complexes.iter().map(ChainComplex::from_complex).collect();
    let maps = subdivisions
      .iter()
      .map(|(&(p, q), s)| ((p, q), (0..complexes[p].dim().map_or(0, |d| d + 1)).map(|k| s.matrix(k).to_dense()).collect()))
      .collect();
    let system = ChainSystem::new(poset, chains, maps)?;
    Ok(Self { complexes, subdivisions, system })
  }

  /// Applies each covering pair's script to the lower complex; the result must
  /// reproduce the upper complex exactly.
  pub fn from_scripts(poset: FinitePoset, complexes: Vec<OrientedComplex>, scripts: &BTreeMap<(usize, usize), SubdivisionScript>) -> Result<Self> {
    let mut subdivisions = BTreeMap::new();
    for (&(p, q), script) in scripts {
      if p >= complexes.len() || q >= complexes.len() {
        return Err(Error::UnknownElement(format!("{p} or {q}")));
      }
      subdivisions.insert((p, q), script.apply::<F>(&complexes[p])?);
    }
    Self::new(poset, complexes, subdivisions)
  }

  pub fn coords(&self, p: usize, c: &Chain<F>) -> Result<Vec<F>> { self.complexes[p].coords(c) }

  pub fn chain(&self, p: usize, degree: usize, x: &[F]) -> Chain<F> { self.complexes[p].chain_from_coords(degree, x) }
}

#[cfg(test)]
mod tests {
  use num_rational::BigRational;

  use super::*;
  use crate::complex::Simplex;

  type Q = BigRational;

  fn s(vs: &[&str]) -> Simplex { Simplex::new(vs.iter().copied()).unwrap() }

  #[test]
  fn chain_complex_of_circle() {
    let x = OrientedComplex::from_maximal([["a", "b"], ["b", "c"], ["a", "c"]]).unwrap();
    let c = ChainComplex::<Q>::from_complex(&x);
    assert_eq!((c.homology_dim(0), c.homology_dim(1)), (1, 1));
    assert_eq!(c.boundary(2).rows(), 3);
  }

  fn diamond() -> TriangulationSystem<Q> {
    let poset = FinitePoset::new(&["p", "q1", "q2", "r"], &[("p", "q1"), ("p", "q2"), ("q1", "r"), ("q2", "r")]).unwrap();
    let base = OrientedComplex::from_maximal([["a", "b", "c"]]).unwrap();
    let scripts: BTreeMap<_, _> = [
      ((0, 1), "star a,b,c w"),
      ((0, 2), "star a,b m"),
      ((1, 3), "star a,b m"),
      ((2, 3), "star c,m w"),
    ]
    .into_iter()
    .map(|(k, t)| (k, SubdivisionScript::parse(t).unwrap()))
    .collect();
    let q1 = scripts[&(0, 1)].apply::<Q>(&base).unwrap().fine().clone();
    let q2 = scripts[&(0, 2)].apply::<Q>(&base).unwrap().fine().clone();
    let r = scripts[&(1, 3)].apply::<Q>(&q1).unwrap().fine().clone();
    TriangulationSystem::from_scripts(poset, vec![base, q1, q2, r], &scripts).unwrap()
  }

  #[test]
  fn diamond_is_coherent() {
    let t = diamond();
    assert_eq!(t.complexes[3].count(2), 4);
    assert!(t.complexes[3].contains(&s(&["a", "m", "w"])));
    let cs = t.system.coefficient_system(2);
    assert_eq!(cs.dims(), &[1, 3, 2, 4]);
  }

  #[test]
  fn incoherent_diamond_is_rejected() {
    let t = diamond();
    let mut maps: BTreeMap<(usize, usize), Vec<Matrix<Q>>> =
      t.system.poset().covers().iter().map(|&(p, q)| ((p, q), (0..3).map(|i| t.system.map(p, q, i)).collect())).collect();
    // flip the orientation of one refinement step in degree 2 only
    let m = maps.get_mut(&(2, 3)).unwrap();
    m[2] = m[2].scale(&-Q::from_integer(1.into()));
    let complexes = (0..4).map(|p| t.system.complex(p).clone()).collect();
    let err = ChainSystem::new(t.system.poset().clone(), complexes, maps).unwrap_err();
    assert!(matches!(err, Error::NotAChainMap { .. } | Error::Incoherent(_)), "{err:?}");
  }
}
