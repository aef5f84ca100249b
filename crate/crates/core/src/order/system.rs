use std::collections::BTreeMap;

use super::FinitePoset;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Field;

/// A covariant functor from a finite poset to finite-dimensional vector spaces.
///
/// Given by matrices on covering pairs; all composites `Φ(p,q)`, `p ≤ q`, are
/// derived on construction and path independence is verified.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientSystem<F> {
  poset: FinitePoset,
  dims: Vec<usize>,
  maps: BTreeMap<(usize, usize), Matrix<F>>,
}

impl<F: Field> CoefficientSystem<F> {
  /// `maps` must contain every covering pair between nonzero spaces; pairs that
  /// are not covers are accepted and checked against the derived composite.
  pub fn new(poset: FinitePoset, dims: Vec<usize>, maps: BTreeMap<(usize, usize), Matrix<F>>) -> Result<Self> {
    if dims.len() != poset.len() {
      return Err(Error::DimensionMismatch(format!("{} dimensions for {} elements", dims.len(), poset.len())));
    }
    let name = |p: usize| poset.name(p).to_string();
    for (&(p, q), m) in &maps {
      if p >= poset.len() || q >= poset.len() || !poset.leq(p, q) {
        return Err(Error::NotFunctorial(format!("map given on incomparable pair ({p},{q})")));
      }
      if m.rows() != dims[q] || m.cols() != dims[p] {
        return Err(Error::DimensionMismatch(format!("map {}→{} should be {}×{}", name(p), name(q), dims[q], dims[p])));
      }
    }
    let mut cover = BTreeMap::new();
    for &(p, q) in poset.covers() {
      let m = match maps.get(&(p, q)) {
        Some(m) => m.clone(),
        None if dims[p] == 0 || dims[q] == 0 => Matrix::zeros(dims[q], dims[p]),
        None => return Err(Error::NotFunctorial(format!("missing map on covering pair {}→{}", name(p), name(q)))),
      };
      cover.insert((p, q), m);
    }
    let order = poset.linear_extension();
    let mut all: BTreeMap<(usize, usize), Matrix<F>> = BTreeMap::new();
    for &p in &order {
      all.insert((p, p), Matrix::identity(dims[p]));
      for &q in &order {
        if !poset.lt(p, q) {
          continue;
        }
        let mut value: Option<Matrix<F>> = None;
        for &(r, t) in poset.covers() {
          if t != q || !poset.leq(p, r) {
            continue;
          }
          let candidate = &cover[&(r, q)] * &all[&(p, r)];
          match &value {
            None => value = Some(candidate),
            Some(v) if *v != candidate => {
              return Err(Error::NotFunctorial(format!("two paths {}→{} give different maps", name(p), name(q))));
            },
            _ => {},
          }
        }
        all.insert((p, q), value.expect("a strict relation factors through a cover"));
      }
    }
    for (&(p, q), m) in &maps {
      if all[&(p, q)] != *m {
        return Err(Error::NotFunctorial(format!("given map {}→{} differs from the composite", name(p), name(q))));
      }
    }
    Ok(Self { poset, dims, maps: all })
  }

  /// Every space `F^n`, every map the identity.
  pub fn constant(poset: FinitePoset, n: usize) -> Self {
    let dims = vec![n; poset.len()];
    let maps = poset.covers().iter().map(|&c| (c, Matrix::identity(n))).collect();
    Self::new(poset, dims, maps).expect("the constant system is functorial")
  }

  pub fn poset(&self) -> &FinitePoset { &self.poset }

  pub fn dim(&self, p: usize) -> usize { self.dims[p] }

  pub fn dims(&self) -> &[usize] { &self.dims }

  /// `Φ(p,q)` for `p ≤ q`.
  pub fn map(&self, p: usize, q: usize) -> Option<&Matrix<F>> { self.maps.get(&(p, q)) }

  /// Matrices on covering pairs.
  pub fn cover_maps(&self) -> BTreeMap<(usize, usize), Matrix<F>> {
    self.poset.covers().iter().map(|c| (*c, self.maps[c].clone())).collect()
  }

  /// The transposed system on the opposite poset: `Φᵀ(p,q)` becomes a map `G_q → G_p`.
  pub fn transpose(&self) -> Self {
    let op = self.poset.opposite();
    let maps = op.covers().iter().map(|&(q, p)| ((q, p), self.maps[&(p, q)].transpose())).collect();
    Self::new(op, self.dims.clone(), maps).expect("transposition preserves functoriality")
  }

  /// `(f^*G)_p = G_{f(p)}` along an order-preserving map `f : source → poset`.
  pub fn pullback(&self, source: &FinitePoset, f: &[usize]) -> Result<Self> {
    if !source.is_order_preserving(f, &self.poset) {
      return Err(Error::NotOrderPreserving(format!("map {f:?} into {:?}", self.poset.names())));
    }
    let dims = f.iter().map(|&x| self.dims[x]).collect();
    let maps = source.covers().iter().map(|&(p, q)| ((p, q), self.maps[&(f[p], f[q])].clone())).collect();
    Self::new(source.clone(), dims, maps)
  }

  /// Restriction to the induced subposet on `elements`.
  pub fn restrict(&self, elements: &[usize]) -> Self {
    let sub = self.poset.induced(elements);
    self.pullback(&sub, elements).expect("inclusions preserve order")
  }
}

/// A natural transformation `η : A → B` between systems on the same poset.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemMorphism<F> {
  pub components: Vec<Matrix<F>>,
}

impl<F: Field> SystemMorphism<F> {
  /// Checks shapes and `η_q Φ_A(p,q) = Φ_B(p,q) η_p` on covering pairs.
  pub fn check(&self, a: &CoefficientSystem<F>, b: &CoefficientSystem<F>) -> Result<()> {
    if a.poset != b.poset || self.components.len() != a.poset.len() {
      return Err(Error::NotNatural("systems live on different posets".into()));
    }
    for (p, m) in self.components.iter().enumerate() {
      if m.rows() != b.dim(p) || m.cols() != a.dim(p) {
        return Err(Error::DimensionMismatch(format!("component at {} has the wrong shape", a.poset.name(p))));
      }
    }
    for &(p, q) in a.poset.covers() {
      if &self.components[q] * &a.maps[&(p, q)] != &b.maps[&(p, q)] * &self.components[p] {
        return Err(Error::NotNatural(format!("square at {}→{} fails to commute", a.poset.name(p), a.poset.name(q))));
      }
    }
    Ok(())
  }

  pub fn identity(a: &CoefficientSystem<F>) -> Self { Self { components: a.dims.iter().map(|&n| Matrix::identity(n)).collect() } }

  pub fn compose(&self, next: &SystemMorphism<F>) -> Self {
    Self { components: self.components.iter().zip(&next.components).map(|(f, g)| g * f).collect() }
  }
}
