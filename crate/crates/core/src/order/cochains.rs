use std::collections::{BTreeMap, BTreeSet};

use super::{CoefficientSystem, FinitePoset};
use crate::cochain::CochainComplex;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Field;

/// A set of simplices of the order complex, each a chain written bottom to top.
/// Need not be closed under faces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChainSelector {
  chains: BTreeSet<Vec<usize>>,
}

impl ChainSelector {
  pub fn new(poset: &FinitePoset, chains: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
    let mut set = BTreeSet::new();
    for c in chains {
      set.insert(poset.sort_chain(&c)?);
    }
    Ok(Self { chains: set })
  }

  /// Selector from element names.
  pub fn from_names<S: AsRef<str>>(poset: &FinitePoset, chains: &[Vec<S>]) -> Result<Self> {
    let idx: Result<Vec<Vec<usize>>> = chains.iter().map(|c| c.iter().map(|s| poset.index_of(s.as_ref())).collect()).collect();
    Self::new(poset, idx?)
  }

  pub fn empty() -> Self { Self::default() }

  /// Every simplex of the order complex.
  pub fn all(poset: &FinitePoset) -> Self { Self { chains: all_chains(poset).into_iter().collect() } }

  /// The order complex of the subposet on `elements`, as a subcomplex.
  pub fn of_elements(poset: &FinitePoset, elements: &[usize]) -> Self {
    Self { chains: all_chains(poset).into_iter().filter(|c| c.iter().all(|p| elements.contains(p))).collect() }
  }

  pub fn chains(&self) -> impl Iterator<Item = &Vec<usize>> { self.chains.iter() }

  pub fn len(&self) -> usize { self.chains.len() }

  pub fn is_empty(&self) -> bool { self.chains.is_empty() }

  pub fn contains(&self, chain: &[usize]) -> bool { self.chains.contains(chain) }

  pub fn union(&self, other: &Self) -> Self { Self { chains: self.chains.union(&other.chains).cloned().collect() } }

  pub fn intersection(&self, other: &Self) -> Self { Self { chains: self.chains.intersection(&other.chains).cloned().collect() } }

  pub fn difference(&self, other: &Self) -> Self { Self { chains: self.chains.difference(&other.chains).cloned().collect() } }

  pub fn complement(&self, poset: &FinitePoset) -> Self { Self::all(poset).difference(self) }

  pub fn is_subset(&self, other: &Self) -> bool { self.chains.is_subset(&other.chains) }

  /// Closed under taking faces.
  pub fn is_closed(&self) -> bool { self.chains.iter().all(|c| facets(c).all(|f| self.chains.contains(&f))) }

  /// Closed under taking cofaces in the order complex of `poset`.
  pub fn is_open(&self, poset: &FinitePoset) -> bool { self.complement(poset).is_closed() }

  /// All faces of selected simplices.
  pub fn closure(&self) -> Self {
    let mut out = BTreeSet::new();
    for c in &self.chains {
      for mask in 1u64..(1 << c.len()) {
        out.insert((0..c.len()).filter(|i| mask >> i & 1 == 1).map(|i| c[i]).collect());
      }
    }
    Self { chains: out }
  }

  /// A difference of two subcomplexes; exactly the selectors on which the
  /// compressed coboundary squares to zero for every system.
  pub fn is_locally_closed(&self) -> bool { self.closure().difference(self).is_closed() }
}

fn facets(c: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
  (0..if c.len() > 1 { c.len() } else { 0 }).map(move |i| {
    let mut f = c.to_vec();
    f.remove(i);
    f
  })
}

fn all_chains(poset: &FinitePoset) -> Vec<Vec<usize>> {
  let mut out = Vec::new();
  let mut k = 0;
  loop {
    let ck = poset.chains(k);
    if ck.is_empty() {
      return out;
    }
    out.extend(ck);
    k += 1;
  }
}

/// Coordinates for `C^k(or P; G) = ⊕_{p₀<⋯<p_k} G_{p_k}`: chains in lexicographic
/// order, each contributing a block of size `dim G_{p_k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainLayout {
  chains: Vec<Vec<Vec<usize>>>,
  lookup: Vec<BTreeMap<Vec<usize>, usize>>,
  offsets: Vec<Vec<usize>>,
  dims: Vec<usize>,
}

impl CochainLayout {
  pub fn new<F: Field>(g: &CoefficientSystem<F>) -> Self {
    let poset = g.poset();
    let mut chains = Vec::new();
    for k in 0..poset.height().map_or(0, |h| h + 1) {
      chains.push(poset.chains(k));
    }
    let lookup = chains.iter().map(|cs| cs.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect()).collect();
    let mut offsets = Vec::new();
    let mut dims = Vec::new();
    for cs in &chains {
      let mut off = Vec::with_capacity(cs.len());
      let mut total = 0;
      for c in cs {
        off.push(total);
        total += g.dim(*c.last().unwrap());
      }
      offsets.push(off);
      dims.push(total);
    }
    Self { chains, lookup, offsets, dims }
  }

  pub fn degrees(&self) -> usize { self.dims.len() }

  pub fn dim(&self, k: usize) -> usize { self.dims.get(k).copied().unwrap_or(0) }

  pub fn chains(&self, k: usize) -> &[Vec<usize>] { self.chains.get(k).map_or(&[], Vec::as_slice) }

  pub fn chain_index(&self, chain: &[usize]) -> Option<usize> { self.lookup.get(chain.len().checked_sub(1)?)?.get(chain).copied() }

  /// Coordinate range of the block of `chain`.
  pub fn block(&self, chain: &[usize]) -> Option<std::ops::Range<usize>> {
    let k = chain.len() - 1;
    let i = self.chain_index(chain)?;
    let end = self.offsets[k].get(i + 1).copied().unwrap_or(self.dims[k]);
    Some(self.offsets[k][i]..end)
  }

  /// Coordinates in degree `k` belonging to selected chains, ascending.
  pub fn coordinates(&self, y: &ChainSelector, k: usize) -> Vec<usize> {
    self.chains(k).iter().filter(|c| y.contains(c)).flat_map(|c| self.block(c).unwrap()).collect()
  }

  /// The matrix of the coboundary `C^k → C^{k+1}`: faces omitting a non-top
  /// vertex keep the value in the top space; omitting the top vertex routes the
  /// value through `Φ(p_k, p_{k+1})`, with the ordinary face sign `(-1)^{k+1}`.
  pub fn coboundary_matrix<F: Field>(&self, g: &CoefficientSystem<F>, k: usize) -> Matrix<F> {
    let mut m = Matrix::zeros(self.dim(k + 1), self.dim(k));
    for c in self.chains(k + 1) {
      let rows = self.block(c).unwrap();
      let top = *c.last().unwrap();
      for i in 0..c.len() {
        let mut face = c.clone();
        face.remove(i);
        let cols = self.block(&face).unwrap();
        let sign = F::sign(i % 2 == 1);
        if i + 1 < c.len() {
          for (r, col) in rows.clone().zip(cols) {
            m.add_at(r, col, sign.clone());
          }
        } else {
          let phi = g.map(*face.last().unwrap(), top).expect("chains are increasing");
          for (a, r) in rows.clone().enumerate() {
            for (b, col) in cols.clone().enumerate() {
              m.add_at(r, col, sign.clone() * phi.get(a, b).clone());
            }
          }
        }
      }
    }
    m
  }

  pub fn complex<F: Field>(&self, g: &CoefficientSystem<F>) -> CochainComplex<F> {
    let d = (0..self.degrees().saturating_sub(1)).map(|k| self.coboundary_matrix(g, k)).collect();
    CochainComplex::new(self.dims.clone(), d).expect("the order coboundary squares to zero")
  }

  /// Cochains supported on `y` with the compressed coboundary `P_Y δ P_Y`.
  pub fn selector_complex<F: Field>(&self, g: &CoefficientSystem<F>, y: &ChainSelector) -> Result<CochainComplex<F>> {
    if !y.is_locally_closed() {
      return Err(Error::NotLocallyClosed);
    }
    let coords: Vec<Vec<usize>> = (0..self.degrees()).map(|k| self.coordinates(y, k)).collect();
    let d = (0..self.degrees().saturating_sub(1))
      .map(|k| self.coboundary_matrix(g, k).select_rows(&coords[k + 1]).select_cols(&coords[k]))
      .collect();
    CochainComplex::new(coords.iter().map(Vec::len).collect(), d)
  }

  /// Extension by zero from `C^*(small)` into `C^*(large)`; its transpose is restriction.
  pub fn inclusion<F: Field>(&self, small: &ChainSelector, large: &ChainSelector) -> Vec<Matrix<F>> {
    (0..self.degrees())
      .map(|k| {
        let (s, l) = (self.coordinates(small, k), self.coordinates(large, k));
        Matrix::from_fn(l.len(), s.len(), |i, j| if l[i] == s[j] { F::one() } else { F::zero() })
      })
      .collect()
  }
}

/// A cochain: per `k`-chain, a vector in the space at its top element.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderCochain<F> {
  pub degree: usize,
  pub values: BTreeMap<Vec<usize>, Vec<F>>,
}

impl<F: Field> OrderCochain<F> {
  pub fn zero(degree: usize) -> Self { Self { degree, values: BTreeMap::new() } }

  pub fn from_coords(layout: &CochainLayout, degree: usize, x: &[F]) -> Self {
    let mut values = BTreeMap::new();
    for c in layout.chains(degree) {
      let v: Vec<F> = x[layout.block(c).unwrap()].to_vec();
      if v.iter().any(|t| !t.is_zero()) {
        values.insert(c.clone(), v);
      }
    }
    Self { degree, values }
  }

  pub fn to_coords(&self, layout: &CochainLayout, g: &CoefficientSystem<F>) -> Result<Vec<F>> {
    let mut x = vec![F::zero(); layout.dim(self.degree)];
    for (c, v) in &self.values {
      if c.len() != self.degree + 1 {
        return Err(Error::DimensionMismatch(format!("chain of length {} in a degree-{} cochain", c.len(), self.degree)));
      }
      let block = layout.block(c).ok_or_else(|| Error::SimplexNotFound(format!("{:?}", g.poset().chain_names(c))))?;
      if v.len() != block.len() {
        return Err(Error::DimensionMismatch(format!("value of length {} at a space of dimension {}", v.len(), block.len())));
      }
      x[block].clone_from_slice(v);
    }
    Ok(x)
  }
}

/// The coboundary evaluated directly on the values of `phi`, chain by chain.
pub fn coboundary<F: Field>(phi: &OrderCochain<F>, g: &CoefficientSystem<F>) -> Result<OrderCochain<F>> {
  let poset = g.poset();
  let k = phi.degree;
  let value = |c: &Vec<usize>| -> Vec<F> { phi.values.get(c).cloned().unwrap_or_else(|| vec![F::zero(); g.dim(*c.last().unwrap())]) };
  for (c, v) in &phi.values {
    if c.len() != k + 1 || !poset.is_chain(c) || v.len() != g.dim(*c.last().unwrap()) {
      return Err(Error::DimensionMismatch(format!("invalid value on {:?}", c)));
    }
  }
  let mut out = OrderCochain::zero(k + 1);
  for c in poset.chains(k + 1) {
    let top = *c.last().unwrap();
    let mut acc = vec![F::zero(); g.dim(top)];
    for i in 0..c.len() {
      let mut face = c.clone();
      face.remove(i);
      let sign = F::sign(i % 2 == 1);
      let v = if i + 1 < c.len() { value(&face) } else { g.map(*face.last().unwrap(), top).unwrap().mul_vec(&value(&face)) };
      for (a, x) in acc.iter_mut().zip(v) {
        *a = a.clone() + sign.clone() * x;
      }
    }
    if acc.iter().any(|x| !x.is_zero()) {
      out.values.insert(c, acc);
    }
  }
  Ok(out)
}

/// Dimensions of `H^k(or P; G)`.
pub fn order_cohomology<F: Field>(g: &CoefficientSystem<F>) -> Vec<usize> { CochainLayout::new(g).complex(g).cohomology_dims() }

/// Dimensions of the cohomology of cochains supported on a locally closed `y`.
pub fn selector_cohomology<F: Field>(g: &CoefficientSystem<F>, y: &ChainSelector) -> Result<Vec<usize>> {
  Ok(CochainLayout::new(g).selector_complex(g, y)?.cohomology_dims())
}

/// Representative cocycles of a basis of `H^k(Y; G)`.
pub fn cohomology_representatives<F: Field>(g: &CoefficientSystem<F>, y: &ChainSelector, k: usize) -> Result<Vec<OrderCochain<F>>> {
  let layout = CochainLayout::new(g);
  let complex = layout.selector_complex(g, y)?;
  let coords = layout.coordinates(y, k);
  let basis = complex.cohomology_basis(k);
  Ok(
    basis
      .columns()
      .iter()
      .map(|col| {
        let mut full = vec![F::zero(); layout.dim(k)];
        for (c, x) in coords.iter().zip(col) {
          full[*c] = x.clone();
        }
        OrderCochain::from_coords(&layout, k, &full)
      })
      .collect(),
  )
}

#[cfg(test)]
mod tests {
  use num_rational::BigRational;

  use super::*;

  type Q = BigRational;

  fn q(n: i64) -> Q { Q::from_integer(n.into()) }

  fn wedge() -> FinitePoset { FinitePoset::new(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap() }

  fn wedge_system() -> CoefficientSystem<Q> {
    let maps = BTreeMap::from([((0, 2), Matrix::from_rows(1, vec![vec![q(2)]])), ((1, 2), Matrix::from_rows(1, vec![vec![q(3)]]))]);
    CoefficientSystem::new(wedge(), vec![1, 1, 1], maps).unwrap()
  }

  #[test]
  fn wedge_coboundary() {
    let g = wedge_system();
    let phi = OrderCochain { degree: 0, values: BTreeMap::from([(vec![0], vec![q(1)]), (vec![1], vec![q(1)]), (vec![2], vec![q(5)])]) };
    let d = coboundary(&phi, &g).unwrap();
    assert_eq!(d.values[&vec![0, 2]], vec![q(3)]);
    assert_eq!(d.values[&vec![1, 2]], vec![q(2)]);
    let layout = CochainLayout::new(&g);
    let x = phi.to_coords(&layout, &g).unwrap();
    let y = layout.coboundary_matrix(&g, 0).mul_vec(&x);
    assert_eq!(OrderCochain::from_coords(&layout, 1, &y), d);
  }

  #[test]
  fn wedge_with_zero_ends() {
    let maps = BTreeMap::new();
    let g = CoefficientSystem::<Q>::new(wedge(), vec![0, 0, 1], maps).unwrap();
    assert_eq!(order_cohomology(&g), vec![0, 1]);
    let reps = cohomology_representatives(&g, &ChainSelector::all(g.poset()), 1).unwrap();
    assert_eq!(reps.len(), 1);
  }

  #[test]
  fn selectors() {
    let p = wedge();
    let c = ChainSelector::from_names(&p, &[vec!["c"]]).unwrap();
    assert!(c.is_closed() && !c.is_open(&p) && c.is_locally_closed());
    let star = c.complement(&p);
    assert!(star.is_open(&p) || star.is_locally_closed());
    let odd = ChainSelector::from_names(&p, &[vec!["a"], vec!["b", "c"]]).unwrap();
    assert!(odd.is_locally_closed());
    // an edge with only one endpoint plus the opposite endpoint is not convex:
    // closure minus the set must be closed
    let chain = FinitePoset::new(&["x", "y", "z"], &[("x", "y"), ("y", "z")]).unwrap();
    let bad = ChainSelector::from_names(&chain, &[vec!["x"], vec!["x", "y", "z"]]).unwrap();
    assert!(!bad.is_locally_closed());
    let g = CoefficientSystem::<Q>::constant(chain, 1);
    assert_eq!(selector_cohomology(&g, &bad), Err(Error::NotLocallyClosed));
    assert!(ChainSelector::from_names(&p, &[vec!["a", "b"]]).is_err());
  }
}
