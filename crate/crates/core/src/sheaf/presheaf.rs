use std::collections::BTreeMap;

use super::topology::{OpenSet, UpperIdealTopology};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::order::{ChainSelector, CochainLayout, CoefficientSystem};
use crate::scalar::Field;

/// A presheaf of vector spaces on the upper-ideal topology.
///
/// Restrictions are stored only for the elementary steps `U → U∖{x}`, `x`
/// minimal in `U`; every other restriction is a composite of these. Commuting
/// elementary squares make the composite independent of the path.
#[derive(Clone, Debug, PartialEq)]
pub struct PosetSheaf<F> {
  topology: UpperIdealTopology,
  grading: Vec<Vec<usize>>,
  steps: BTreeMap<(OpenSet, usize), Matrix<F>>,
}

impl<F: Field> PosetSheaf<F> {
  /// `grading[i]` splits the sections over the `i`-th open into graded summands;
  /// a single entry means ungraded.
  pub fn new(topology: UpperIdealTopology, grading: Vec<Vec<usize>>, steps: BTreeMap<(OpenSet, usize), Matrix<F>>) -> Result<Self> {
    if grading.len() != topology.len() {
      return Err(Error::DimensionMismatch(format!("{} section spaces for {} opens", grading.len(), topology.len())));
    }
    let sheaf = Self { topology, grading, steps };
    let t = &sheaf.topology;
    for &u in t.opens() {
      let mins = t.minimal_elements(u);
      for &x in &mins {
        let m = sheaf.steps.get(&(u, x)).ok_or_else(|| Error::NotFunctorial(format!("missing restriction {} → {}", t.name_set(u), t.name_set(u & !(1 << x)))))?;
        if m.rows() != sheaf.dim(u & !(1 << x)) || m.cols() != sheaf.dim(u) {
          return Err(Error::DimensionMismatch(format!("restriction {} → {}", t.name_set(u), t.name_set(u & !(1 << x)))));
        }
      }
      for (i, &x) in mins.iter().enumerate() {
        for &y in &mins[i + 1..] {
          let (ux, uy) = (u & !(1 << x), u & !(1 << y));
          let via_x = &sheaf.steps[&(ux, y)] * &sheaf.steps[&(u, x)];
          let via_y = &sheaf.steps[&(uy, x)] * &sheaf.steps[&(u, y)];
          if via_x != via_y {
            return Err(Error::NotFunctorial(format!("restrictions from {} disagree", t.name_set(u))));
          }
        }
      }
    }
    Ok(sheaf)
  }

  pub fn topology(&self) -> &UpperIdealTopology { &self.topology }

  pub fn dim(&self, u: OpenSet) -> usize { self.grading(u).iter().sum() }

  pub fn grading(&self, u: OpenSet) -> &[usize] { &self.grading[self.topology.index_of(u).expect("open set")] }

  /// `F(↑x)`, the stalk at `x`.
  pub fn stalk_dim(&self, x: usize) -> usize { self.dim(self.topology.principal(x)) }

  /// Restriction `F(u) → F(v)` for opens `v ⊆ u`.
  pub fn restriction(&self, u: OpenSet, v: OpenSet) -> Matrix<F> {
    assert!(v & !u == 0, "restriction target must be contained in the source");
    let mut cur = u;
    let mut m = Matrix::identity(self.dim(u));
    while cur != v {
      let outside = cur & !v;
      let x = self.topology.minimal_elements(outside).into_iter().next().unwrap();
      m = &self.steps[&(cur, x)] * &m;
      cur &= !(1 << x);
    }
    m
  }
}

/// Outcome of the exhaustive axiom check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
  pub opens: usize,
  pub covers: usize,
  pub monopresheaf: bool,
  pub gluing: bool,
  /// First failing open and cover, by element names.
  pub failure: Option<String>,
}

impl AxiomReport {
  pub fn is_sheaf(&self) -> bool { self.monopresheaf && self.gluing }
}

/// Monopresheaf and gluing axioms over every open and every test cover.
pub fn check_sheaf_axioms<F: Field>(f: &PosetSheaf<F>) -> AxiomReport {
  let t = f.topology();
  let mut report = AxiomReport { opens: t.len(), covers: 0, monopresheaf: true, gluing: true, failure: None };
  for &u in t.opens() {
    if u == 0 {
      continue;
    }
    for cover in t.test_covers(u) {
      report.covers += 1;
      let r = cover.iter().map(|&v| f.restriction(u, v)).reduce(|a, b| a.vstack(&b)).unwrap();
      let d = overlap_difference(f, &cover);
      let injective = r.rank() == f.dim(u);
      let glues = (&d * &r).is_zero() && r.rank() == d.nullity();
      if (!injective || !glues) && report.failure.is_none() {
        let names: Vec<String> = cover.iter().map(|&v| t.name_set(v)).collect();
        report.failure = Some(format!("{} covered by {}", t.name_set(u), names.join(" ")));
      }
      report.monopresheaf &= injective;
      report.gluing &= glues;
    }
  }
  report
}

/// `(s_i) ↦ (s_i|U_ij − s_j|U_ij)_{i<j}`.
fn overlap_difference<F: Field>(f: &PosetSheaf<F>, cover: &[OpenSet]) -> Matrix<F> {
  let offsets: Vec<usize> = cover.iter().scan(0, |acc, &v| {
    let o = *acc;
    *acc += f.dim(v);
    Some(o)
  }).collect();
  let total: usize = cover.iter().map(|&v| f.dim(v)).sum();
  let mut d = Matrix::zeros(0, total);
  for i in 0..cover.len() {
    for j in i + 1..cover.len() {
      let w = cover[i] & cover[j];
      let mut row = Matrix::zeros(f.dim(w), total);
      row.set_block(0, offsets[i], &f.restriction(cover[i], w));
      row.set_block(0, offsets[j], &-&f.restriction(cover[j], w));
      d = d.vstack(&row);
    }
  }
  d
}

/// Every restriction from global sections is onto.
pub fn flasque_check<F: Field>(f: &PosetSheaf<F>) -> bool {
  let t = f.topology();
  t.opens().iter().all(|&u| f.restriction(t.whole(), u).rank() == f.dim(u))
}

/// Coordinates of `C^*(u; G)` inside `⊕_k C^k(or P; G)`, as `(degree, coordinate)`.
fn section_coordinates(layout: &CochainLayout, t: &UpperIdealTopology, u: OpenSet) -> Vec<(usize, usize)> {
  let y = ChainSelector::of_elements(t.poset(), &t.elements(u));
  (0..layout.degrees()).flat_map(|k| layout.coordinates(&y, k).into_iter().map(move |c| (k, c))).collect()
}

/// The sheaf `U ↦ C^*(U; G)` with restriction of cochains, graded by cochain degree.
pub fn sheaf_from_system<F: Field>(g: &CoefficientSystem<F>) -> PosetSheaf<F> {
  let t = UpperIdealTopology::new(g.poset().clone()).expect("coefficient systems live on small posets");
  let layout = CochainLayout::new(g);
  let coords: Vec<Vec<(usize, usize)>> = t.opens().iter().map(|&u| section_coordinates(&layout, &t, u)).collect();
  let grading = coords.iter().map(|c| (0..layout.degrees()).map(|k| c.iter().filter(|e| e.0 == k).count()).collect()).collect();
  let mut steps = BTreeMap::new();
  for (i, &u) in t.opens().iter().enumerate() {
    for x in t.minimal_elements(u) {
      let v = u & !(1 << x);
      let (from, to) = (&coords[i], &coords[t.index_of(v).unwrap()]);
      let m = Matrix::from_fn(to.len(), from.len(), |r, c| if to[r] == from[c] { F::one() } else { F::zero() });
      steps.insert((u, x), m);
    }
  }
  PosetSheaf::new(t, grading, steps).expect("restriction of cochains is functorial")
}

/// `G'_x = F(↑x)` with restrictions as structure maps.
pub fn system_from_sheaf<F: Field>(f: &PosetSheaf<F>) -> Result<CoefficientSystem<F>> {
  let t = f.topology();
  let p = t.poset();
  let dims = (0..p.len()).map(|x| f.stalk_dim(x)).collect();
  let maps = p.covers().iter().map(|&(x, y)| ((x, y), f.restriction(t.principal(x), t.principal(y)))).collect();
  CoefficientSystem::new(p.clone(), dims, maps)
}

/// `dim C^*(↑x; G) = Σ_{chains c ⊆ ↑x} dim G_{top c}` for every `x`: the closed
/// form of the round trip system → sheaf → system.
pub fn upper_ideal_cochain_dims<F: Field>(g: &CoefficientSystem<F>) -> Vec<usize> {
  let p = g.poset();
  (0..p.len())
    .map(|x| {
      let up = p.up_set(x);
      (0..p.len())
        .flat_map(|k| p.chains(k))
        .filter(|c| c.iter().all(|e| up.contains(e)))
        .map(|c| g.dim(*c.last().unwrap()))
        .sum()
    })
    .collect()
}

#[cfg(test)]
mod tests {
  use num_rational::BigRational;

  use super::*;
  use crate::order::FinitePoset;

  type Q = BigRational;

  fn wedge(a: usize, b: usize, c: usize) -> CoefficientSystem<Q> {
    let p = FinitePoset::new(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap();
    let maps = BTreeMap::from([((0, 2), Matrix::from_fn(c, a, |i, j| Q::from_integer(((i + j) % 2).into()))), ((1, 2), Matrix::from_fn(c, b, |i, j| Q::from_integer((i * j + 1).into())))]);
    CoefficientSystem::new(p, vec![a, b, c], maps).unwrap()
  }

  #[test]
  fn wedge_round_trip() {
    let g = wedge(1, 2, 3);
    let f = sheaf_from_system(&g);
    assert_eq!(f.stalk_dim(0), 1 + 2 * 3);
    assert_eq!(f.grading(f.topology().principal(0)), &[1 + 3, 3]);
    assert_eq!(f.stalk_dim(2), 3);
    let back = system_from_sheaf(&f).unwrap();
    assert_eq!(back.dims(), &[7, 8, 3]);
    assert_eq!(back.dims(), upper_ideal_cochain_dims(&g).as_slice());
    // restriction to ↑c keeps the vertex value at c and drops the edge
    let r = back.map(0, 2).unwrap();
    assert_eq!(r.rank(), 3);
    assert!(check_sheaf_axioms(&f).is_sheaf());
    assert!(flasque_check(&f));
  }

  #[test]
  fn point_round_trip_is_identity() {
    let p = FinitePoset::new(&["x"], &[] as &[(&str, &str)]).unwrap();
    let g = CoefficientSystem::<Q>::new(p, vec![2], BTreeMap::new()).unwrap();
    assert_eq!(system_from_sheaf(&sheaf_from_system(&g)).unwrap(), g);
  }

  #[test]
  fn zero_restriction_is_not_flasque() {
    let p = FinitePoset::new(&["a", "b"], &[("a", "b")]).unwrap();
    let t = UpperIdealTopology::new(p).unwrap();
    // opens ∅, {b}, {a,b}; F({a,b}) = 0 and F({b}) = Q
    let steps = BTreeMap::from([((0b11, 0), Matrix::zeros(1, 0)), ((0b10, 1), Matrix::zeros(0, 1))]);
    let f = PosetSheaf::<Q>::new(t, vec![vec![0], vec![1], vec![0]], steps).unwrap();
    assert!(check_sheaf_axioms(&f).is_sheaf());
    assert!(!flasque_check(&f));
  }

  #[test]
  fn non_sheaf_is_detected() {
    // on the discrete two-point space, F({a,b}) = 0 cannot glue sections over {a} and {b}
    let p = FinitePoset::new(&["a", "b"], &[] as &[(&str, &str)]).unwrap();
    let t = UpperIdealTopology::new(p).unwrap();
    let grading = t.opens().iter().map(|&u| vec![usize::from(u.count_ones() == 1)]).collect();
    let mut steps = BTreeMap::new();
    for &u in t.opens() {
      for x in t.minimal_elements(u) {
        let v = u & !(1 << x);
        steps.insert((u, x), Matrix::zeros(usize::from(v.count_ones() == 1), usize::from(u.count_ones() == 1)));
      }
    }
    let f = PosetSheaf::<Q>::new(t, grading, steps).unwrap();
    let report = check_sheaf_axioms(&f);
    assert!(report.monopresheaf && !report.gluing);
    assert!(report.failure.is_some());
  }

  #[test]
  fn zero_sheaf() {
    let p = FinitePoset::new(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap();
    let g = CoefficientSystem::<Q>::constant(p, 0);
    let f = sheaf_from_system(&g);
    assert!(flasque_check(&f) && check_sheaf_axioms(&f).is_sheaf());
  }
}
