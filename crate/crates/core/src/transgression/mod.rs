//! Cycle assignments over posets of chain complexes, their transgressions and
//! path independence.

mod system;

use std::collections::BTreeMap;

pub use system::{ChainComplex, ChainSystem, TriangulationSystem};

use crate::error::{Error, Result};
use crate::linalg::{min_norm_solve, Matrix};
use crate::order::CochainLayout;
use crate::scalar::Field;

/// A cycle `ζ(p) ∈ Z_i(p)` at every element, in coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct CycleAssignment<F> {
  pub degree: usize,
  pub values: Vec<Vec<F>>,
}

/// A 1-cochain of `(i+1)`-chains: `γ(pq) ∈ C_{i+1}(q)` for every `p < q`.
#[derive(Clone, Debug, PartialEq)]
pub struct Transgression<F> {
  /// Chain degree `i + 1` of the values.
  pub degree: usize,
  pub values: BTreeMap<(usize, usize), Vec<F>>,
}

/// Outcome of the path-independence test.
#[derive(Clone, Debug, PartialEq)]
pub struct PathIndependence<F> {
  pub independent: bool,
  /// First chain `p < q < r` with `γ(pr) ≠ γ(qr) + Φ(q,r)γ(pq)`, and the defect
  /// `(δγ)(pqr) = γ(qr) − γ(pr) + Φ(q,r)γ(pq)`.
  pub certificate: Option<([usize; 3], Vec<F>)>,
}

fn edge_name<F: Field>(s: &ChainSystem<F>, p: usize, q: usize) -> String { format!("{}→{}", s.poset().name(p), s.poset().name(q)) }

fn strict_pairs<F: Field>(s: &ChainSystem<F>) -> Vec<(usize, usize)> { s.poset().chains(1).into_iter().map(|c| (c[0], c[1])).collect() }

/// `(δζ)(pq) = ζ(q) − Φ(p,q)ζ(p)`.
pub fn edge_difference<F: Field>(s: &ChainSystem<F>, zeta: &CycleAssignment<F>, p: usize, q: usize) -> Vec<F> {
  let pushed = s.map(p, q, zeta.degree).mul_vec(&zeta.values[p]);
  zeta.values[q].iter().zip(pushed).map(|(a, b)| a.clone() - b).collect()
}

/// Values are cycles of the right length and all represent one class.
pub fn validate_assignment<F: Field>(s: &ChainSystem<F>, zeta: &CycleAssignment<F>) -> Result<()> {
  let i = zeta.degree;
  if zeta.values.len() != s.poset().len() {
    return Err(Error::InvalidCycleAssignment(format!("{} values for {} elements", zeta.values.len(), s.poset().len())));
  }
  for (p, v) in zeta.values.iter().enumerate() {
    let c = s.complex(p);
    if v.len() != c.dim(i) {
      return Err(Error::DimensionMismatch(format!("value at {} has length {}, expected {}", s.poset().name(p), v.len(), c.dim(i))));
    }
    if !c.is_cycle(i, v) {
      return Err(Error::InvalidCycleAssignment(format!("value at {} is not a cycle", s.poset().name(p))));
    }
  }
  for (p, q) in strict_pairs(s) {
    if !s.complex(q).is_boundary(i, &edge_difference(s, zeta, p, q)) {
      return Err(Error::InvalidCycleAssignment(format!("difference on {} is not a boundary", edge_name(s, p, q))));
    }
  }
  Ok(())
}

/// Edge by edge, the least-norm `∂`-lift of `ζ(q) − Φ(p,q)ζ(p)`.
pub fn transgress<F: Field>(s: &ChainSystem<F>, zeta: &CycleAssignment<F>) -> Result<Transgression<F>> {
  validate_assignment(s, zeta)?;
  let i = zeta.degree;
  let mut values = BTreeMap::new();
  for (p, q) in strict_pairs(s) {
    let lift = min_norm_solve(&s.complex(q).boundary(i + 1), &edge_difference(s, zeta, p, q))
      .ok_or_else(|| Error::InvalidCycleAssignment(format!("difference on {} is not a boundary", edge_name(s, p, q))))?;
    values.insert((p, q), lift);
  }
  Ok(Transgression { degree: i + 1, values })
}

/// `∂γ(pq) = ζ(q) − Φ(p,q)ζ(p)` on every edge.
pub fn is_transgression<F: Field>(s: &ChainSystem<F>, zeta: &CycleAssignment<F>, gamma: &Transgression<F>) -> bool {
  strict_pairs(s).into_iter().all(|(p, q)| {
    gamma.values.get(&(p, q)).is_some_and(|g| s.complex(q).boundary(gamma.degree).mul_vec(g) == edge_difference(s, zeta, p, q))
  })
}

/// `(δγ)(pqr) = γ(qr) − γ(pr) + Φ(q,r)γ(pq)` on every 2-chain.
pub fn coboundary_of_transgression<F: Field>(s: &ChainSystem<F>, gamma: &Transgression<F>) -> BTreeMap<[usize; 3], Vec<F>> {
  let mut out = BTreeMap::new();
  for c in s.poset().chains(2) {
    let (p, q, r) = (c[0], c[1], c[2]);
    let pushed = s.map(q, r, gamma.degree).mul_vec(&gamma.values[&(p, q)]);
    let v: Vec<F> = gamma.values[&(q, r)]
      .iter()
      .zip(&gamma.values[&(p, r)])
      .zip(pushed)
      .map(|((a, b), c)| a.clone() - b.clone() + c)
      .collect();
    out.insert([p, q, r], v);
  }
  out
}

pub fn is_path_independent<F: Field>(s: &ChainSystem<F>, gamma: &Transgression<F>) -> PathIndependence<F> {
  let certificate = coboundary_of_transgression(s, gamma).into_iter().find(|(_, v)| v.iter().any(|x| !x.is_zero()));
  PathIndependence { independent: certificate.is_none(), certificate }
}

fn block_diagonal_over_elements<F: Field>(s: &ChainSystem<F>, f: impl Fn(usize) -> Matrix<F>) -> Matrix<F> {
  Matrix::block_diagonal(&(0..s.poset().len()).map(f).collect::<Vec<_>>())
}

/// Basis of `ker δ⁰` on cycle-valued 0-cochains: families `ζ(p) ∈ Z_i(p)` with
/// `ζ(q) = Φ(p,q)ζ(p)` on every covering pair. Columns live in `⊕_p C_i(p)`.
pub fn kernel_delta_z<F: Field>(s: &ChainSystem<F>, i: usize) -> Matrix<F> {
  let layout = CochainLayout::new(&s.coefficient_system(i));
  let g = s.coefficient_system(i);
  let total = layout.dim(0);
  let cycles = block_diagonal_over_elements(s, |p| s.complex(p).boundary(i));
  let delta = if layout.degrees() > 1 { layout.coboundary_matrix(&g, 0) } else { Matrix::zeros(0, total) };
  cycles.vstack(&delta).kernel()
}

/// Embedding of `Z_{i+1}`-valued cochains of order degree `k` into all cochains.
fn cycle_valued_embedding<F: Field>(s: &ChainSystem<F>, layout: &CochainLayout, i: usize, k: usize) -> Matrix<F> {
  let blocks: Vec<Matrix<F>> = layout.chains(k).iter().map(|c| s.complex(*c.last().unwrap()).cycles(i)).collect();
  if blocks.is_empty() {
    return Matrix::zeros(layout.dim(k), 0);
  }
  Matrix::block_diagonal(&blocks)
}

/// The joint system `∂γ = δζ, δγ = 0` in the unknown `γ ∈ C^1(or P; C_{i+1})`.
fn joint_system<F: Field>(s: &ChainSystem<F>, i: usize) -> (CochainLayout, Matrix<F>) {
  let g = s.coefficient_system(i + 1);
  let layout = CochainLayout::new(&g);
  let blocks: Vec<Matrix<F>> = layout.chains(1).iter().map(|c| s.complex(c[1]).boundary(i + 1)).collect();
  let n = layout.dim(1);
  let boundary = if blocks.is_empty() { Matrix::zeros(0, n) } else { Matrix::block_diagonal(&blocks) };
  let delta = if layout.degrees() > 2 { layout.coboundary_matrix(&g, 1) } else { Matrix::zeros(0, n) };
  (layout, boundary.vstack(&delta))
}

fn right_hand_side<F: Field>(s: &ChainSystem<F>, zeta: &CycleAssignment<F>, layout: &CochainLayout) -> Vec<F> {
  let mut b = Vec::new();
  for c in layout.chains(1) {
    b.extend(edge_difference(s, zeta, c[0], c[1]));
  }
  let twos: usize = layout.chains(2).iter().map(|c| s.complex(c[2]).dim(zeta.degree + 1)).sum();
  b.extend((0..twos).map(|_| F::zero()));
  b
}

/// The least-norm solution of `∂γ = δζ, δγ = 0`, or `None` when no path-independent
/// transgression exists.
pub fn find_path_independent<F: Field>(s: &ChainSystem<F>, zeta: &CycleAssignment<F>) -> Result<Option<Transgression<F>>> {
  for (p, v) in zeta.values.iter().enumerate() {
    if !s.complex(p).is_cycle(zeta.degree, v) {
      return Err(Error::InvalidCycleAssignment(format!("value at {} is not a cycle", s.poset().name(p))));
    }
  }
  let (layout, a) = joint_system(s, zeta.degree);
  let b = right_hand_side(s, zeta, &layout);
  Ok(min_norm_solve(&a, &b).map(|x| unpack(&layout, zeta.degree + 1, &x)))
}

fn unpack<F: Field>(layout: &CochainLayout, degree: usize, x: &[F]) -> Transgression<F> {
  let values = layout.chains(1).iter().map(|c| ((c[0], c[1]), x[layout.block(c).unwrap()].to_vec())).collect();
  Transgression { degree, values }
}

/// Dimension of the space of path-independent transgressions of a fixed
/// assignment: `dim ker δ¹` on `Z_{i+1}`-valued 1-cochains.
pub fn path_independent_solution_dim<F: Field>(s: &ChainSystem<F>, i: usize) -> usize { joint_system(s, i).1.nullity() }

/// `dim δ⁰(Z^{0,i+1})`, the coboundaries among cycle-valued 1-cochains.
pub fn delta_z_image_dim<F: Field>(s: &ChainSystem<F>, i: usize) -> usize {
  let g = s.coefficient_system(i + 1);
  let layout = CochainLayout::new(&g);
  if layout.degrees() < 2 {
    return 0;
  }
  (&layout.coboundary_matrix(&g, 0) * &cycle_valued_embedding(s, &layout, i + 1, 0)).rank()
}

/// Result of the canonical construction over a poset with least element `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalTransgression<F> {
  pub base: usize,
  /// Base cycle `z ∈ [ζ(p)]` actually used.
  pub base_cycle: Vec<F>,
  /// `h(q)`: least-norm lift of `ζ(q) − Φ(p,q)z`.
  pub lifts: Vec<Vec<F>>,
  /// `γ = δ⁰h`.
  pub gamma: Transgression<F>,
}

/// `γ = δ⁰h` with `h(q)` the least-norm lift of `ζ(q) − Φ(p,q)z`, `p` the least
/// element. Without an explicit `z`, uses the harmonic representative of `[ζ(p)]`.
pub fn canonical_fixed_complex_transgression<F: Field>(
  s: &ChainSystem<F>,
  zeta: &CycleAssignment<F>,
  base_cycle: Option<&[F]>,
) -> Result<CanonicalTransgression<F>> {
  validate_assignment(s, zeta)?;
  let i = zeta.degree;
  let p = s.poset().minimum().ok_or(Error::NoUniqueMinimum)?;
  let base = s.complex(p);
  let z = match base_cycle {
    Some(z) => {
      if z.len() != base.dim(i) || !base.is_cycle(i, z) {
        return Err(Error::InvalidCycleAssignment("base cycle is not a cycle of the least complex".into()));
      }
      let diff: Vec<F> = zeta.values[p].iter().zip(z).map(|(a, b)| a.clone() - b.clone()).collect();
      if !base.is_boundary(i, &diff) {
        return Err(Error::NotHomologous("base cycle".into()));
      }
      z.to_vec()
    },
    None => base.harmonic(i, &zeta.values[p]),
  };
  let mut lifts = Vec::with_capacity(s.poset().len());
  for q in 0..s.poset().len() {
    let pushed = s.map(p, q, i).mul_vec(&z);
    let target: Vec<F> = zeta.values[q].iter().zip(pushed).map(|(a, b)| a.clone() - b).collect();
    let h = min_norm_solve(&s.complex(q).boundary(i + 1), &target)
      .ok_or_else(|| Error::InvalidCycleAssignment(format!("value at {} is not homologous to the base cycle", s.poset().name(q))))?;
    lifts.push(h);
  }
  let mut values = BTreeMap::new();
  for (q, r) in strict_pairs(s) {
    let pushed = s.map(q, r, i + 1).mul_vec(&lifts[q]);
    values.insert((q, r), lifts[r].iter().zip(pushed).map(|(a, b)| a.clone() - b).collect());
  }
  Ok(CanonicalTransgression { base: p, base_cycle: z, lifts, gamma: Transgression { degree: i + 1, values } })
}
