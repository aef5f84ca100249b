//! Euler cycles and their canonical party-local transgressions under subdivision.

mod lift;

use std::collections::BTreeMap;

pub use lift::{average_tree_lift, min_norm_lift, tree_lift, PartyGraph, DEFAULT_TREE_CAP};

use crate::complex::{Chain, OrientedComplex, Simplex, Vertex};
use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::subdivision::SubdivisionMap;

const MAX_SUBSET_PARTS: usize = 20;

/// The Euler cycle `e(X) = Σ_v e(v,X) v` of a complex.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerCycle<F> {
  chain: Chain<F>,
}

impl<F: Field> EulerCycle<F> {
  pub fn chain(&self) -> &Chain<F> { &self.chain }

  pub fn into_chain(self) -> Chain<F> { self.chain }

  pub fn coefficient(&self, v: &Vertex) -> F { self.chain.coefficient(&Simplex::vertex(v.clone())) }

  /// Sum of the coefficients, which is the Euler characteristic.
  pub fn total(&self) -> F { self.chain.mass() }
}

/// Each simplex splits its signed unit mass `(-1)^k` evenly among its `k + 1` vertices.
pub fn euler_cycle<F: Field>(x: &OrientedComplex) -> EulerCycle<F> {
  let mut acc: BTreeMap<&Vertex, F> = BTreeMap::new();
  for s in x.all_simplices() {
    let share = F::sign(s.dim() % 2 == 1) * F::recip_of_count(s.dim() + 1);
    for v in s.vertices() {
      let slot = acc.entry(v).or_insert_with(F::zero);
      *slot = slot.clone() + share.clone();
    }
  }
  let chain = Chain::from_terms(0, acc.into_iter().map(|(v, x)| (Simplex::vertex(v.clone()), x))).expect("vertices have degree 0");
  EulerCycle { chain }
}

/// `e(v,X)` computed from the link of `v` alone.
pub fn link_local_coefficient<F: Field>(v: &Vertex, x: &OrientedComplex) -> Result<F> {
  let link = x.link(v)?;
  let mut c = F::one();
  for k in 0..link.dim().map_or(0, |d| d + 1) {
    c = c + F::sign(k % 2 == 0) * F::from_int(link.count(k) as i64) * F::recip_of_count(k + 2);
  }
  Ok(c)
}

/// Alternating sum of `e` over the nonempty intersections of subfamilies of `parts`.
///
/// Brute-force subset enumeration; limited to 20 parts.
pub fn inclusion_exclusion_euler<F: Field>(ambient: &OrientedComplex, parts: &[OrientedComplex]) -> Result<Chain<F>> {
  if let Some(i) = parts.iter().position(|p| !p.is_subcomplex_of(ambient)) {
    return Err(Error::NotASubcomplex(format!("part {i}")));
  }
  check_part_count(parts.len())?;
  let mut total = Chain::zero(0);
  for mask in 1u32..(1 << parts.len()) {
    let mut members = (0..parts.len()).filter(|i| mask >> i & 1 == 1);
    let first = parts[members.next().unwrap()].clone();
    let meet = members.fold(first, |acc, i| acc.intersection(&parts[i]));
    if meet.is_empty() {
      continue;
    }
    let e = euler_cycle::<F>(&meet).into_chain();
    total = if mask.count_ones() % 2 == 1 { total.add(&e)? } else { total.sub(&e)? };
  }
  Ok(total)
}

fn check_part_count(n: usize) -> Result<()> {
  if n > MAX_SUBSET_PARTS {
    return Err(Error::DimensionMismatch(format!("subset enumeration is limited to {MAX_SUBSET_PARTS} parts, got {n}")));
  }
  Ok(())
}

/// Möbius coefficients of the maximal-face cover: `e(Y) = Σ_ρ c(ρ) e(closure ρ)`,
/// collecting subset intersections with equal vertex set.
pub fn maximal_face_coefficients(y: &OrientedComplex) -> Result<BTreeMap<Simplex, i64>> {
  let maximal = y.maximal_simplices();
  check_part_count(maximal.len())?;
  let mut coeffs: BTreeMap<Simplex, i64> = BTreeMap::new();
  for mask in 1u32..(1 << maximal.len()) {
    let mut members = (0..maximal.len()).filter(|i| mask >> i & 1 == 1);
    let first = Some(maximal[members.next().unwrap()].clone());
    let Some(meet) = members.fold(first, |acc, i| acc.and_then(|a| a.intersection(&maximal[i]))) else { continue };
    *coeffs.entry(meet).or_insert(0) += if mask.count_ones() % 2 == 1 { 1 } else { -1 };
  }
  coeffs.retain(|_, c| *c != 0);
  Ok(coeffs)
}

/// Calibrated Euler cycle of a closed simplex: `(Σ v)/(k+1)`.
pub fn barycenter<F: Field>(s: &Simplex) -> Chain<F> {
  let share = F::recip_of_count(s.dim() + 1);
  Chain::from_terms(0, s.vertices().iter().map(|v| (Simplex::vertex(v.clone()), share.clone()))).expect("vertices have degree 0")
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LiftMode {
  /// Mean of the tree lifts over all spanning trees of each party.
  #[default]
  TreeAverage,
  /// Least-norm lift in each party's edge space.
  MinNorm,
}

/// How `e(X) − Φe(Y)` is split into party-local terms.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Decomposition {
  /// One term per coarse face `τ` with sign `(-1)^{dim τ}`.
  #[default]
  FaceWise,
  /// One term per intersection of maximal coarse faces, with Möbius multiplicity.
  InclusionExclusion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TransgressOptions {
  pub lift: LiftMode,
  pub decomposition: Decomposition,
  pub tree_cap: u64,
}

impl Default for TransgressOptions {
  fn default() -> Self { Self { lift: LiftMode::default(), decomposition: Decomposition::default(), tree_cap: DEFAULT_TREE_CAP } }
}

impl TransgressOptions {
  pub fn with_lift(lift: LiftMode) -> Self { Self { lift, ..Self::default() } }
}

/// One local term: `coefficient · lift` where `∂ lift = difference`.
#[derive(Clone, Debug, PartialEq)]
pub struct PartySummand<F> {
  pub coarse_simplex: Simplex,
  pub coefficient: F,
  /// `e(X|τ) − Φ(e(τ))`, supported on the fine vertices over `τ`.
  pub difference: Chain<F>,
  pub lift: Chain<F>,
}

/// A 1-chain `γ` on the fine complex with `∂γ = e(X) − Φe(Y)`, with its local summands.
#[derive(Clone, Debug, PartialEq)]
pub struct TransgressionChain<F> {
  pub gamma: Chain<F>,
  pub summands: Vec<PartySummand<F>>,
}

/// `e(fine) − Φ(e(coarse))`.
pub fn euler_difference<F: Field>(s: &SubdivisionMap<F>) -> Result<Chain<F>> {
  let coarse = euler_cycle::<F>(s.coarse()).into_chain();
  euler_cycle::<F>(s.fine()).into_chain().sub(&s.apply(&coarse)?)
}

/// Local terms `(τ, c_τ)` with `e(X) − Φe(Y) = Σ c_τ (e(X|τ) − Φe(τ))`.
pub fn local_terms<F: Field>(y: &OrientedComplex, decomposition: Decomposition) -> Result<Vec<(Simplex, F)>> {
  Ok(match decomposition {
    Decomposition::FaceWise => y.all_simplices().map(|t| (t.clone(), F::sign(t.dim() % 2 == 1))).collect(),
    Decomposition::InclusionExclusion => {
      maximal_face_coefficients(y)?.into_iter().map(|(t, c)| (t, F::from_int(c))).collect()
    },
  })
}

/// Party-local transgression of the Euler cycle along a subdivision.
pub fn transgress_euler<F: Field>(s: &SubdivisionMap<F>, options: &TransgressOptions) -> Result<TransgressionChain<F>> {
  let mut gamma = Chain::zero(1);
  let mut summands = Vec::new();
  for (tau, coefficient) in local_terms::<F>(s.coarse(), options.decomposition)? {
    let local = s.restricted_to(&tau);
    let difference = euler_cycle::<F>(&local).into_chain().sub(&s.apply(&barycenter(&tau))?)?;
    if difference.is_zero() {
      continue;
    }
    if !difference.mass().is_zero() {
      return Err(Error::NonzeroMass);
    }
    let graph = PartyGraph::skeleton(&local);
    let lift = match options.lift {
      LiftMode::TreeAverage => average_tree_lift(&graph, &difference, options.tree_cap)?,
      LiftMode::MinNorm => min_norm_lift(&graph, &difference)?,
    };
    gamma = gamma.add(&lift.scale(&coefficient))?;
    summands.push(PartySummand { coarse_simplex: tau, coefficient, difference, lift });
  }
  if s.fine().boundary(&gamma)? != euler_difference(s)? {
    return Err(Error::InvariantViolation("local terms do not sum to the Euler difference".into()));
  }
  Ok(TransgressionChain { gamma, summands })
}

#[cfg(test)]
mod tests {
  use num_rational::BigRational;

  use super::*;
  use crate::subdivision::{barycentric_subdivide, stellar_subdivide};

  type Q = BigRational;

  fn q(n: i64, d: i64) -> Q { Q::new(n.into(), d.into()) }

  fn s(vs: &[&str]) -> Simplex { Simplex::new(vs.iter().copied()).unwrap() }

  fn starred_triangle() -> SubdivisionMap<Q> {
    let x = OrientedComplex::from_maximal([["a", "b", "c"]]).unwrap();
    stellar_subdivide(&x, &s(&["a", "b", "c"]), &"w".into()).unwrap()
  }

  #[test]
  fn calibration_and_examples() {
    let tri = OrientedComplex::from_maximal([["a", "b", "c"]]).unwrap();
    assert_eq!(euler_cycle::<Q>(&tri).into_chain(), barycenter(&s(&["a", "b", "c"])));
    let circle = OrientedComplex::from_maximal([["a", "b"], ["b", "c"], ["a", "c"]]).unwrap();
    assert!(euler_cycle::<Q>(&circle).chain().is_zero());
    let e = euler_cycle::<Q>(starred_triangle().fine());
    assert_eq!(e.coefficient(&"a".into()), q(1, 6));
    assert_eq!(e.coefficient(&"w".into()), q(1, 2));
    assert_eq!(e.total(), q(1, 1));
    assert!(euler_cycle::<Q>(&OrientedComplex::empty()).chain().is_zero());
  }

  #[test]
  fn link_formula() {
    let x = OrientedComplex::with_vertices(["p"], vec![]).unwrap();
    assert_eq!(link_local_coefficient::<Q>(&"p".into(), &x).unwrap(), q(1, 1));
    let circle = OrientedComplex::from_maximal([["a", "b"], ["b", "c"], ["a", "c"]]).unwrap();
    assert_eq!(link_local_coefficient::<Q>(&"a".into(), &circle).unwrap(), q(0, 1));
    let fine = starred_triangle().fine().clone();
    assert_eq!(link_local_coefficient::<Q>(&"w".into(), &fine).unwrap(), q(1, 2));
    assert!(link_local_coefficient::<Q>(&"z".into(), &fine).is_err());
  }

  #[test]
  fn inclusion_exclusion() {
    let path = OrientedComplex::from_maximal([["a", "b"], ["b", "c"]]).unwrap();
    let parts: Vec<_> = path.maximal_simplices().iter().map(OrientedComplex::closure_of).collect();
    assert_eq!(inclusion_exclusion_euler::<Q>(&path, &parts).unwrap(), euler_cycle::<Q>(&path).into_chain());
    assert_eq!(inclusion_exclusion_euler::<Q>(&path, std::slice::from_ref(&path)).unwrap(), euler_cycle::<Q>(&path).into_chain());
    let other = OrientedComplex::from_maximal([["x", "y"]]).unwrap();
    assert!(matches!(inclusion_exclusion_euler::<Q>(&path, &[other]), Err(Error::NotASubcomplex(_))));
  }

  #[test]
  fn midpoint_and_identity_vanish() {
    let edge = OrientedComplex::from_maximal([["a", "b"]]).unwrap();
    let sd = stellar_subdivide::<Q>(&edge, &s(&["a", "b"]), &"m".into()).unwrap();
    assert!(transgress_euler(&sd, &TransgressOptions::default()).unwrap().gamma.is_zero());
    let id = SubdivisionMap::<Q>::identity(&edge);
    let t = transgress_euler(&id, &TransgressOptions::default()).unwrap();
    assert!(t.gamma.is_zero() && t.summands.is_empty());
  }

  #[test]
  fn starred_triangle_transgression() {
    let sd = starred_triangle();
    let expected = Chain::from_terms(1, [s(&["a", "w"]), s(&["b", "w"]), s(&["c", "w"])].map(|t| (t, q(1, 6)))).unwrap();
    for lift in [LiftMode::TreeAverage, LiftMode::MinNorm] {
      for decomposition in [Decomposition::FaceWise, Decomposition::InclusionExclusion] {
        let t = transgress_euler(&sd, &TransgressOptions { lift, decomposition, ..Default::default() }).unwrap();
        assert_eq!(t.gamma, expected);
        assert_eq!(t.summands.len(), 1);
      }
    }
  }

  #[test]
  fn barycentric_modes_agree() {
    let x = OrientedComplex::from_maximal([["a", "b", "c"], ["b", "c", "d"]]).unwrap();
    let sd = barycentric_subdivide::<Q>(&x).unwrap();
    let avg = transgress_euler(&sd, &TransgressOptions::with_lift(LiftMode::TreeAverage)).unwrap();
    let mn = transgress_euler(&sd, &TransgressOptions::with_lift(LiftMode::MinNorm)).unwrap();
    assert_eq!(avg.gamma, mn.gamma);
    let ie = TransgressOptions { decomposition: Decomposition::InclusionExclusion, ..TransgressOptions::with_lift(LiftMode::MinNorm) };
    assert_eq!(sd.fine().boundary(&transgress_euler(&sd, &ie).unwrap().gamma).unwrap(), euler_difference(&sd).unwrap());
  }
}
