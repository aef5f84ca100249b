use std::collections::BTreeMap;

use transgress_core::linalg::Matrix;
use transgress_core::order::{CoefficientSystem, FinitePoset};
use transgress_core::subdivision::SubdivisionScript;
use transgress_core::euler::euler_cycle;
use transgress_core::transgression::{CycleAssignment, TriangulationSystem};
use transgress_core::OrientedComplex;

use crate::Q;

pub fn triangle() -> OrientedComplex { OrientedComplex::from_maximal([["a", "b", "c"]]).unwrap() }

pub fn star_center() -> SubdivisionScript { SubdivisionScript::parse("star a,b,c w").unwrap() }

/// Corpus of small complexes used by the exhaustive identity checks.
pub fn complexes() -> Vec<(&'static str, OrientedComplex)> {
  let m = |s: &[&[&str]]| OrientedComplex::from_maximal(s.iter().map(|f| f.to_vec())).unwrap();
  vec![
    ("point", m(&[&["a"]])),
    ("edge", m(&[&["a", "b"]])),
    ("triangle", triangle()),
    ("tetrahedron", m(&[&["a", "b", "c", "d"]])),
    ("circle", m(&[&["a", "b"], &["b", "c"], &["a", "c"]])),
    ("sphere", m(&[&["a", "b", "c"], &["a", "b", "d"], &["a", "c", "d"], &["b", "c", "d"]])),
    ("bowtie", m(&[&["a", "b", "c"], &["c", "d", "e"]])),
    ("two_points", m(&[&["a"], &["b"]])),
    ("square", m(&[&["a", "b", "c"], &["a", "c", "d"]])),
    ("annulus", m(&[&["a", "b", "e"], &["b", "e", "f"], &["b", "c", "f"], &["c", "f", "g"], &["c", "a", "g"], &["a", "g", "e"]])),
  ]
}

/// `a, b ≤ c` with the given dimensions and maps into `c`.
pub fn wedge_poset() -> FinitePoset { FinitePoset::new(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap() }

/// The wedge with `V_a = V_b = 0` and `V_c = Q`.
pub fn wedge_spike() -> CoefficientSystem<Q> {
  let maps = BTreeMap::from([((0, 2), Matrix::zeros(1, 0)), ((1, 2), Matrix::zeros(1, 0))]);
  CoefficientSystem::new(wedge_poset(), vec![0, 0, 1], maps).unwrap()
}

/// `a, b ≤ c, d ≤ e` with only `V_e` nonzero.
pub fn crown_system() -> CoefficientSystem<Q> {
  let p = FinitePoset::new(&["a", "b", "c", "d", "e"], &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "e"), ("d", "e")]).unwrap();
  let maps = BTreeMap::from([((2, 4), Matrix::zeros(1, 0)), ((3, 4), Matrix::zeros(1, 0))]);
  CoefficientSystem::new(p, vec![0, 0, 0, 0, 1], maps).unwrap()
}

/// An edge refined at its midpoint, then again on the left half.
pub fn refined_edge() -> TriangulationSystem<Q> {
  let poset = FinitePoset::new(&["p", "q", "r"], &[("p", "q"), ("q", "r")]).unwrap();
  let base = OrientedComplex::from_maximal([["a", "b"]]).unwrap();
  let s1 = SubdivisionScript::parse("star a,b m").unwrap();
  let s2 = SubdivisionScript::parse("star a,m n").unwrap();
  let x1 = s1.apply::<Q>(&base).unwrap().fine().clone();
  let x2 = s2.apply::<Q>(&x1).unwrap().fine().clone();
  TriangulationSystem::from_scripts(poset, vec![base, x1, x2], &BTreeMap::from([((0, 1), s1), ((1, 2), s2)])).unwrap()
}

/// A triangle starred at its center and, separately, at an edge midpoint; the
/// common refinement performs both moves.
pub fn triangle_diamond() -> TriangulationSystem<Q> {
  let poset = FinitePoset::new(&["p", "q1", "q2", "r"], &[("p", "q1"), ("p", "q2"), ("q1", "r"), ("q2", "r")]).unwrap();
  let base = triangle();
  let scripts = BTreeMap::from([
    ((0, 1), SubdivisionScript::parse("star a,b,c w").unwrap()),
    ((0, 2), SubdivisionScript::parse("star a,b m").unwrap()),
    ((1, 3), SubdivisionScript::parse("star a,b m").unwrap()),
    ((2, 3), SubdivisionScript::parse("star c,m w").unwrap()),
  ]);
  let q1 = scripts[&(0, 1)].apply::<Q>(&base).unwrap().fine().clone();
  let q2 = scripts[&(0, 2)].apply::<Q>(&base).unwrap().fine().clone();
  let r = scripts[&(1, 3)].apply::<Q>(&q1).unwrap().fine().clone();
  TriangulationSystem::from_scripts(poset, vec![base, q1, q2, r], &scripts).unwrap()
}

/// The Euler cycle of every complex in the system.
pub fn euler_assignment(t: &TriangulationSystem<Q>) -> CycleAssignment<Q> {
  let values = t.complexes.iter().enumerate().map(|(p, x)| t.coords(p, euler_cycle::<Q>(x).chain()).unwrap()).collect();
  CycleAssignment { degree: 0, values }
}
