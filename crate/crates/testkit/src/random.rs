use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use transgress_core::linalg::Matrix;
use transgress_core::order::{CoefficientSystem, FinitePoset, SystemMorphism, SystemSequence};
use transgress_core::subdivision::{Move, SubdivisionScript};
use transgress_core::transgression::{ChainComplex, ChainSystem, CycleAssignment};
use transgress_core::{OrientedComplex, Simplex, Vertex};

use crate::{int, Q};

pub fn rng(seed: u64) -> ChaCha8Rng { ChaCha8Rng::seed_from_u64(seed) }

pub fn small(rng: &mut impl Rng) -> Q { int(rng.gen_range(-2..=2)) }

pub fn matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix<Q> { Matrix::from_fn(rows, cols, |_, _| small(rng)) }

/// Product of random unit triangular matrices: invertible with small entries.
pub fn unimodular(rng: &mut impl Rng, n: usize) -> Matrix<Q> {
  let lower = Matrix::from_fn(n, n, |i, j| if i == j { int(1) } else if i > j { int(rng.gen_range(-1..=1)) } else { int(0) });
  let upper = Matrix::from_fn(n, n, |i, j| if i == j { int(1) } else if i < j { int(rng.gen_range(-1..=1)) } else { int(0) });
  &lower * &upper
}

/// Closure of a few random simplices on vertices `v0…`.
pub fn complex(rng: &mut impl Rng, vertices: usize, facets: usize, max_dim: usize) -> OrientedComplex {
  let names: Vec<String> = (0..vertices).map(|i| format!("v{i}")).collect();
  let mut simplices = Vec::new();
  for _ in 0..facets {
    let k = rng.gen_range(0..=max_dim.min(vertices - 1));
    let chosen: Vec<&String> = names.choose_multiple(rng, k + 1).collect();
    simplices.push(Simplex::new(chosen.into_iter().map(String::as_str)).unwrap());
  }
  OrientedComplex::from_simplices(simplices)
}

/// A connected complex of dimension at least one.
pub fn nontrivial_complex(rng: &mut impl Rng) -> OrientedComplex {
  loop {
    let n = rng.gen_range(3..=6);
    let facets = rng.gen_range(2..=4);
    let x = complex(rng, n, facets, 3);
    if x.dim().unwrap_or(0) >= 1 {
      return x;
    }
  }
}

/// Stellar moves at random positive-dimensional simplices, new vertices `w0…`.
pub fn stellar_script(rng: &mut impl Rng, x: &OrientedComplex, moves: usize) -> SubdivisionScript {
  let mut current = x.clone();
  let mut script = SubdivisionScript::default();
  for i in 0..moves {
    let candidates: Vec<Simplex> = current.all_simplices().filter(|s| s.dim() > 0).cloned().collect();
    let simplex = candidates.choose(rng).unwrap().clone();
    let vertex = Vertex::new(&format!("w{i}"));
    let step = SubdivisionScript { moves: vec![Move::Star { simplex: simplex.clone(), vertex: vertex.clone() }] };
    current = step.apply::<Q>(&current).unwrap().fine().clone();
    script.moves.push(Move::Star { simplex, vertex });
  }
  script
}

/// Random order on `p0…p{n-1}` generated by relations between increasing indices.
/// Each relation `p_i ≤ p_j`, `i < j`, is drawn with probability `num/den`.
pub fn poset(rng: &mut impl Rng, n: usize, num: u32, den: u32) -> FinitePoset {
  let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
  let mut rel = Vec::new();
  for i in 0..n {
    for j in i + 1..n {
      if rng.gen_ratio(num, den) {
        rel.push((names[i].clone(), names[j].clone()));
      }
    }
  }
  FinitePoset::new(&names, &rel).unwrap()
}

/// A random poset below which a least element `p0` is placed.
pub fn poset_with_minimum(rng: &mut impl Rng, n: usize) -> FinitePoset {
  let rest = poset(rng, n - 1, 2, 5);
  let mut names = vec!["p0".to_string()];
  names.extend(rest.names().iter().map(|s| format!("q{}", &s[1..])));
  let mut rel: Vec<(String, String)> = (1..n).map(|i| (names[0].clone(), names[i].clone())).collect();
  for &(a, b) in rest.covers() {
    rel.push((names[a + 1].clone(), names[b + 1].clone()));
  }
  FinitePoset::new(&names, &rel).unwrap()
}

fn interval_pieces(rng: &mut impl Rng, poset: &FinitePoset, pieces: usize) -> Vec<BTreeSet<usize>> {
  let n = poset.len();
  let mut alive = Vec::new();
  for _ in 0..pieces {
    let start = rng.gen_range(0..n);
    let up = poset.up_set(start);
    let dead: BTreeSet<usize> = match up.iter().skip(1).copied().collect::<Vec<_>>().choose(rng) {
      Some(&d) if rng.gen::<bool>() => poset.up_set(d).into_iter().collect(),
      _ => BTreeSet::new(),
    };
    alive.push(up.into_iter().filter(|p| !dead.contains(p)).collect());
  }
  alive
}

/// Coordinates at each element: the pieces from `subset` alive there.
fn piece_basis(poset: &FinitePoset, alive: &[BTreeSet<usize>], subset: &[usize]) -> Vec<Vec<usize>> {
  (0..poset.len()).map(|p| subset.iter().copied().filter(|&i| alive[i].contains(&p)).collect()).collect()
}

fn selection(rows: &[usize], cols: &[usize]) -> Matrix<Q> { Matrix::from_fn(rows.len(), cols.len(), |r, c| if rows[r] == cols[c] { int(1) } else { int(0) }) }

fn piece_system(poset: &FinitePoset, basis: &[Vec<usize>], change: &[Matrix<Q>]) -> CoefficientSystem<Q> {
  let mut maps = BTreeMap::new();
  for &(p, q) in poset.covers() {
    let conj = &(&change[q] * &selection(&basis[q], &basis[p])) * &change[p].inverse().unwrap();
    maps.insert((p, q), conj);
  }
  CoefficientSystem::new(poset.clone(), basis.iter().map(Vec::len).collect(), maps).unwrap()
}

/// A functorial system assembled from interval pieces: each basis vector lives
/// on the up-set of one element minus a smaller up-set, and every element gets
/// a random change of basis.
pub fn system(rng: &mut impl Rng, poset: &FinitePoset, pieces: usize) -> CoefficientSystem<Q> {
  let alive = interval_pieces(rng, poset, pieces);
  let basis = piece_basis(poset, &alive, &(0..pieces).collect::<Vec<_>>());
  let change: Vec<Matrix<Q>> = basis.iter().map(|b| unimodular(rng, b.len())).collect();
  piece_system(poset, &basis, &change)
}

/// `0 → A → B → C → 0` where `A` is spanned by a random subset of the pieces of `B`.
pub fn system_sequence(rng: &mut impl Rng, poset: &FinitePoset, pieces: usize) -> SystemSequence<Q> {
  let alive = interval_pieces(rng, poset, pieces);
  let (sub, quotient): (Vec<usize>, Vec<usize>) = (0..pieces).partition(|_| rng.gen::<bool>());
  let all: Vec<usize> = (0..pieces).collect();
  let (ba, bb, bc) = (piece_basis(poset, &alive, &sub), piece_basis(poset, &alive, &all), piece_basis(poset, &alive, &quotient));
  let change: Vec<Matrix<Q>> = bb.iter().map(|b| unimodular(rng, b.len())).collect();
  let identity = |basis: &[Vec<usize>]| basis.iter().map(|b| Matrix::identity(b.len())).collect::<Vec<_>>();
  let (a, b, c) = (piece_system(poset, &ba, &identity(&ba)), piece_system(poset, &bb, &change), piece_system(poset, &bc, &identity(&bc)));
  let f = (0..poset.len()).map(|p| &change[p] * &selection(&bb[p], &ba[p])).collect();
  let g = (0..poset.len()).map(|p| &selection(&bc[p], &bb[p]) * &change[p].inverse().unwrap()).collect();
  SystemSequence { a, b, c, f: SystemMorphism { components: f }, g: SystemMorphism { components: g } }
}

/// `Δ₂` with top `p`, `Δ₁` with bottom `p`, glued at `p`. Returns the poset and
/// the element lists of `Δ₁` and `Δ₂`.
pub fn double_cone(rng: &mut impl Rng) -> (FinitePoset, Vec<usize>, Vec<usize>) {
  let (nl, nu) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
  let lower = poset(rng, nl, 1, 2);
  let upper = poset(rng, nu, 1, 2);
  let mut names = vec!["p".to_string()];
  names.extend(lower.names().iter().map(|s| format!("l{s}")));
  names.extend(upper.names().iter().map(|s| format!("u{s}")));
  let l0 = 1;
  let u0 = 1 + lower.len();
  let mut rel = Vec::new();
  for i in 0..lower.len() {
    rel.push((names[l0 + i].clone(), names[0].clone()));
  }
  for i in 0..upper.len() {
    rel.push((names[0].clone(), names[u0 + i].clone()));
  }
  for &(a, b) in lower.covers() {
    rel.push((names[l0 + a].clone(), names[l0 + b].clone()));
  }
  for &(a, b) in upper.covers() {
    rel.push((names[u0 + a].clone(), names[u0 + b].clone()));
  }
  let p = FinitePoset::new(&names, &rel).unwrap();
  let delta1 = std::iter::once(0).chain(u0..u0 + upper.len()).collect();
  let delta2 = (0..u0).collect();
  (p, delta1, delta2)
}

/// A join-closed family of subsets of `{0,1,2}` containing the empty set,
/// ordered by inclusion: a lattice.
pub fn subset_lattice(rng: &mut impl Rng) -> FinitePoset {
  let mut family: BTreeSet<u8> = BTreeSet::from([0]);
  for s in 1u8..8 {
    if rng.gen::<bool>() {
      family.insert(s);
    }
  }
  loop {
    let joins: Vec<u8> = family.iter().flat_map(|&a| family.iter().map(move |&b| a | b)).collect();
    let before = family.len();
    family.extend(joins);
    if family.len() == before {
      break;
    }
  }
  let name = |s: u8| if s == 0 { "{}".to_string() } else { format!("{{{}}}", (0..3).filter(|i| s >> i & 1 == 1).map(|i| i.to_string()).collect::<Vec<_>>().join(",")) };
  let els: Vec<u8> = family.into_iter().collect();
  let names: Vec<String> = els.iter().map(|&s| name(s)).collect();
  let mut rel = Vec::new();
  for &a in &els {
    for &b in &els {
      if a != b && a & !b == 0 {
        rel.push((name(a), name(b)));
      }
    }
  }
  FinitePoset::new(&names, &rel).unwrap()
}

/// Shape of an abstract chain complex: homology and contractible pairs per degree.
#[derive(Clone, Debug)]
pub struct ComplexShape {
  /// `homology[j] = dim H_j`.
  pub homology: Vec<usize>,
  /// `pairs[j]` elementary pairs `x ∈ C_{j+1}`, `∂x = y ∈ C_j`.
  pub pairs: Vec<usize>,
}

impl ComplexShape {
  fn dim(&self, j: usize) -> usize {
    self.homology.get(j).copied().unwrap_or(0) + self.pairs.get(j).copied().unwrap_or(0) + if j > 0 { self.pairs.get(j - 1).copied().unwrap_or(0) } else { 0 }
  }

  fn len(&self) -> usize { self.homology.len().max(self.pairs.len() + 1) }

  /// Standard basis order in degree `j`: homology, then `y`s, then `x`s.
  fn standard(&self) -> ChainComplex<Q> {
    let dims: Vec<usize> = (0..self.len()).map(|j| self.dim(j)).collect();
    let mut boundary = Vec::new();
    for j in 1..self.len() {
      let mut m = Matrix::zeros(dims[j - 1], dims[j]);
      let h_j = self.homology.get(j).copied().unwrap_or(0) + self.pairs.get(j).copied().unwrap_or(0);
      let h_below = self.homology.get(j - 1).copied().unwrap_or(0);
      for t in 0..self.pairs.get(j - 1).copied().unwrap_or(0) {
        m.set(h_below + t, h_j + t, int(1));
      }
      boundary.push(m);
    }
    ChainComplex::new(dims, boundary).unwrap()
  }
}

/// An abstract system of chain complexes over a poset whose Hasse diagram is a
/// forest (so any cover maps compose coherently). Every complex has the same
/// homology; maps are random quasi-isomorphisms, and bases are scrambled.
pub fn chain_system(rng: &mut impl Rng, poset: &FinitePoset, shapes: &[ComplexShape]) -> ChainSystem<Q> {
  let standard: Vec<ChainComplex<Q>> = shapes.iter().map(ComplexShape::standard).collect();
  let len = standard.iter().map(ChainComplex::len).max().unwrap();
  let change: Vec<Vec<Matrix<Q>>> = standard.iter().map(|c| (0..len).map(|j| unimodular(rng, c.dim(j))).collect()).collect();
  let scrambled: Vec<ChainComplex<Q>> = standard
    .iter()
    .zip(&change)
    .map(|(c, p)| {
      let boundary = (1..len).map(|j| &(&p[j - 1] * &c.boundary(j)) * &p[j].inverse().unwrap()).collect();
      ChainComplex::new((0..len).map(|j| c.dim(j)).collect(), boundary).unwrap()
    })
    .collect();
  let mut maps = BTreeMap::new();
  for &(p, q) in poset.covers() {
    let raw = quasi_isomorphism(rng, &shapes[p], &shapes[q], &standard[q], len);
    let conj = (0..len).map(|j| &(&change[q][j] * &raw[j]) * &change[p][j].inverse().unwrap()).collect();
    maps.insert((p, q), conj);
  }
  ChainSystem::new(poset.clone(), scrambled, maps).unwrap()
}

fn quasi_isomorphism(rng: &mut impl Rng, a: &ComplexShape, b: &ComplexShape, target: &ChainComplex<Q>, len: usize) -> Vec<Matrix<Q>> {
  let mut maps: Vec<Matrix<Q>> = (0..len).map(|j| Matrix::zeros(b.dim(j), a.dim(j))).collect();
  for j in (0..len).rev() {
    let h = a.homology.get(j).copied().unwrap_or(0);
    let ys = a.pairs.get(j).copied().unwrap_or(0);
    let xs = if j > 0 { a.pairs.get(j - 1).copied().unwrap_or(0) } else { 0 };
    let iso = unimodular(rng, h);
    for c in 0..h {
      let shift = target.boundary(j + 1).mul_vec(&(0..target.dim(j + 1)).map(|_| small(rng)).collect::<Vec<_>>());
      for r in 0..target.dim(j) {
        let base = if r < h { iso.get(r, c).clone() } else { int(0) };
        maps[j].set(r, c, base + shift[r].clone());
      }
    }
    for t in 0..ys {
      // y = ∂x with x in degree j+1
      let x_col = a.dim(j + 1) - a.pairs[j] + t;
      let image = target.boundary(j + 1).mul_vec(&maps[j + 1].column(x_col));
      for (r, v) in image.into_iter().enumerate() {
        maps[j].set(r, h + t, v);
      }
    }
    for t in 0..xs {
      for r in 0..target.dim(j) {
        maps[j].set(r, h + ys + t, small(rng));
      }
    }
  }
  maps
}

/// `p0 < q0 > p1 < q1 > ⋯` on `n` elements.
pub fn fence(n: usize) -> FinitePoset {
  let names: Vec<String> = (0..n).map(|i| format!("{}{}", if i % 2 == 0 { "p" } else { "q" }, i / 2)).collect();
  let rel: Vec<(String, String)> =
    (0..n - 1).map(|i| if i % 2 == 0 { (names[i].clone(), names[i + 1].clone()) } else { (names[i + 1].clone(), names[i].clone()) }).collect();
  FinitePoset::new(&names, &rel).unwrap()
}

pub fn vector(rng: &mut impl Rng, n: usize) -> Vec<Q> { (0..n).map(|_| small(rng)).collect() }

/// Random boundaries in degree 0 at every element.
pub fn boundary_assignment(rng: &mut impl Rng, s: &ChainSystem<Q>) -> CycleAssignment<Q> {
  let values = (0..s.poset().len()).map(|p| s.complex(p).boundary(1).mul_vec(&vector(rng, s.complex(p).dim(1)))).collect();
  CycleAssignment { degree: 0, values }
}

/// Starts from a random 0-cycle at the first element and transports its class
/// along covering pairs, adding random boundaries. Needs a connected poset.
pub fn class_assignment(rng: &mut impl Rng, s: &ChainSystem<Q>) -> CycleAssignment<Q> {
  let n = s.poset().len();
  let mut values: Vec<Option<Vec<Q>>> = vec![None; n];
  values[0] = Some(vector(rng, s.complex(0).dim(0)));
  while values.iter().any(Option::is_none) {
    for &(a, b) in s.poset().covers() {
      match (&values[a], &values[b]) {
        (Some(x), None) => {
          let mut y = s.map(a, b, 0).mul_vec(x);
          let noise = s.complex(b).boundary(1).mul_vec(&vector(rng, s.complex(b).dim(1)));
          y.iter_mut().zip(noise).for_each(|(u, v)| *u += v);
          values[b] = Some(y);
        },
        (None, Some(y)) => {
          let cycles = s.complex(a).cycles(0);
          let system = (&s.map(a, b, 0) * &cycles).hstack(&s.complex(b).boundary(1));
          let sol = system.solve(y).expect("maps are quasi-isomorphisms");
          values[a] = Some(cycles.mul_vec(&sol[..cycles.cols()]));
        },
        _ => {},
      }
    }
  }
  CycleAssignment { degree: 0, values: values.into_iter().map(Option::unwrap).collect() }
}
