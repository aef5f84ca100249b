use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::complex::{Chain, OrientedComplex, Simplex, Vertex};
use crate::error::{Error, Result};
use crate::linalg::{min_norm_solve, Matrix};
use crate::scalar::Field;
use crate::subdivision::SubdivisionMap;

pub const DEFAULT_TREE_CAP: u64 = 10_000;

/// A finite graph on named vertices, used as the edge space for party-local lifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartyGraph {
  vertices: Vec<Vertex>,
  edges: Vec<Simplex>,
  index: BTreeMap<Vertex, usize>,
}

impl PartyGraph {
  pub fn new(vertices: impl IntoIterator<Item = Vertex>, edges: impl IntoIterator<Item = Simplex>) -> Result<Self> {
    let mut vertices: Vec<Vertex> = vertices.into_iter().collect();
    vertices.sort();
    vertices.dedup();
    let index: BTreeMap<Vertex, usize> = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let mut edges: Vec<Simplex> = edges.into_iter().collect();
    edges.sort();
    edges.dedup();
    for e in &edges {
      if e.dim() != 1 {
        return Err(Error::DimensionMismatch(format!("{e} is not an edge")));
      }
      if let Some(v) = e.vertices().iter().find(|v| !index.contains_key(*v)) {
        return Err(Error::VertexNotFound(v.to_string()));
      }
    }
    Ok(Self { vertices, edges, index })
  }

  /// 1-skeleton of a complex.
  pub fn skeleton(x: &OrientedComplex) -> Self {
    Self::new(x.vertices().cloned(), x.simplices(1).iter().cloned()).expect("edges of a complex join its vertices")
  }

  /// The 1-skeleton of the fine complex lying over the closed coarse simplex `tau`.
  pub fn of_party<F: Field>(s: &SubdivisionMap<F>, tau: &Simplex) -> Self { Self::skeleton(&s.restricted_to(tau)) }

  pub fn vertices(&self) -> &[Vertex] { &self.vertices }

  pub fn edges(&self) -> &[Simplex] { &self.edges }

  fn ends(&self, e: usize) -> (usize, usize) {
    let vs = self.edges[e].vertices();
    (self.index[&vs[0]], self.index[&vs[1]])
  }

  fn connected_by(&self, edges: impl IntoIterator<Item = usize>) -> bool {
    let mut uf = UnionFind::new(self.vertices.len());
    let mut parts = self.vertices.len();
    for e in edges {
      let (a, b) = self.ends(e);
      if uf.union(a, b) {
        parts -= 1;
      }
    }
    parts <= 1
  }

  pub fn is_connected(&self) -> bool { self.connected_by(0..self.edges.len()) }

  /// Number of spanning trees, by the matrix-tree theorem.
  pub fn spanning_tree_count(&self) -> BigInt {
    let n = self.vertices.len();
    if n <= 1 {
      return BigInt::one();
    }
    let mut lap = vec![vec![BigInt::zero(); n - 1]; n - 1];
    for e in 0..self.edges.len() {
      let (a, b) = self.ends(e);
      for (i, j) in [(a, b), (b, a)] {
        if i + 1 < n {
          lap[i][i] += 1;
          if j + 1 < n {
            lap[i][j] -= 1;
          }
        }
      }
    }
    bareiss_determinant(lap)
  }

  /// Every spanning tree as a list of edge indices, failing when there are more than `cap`.
  pub fn spanning_trees(&self, cap: u64) -> Result<Vec<Vec<usize>>> {
    let count = self.spanning_tree_count();
    if count > BigInt::from(cap) {
      return Err(Error::TreeCapExceeded { count: count.to_string(), cap });
    }
    if count.is_zero() {
      return Err(Error::NotSpanning("the party graph is disconnected".into()));
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let mut excluded = vec![false; self.edges.len()];
    self.grow(0, &mut chosen, &mut excluded, &mut out);
    debug_assert_eq!(BigInt::from(out.len()), count);
    Ok(out)
  }

  fn grow(&self, e: usize, chosen: &mut Vec<usize>, excluded: &mut [bool], out: &mut Vec<Vec<usize>>) {
    let need = self.vertices.len().saturating_sub(1);
    if chosen.len() == need {
      out.push(chosen.clone());
      return;
    }
    if e == self.edges.len() {
      return;
    }
    if !self.forms_cycle(chosen, e) {
      chosen.push(e);
      self.grow(e + 1, chosen, excluded, out);
      chosen.pop();
    }
    excluded[e] = true;
    if self.connected_by((0..self.edges.len()).filter(|&i| !excluded[i])) {
      self.grow(e + 1, chosen, excluded, out);
    }
    excluded[e] = false;
  }

  fn forms_cycle(&self, chosen: &[usize], e: usize) -> bool {
    let mut uf = UnionFind::new(self.vertices.len());
    for &c in chosen {
      let (a, b) = self.ends(c);
      uf.union(a, b);
    }
    let (a, b) = self.ends(e);
    uf.find(a) == uf.find(b)
  }

  /// Vertex-by-edge incidence matrix of the canonically oriented edges.
  pub fn incidence<F: Field>(&self) -> Matrix<F> {
    let mut m = Matrix::zeros(self.vertices.len(), self.edges.len());
    for e in 0..self.edges.len() {
      let (a, b) = self.ends(e);
      m.set(a, e, -F::one());
      m.set(b, e, F::one());
    }
    m
  }

  fn demand<F: Field>(&self, b: &Chain<F>) -> Result<Vec<F>> {
    if b.degree() != 0 {
      return Err(Error::DimensionMismatch(format!("expected a 0-chain, got degree {}", b.degree())));
    }
    let mut d = vec![F::zero(); self.vertices.len()];
    for (s, x) in b.iter() {
      let i = self.index.get(&s.vertices()[0]).ok_or_else(|| Error::VertexNotFound(s.to_string()))?;
      d[*i] = x.clone();
    }
    if !b.mass().is_zero() {
      return Err(Error::NonzeroMass);
    }
    Ok(d)
  }

  fn edge_chain<F: Field>(&self, x: Vec<F>) -> Chain<F> {
    Chain::from_terms(1, self.edges.iter().cloned().zip(x)).expect("edges have degree 1")
  }

  fn tree_flow<F: Field>(&self, tree: &[usize], d: &[F]) -> Vec<F> {
    let n = self.vertices.len();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for &e in tree {
      let (a, b) = self.ends(e);
      adj[a].push((b, e));
      adj[b].push((a, e));
    }
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
      order.push(u);
      for &(v, e) in &adj[u] {
        if !seen[v] {
          seen[v] = true;
          parent[v] = Some((u, e));
          stack.push(v);
        }
      }
    }
    let mut subtotal = d.to_vec();
    let mut flow = vec![F::zero(); self.edges.len()];
    for &v in order.iter().rev() {
      if let Some((u, e)) = parent[v] {
        let s = subtotal[v].clone();
        subtotal[u] = subtotal[u].clone() + s.clone();
        // ∂[x,y] = y − x: positive flow delivers mass to the larger endpoint
        flow[e] = if self.ends(e).1 == v { s } else { -s };
      }
    }
    flow
  }
}

/// The unique 1-chain supported on the spanning tree `tree` with boundary `b`.
pub fn tree_lift<F: Field>(g: &PartyGraph, b: &Chain<F>, tree: &[Simplex]) -> Result<Chain<F>> {
  let d = g.demand(b)?;
  let mut idx = Vec::with_capacity(tree.len());
  for e in tree {
    let i = g.edges.binary_search(e).map_err(|_| Error::NotSpanning(format!("{e} is not an edge of the party")))?;
    idx.push(i);
  }
  idx.sort();
  idx.dedup();
  if idx.len() + 1 != g.vertices.len().max(1) || !g.connected_by(idx.iter().copied()) {
    return Err(Error::NotSpanning("edges do not form a spanning tree".into()));
  }
  Ok(g.edge_chain(g.tree_flow(&idx, &d)))
}

/// Mean of [`tree_lift`] over every spanning tree of the graph.
pub fn average_tree_lift<F: Field>(g: &PartyGraph, b: &Chain<F>, cap: u64) -> Result<Chain<F>> {
  let d = g.demand(b)?;
  if b.is_zero() {
    return Ok(Chain::zero(1));
  }
  let trees = g.spanning_trees(cap)?;
  let mut sum = vec![F::zero(); g.edges.len()];
  for t in &trees {
    for (acc, x) in sum.iter_mut().zip(g.tree_flow(t, &d)) {
      *acc = acc.clone() + x;
    }
  }
  let n = F::from_int(trees.len() as i64);
  Ok(g.edge_chain(sum.into_iter().map(|x| x / n.clone()).collect()))
}

/// The lift of `b` of least Euclidean norm in the canonical edge basis.
pub fn min_norm_lift<F: Field>(g: &PartyGraph, b: &Chain<F>) -> Result<Chain<F>> {
  let d = g.demand(b)?;
  let x = min_norm_solve(&g.incidence(), &d).ok_or_else(|| Error::NoSolution("demand is not a boundary in the party graph".into()))?;
  Ok(g.edge_chain(x))
}

fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
  let n = m.len();
  let mut sign = BigInt::one();
  let mut prev = BigInt::one();
  for k in 0..n {
    if m[k][k].is_zero() {
      let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else { return BigInt::zero() };
      m.swap(k, p);
      sign = -sign;
    }
    for i in k + 1..n {
      for j in k + 1..n {
        let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
        m[i][j] = v.div_floor(&prev);
      }
    }
    prev = m[k][k].clone();
  }
  if n == 0 {
    return BigInt::one();
  }
  sign * &m[n - 1][n - 1]
}

struct UnionFind(Vec<usize>);

impl UnionFind {
  fn new(n: usize) -> Self { Self((0..n).collect()) }

  fn find(&mut self, mut a: usize) -> usize {
    while self.0[a] != a {
      self.0[a] = self.0[self.0[a]];
      a = self.0[a];
    }
    a
  }

  fn union(&mut self, a: usize, b: usize) -> bool {
    let (ra, rb) = (self.find(a), self.find(b));
    self.0[ra] = rb;
    ra != rb
  }
}

#[cfg(test)]
mod tests {
  use num_rational::BigRational;

  use super::*;

  type Q = BigRational;

  fn q(n: i64, d: i64) -> Q { Q::new(n.into(), d.into()) }

  fn e(a: &str, b: &str) -> Simplex { Simplex::new([a, b]).unwrap() }

  fn graph(vs: &[&str], es: &[(&str, &str)]) -> PartyGraph {
    PartyGraph::new(vs.iter().map(|&v| Vertex::from(v)), es.iter().map(|&(a, b)| e(a, b))).unwrap()
  }

  fn zero_chain(terms: &[(&str, Q)]) -> Chain<Q> {
    Chain::from_oriented(0, terms.iter().map(|(v, x)| (vec![*v], x.clone()))).unwrap()
  }

  fn star() -> (PartyGraph, Chain<Q>) {
    let g = graph(&["a", "b", "c", "w"], &[("a", "w"), ("b", "w"), ("c", "w")]);
    let b = zero_chain(&[("w", q(1, 2)), ("a", q(-1, 6)), ("b", q(-1, 6)), ("c", q(-1, 6))]);
    (g, b)
  }

  fn spokes() -> Chain<Q> { Chain::from_terms(1, [e("a", "w"), e("b", "w"), e("c", "w")].map(|s| (s, q(1, 6)))).unwrap() }

  #[test]
  fn path_tree_lift() {
    let g = graph(&["a", "m", "b"], &[("a", "m"), ("m", "b")]);
    let b = zero_chain(&[("m", q(1, 1)), ("a", q(-1, 1))]);
    let lift = tree_lift(&g, &b, &[e("a", "m"), e("b", "m")]).unwrap();
    assert_eq!(lift, Chain::from_terms(1, [(e("a", "m"), q(1, 1))]).unwrap());
    assert!(tree_lift(&g, &Chain::<Q>::zero(0), &[e("a", "m"), e("b", "m")]).unwrap().is_zero());
  }

  #[test]
  fn star_lifts_agree() {
    let (g, b) = star();
    let t = g.edges().to_vec();
    assert_eq!(tree_lift(&g, &b, &t).unwrap(), spokes());
    assert_eq!(average_tree_lift(&g, &b, DEFAULT_TREE_CAP).unwrap(), spokes());
    assert_eq!(min_norm_lift(&g, &b).unwrap(), spokes());
  }

  #[test]
  fn triangle_average() {
    let g = graph(&["v0", "v1", "v2"], &[("v0", "v1"), ("v1", "v2"), ("v0", "v2")]);
    assert_eq!(g.spanning_tree_count(), BigInt::from(3));
    let b = zero_chain(&[("v1", q(1, 1)), ("v0", q(-1, 1))]);
    let avg = average_tree_lift(&g, &b, DEFAULT_TREE_CAP).unwrap();
    // trees {01,12}, {01,02}: direct edge carries 1; tree {12,02}: the detour carries 1
    let expected = Chain::from_terms(1, [(e("v0", "v1"), q(2, 3)), (e("v0", "v2"), q(1, 3)), (e("v1", "v2"), q(-1, 3))]).unwrap();
    assert_eq!(avg, expected);
    assert_eq!(min_norm_lift(&g, &b).unwrap(), expected);
  }

  #[test]
  fn tree_errors() {
    let (g, b) = star();
    let bad = zero_chain(&[("w", q(1, 1))]);
    assert_eq!(tree_lift(&g, &bad, g.edges()), Err(Error::NonzeroMass));
    assert!(matches!(tree_lift(&g, &b, &g.edges()[..2]), Err(Error::NotSpanning(_))));
    let k4 = graph(&["a", "b", "c", "d"], &[("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")]);
    assert_eq!(k4.spanning_tree_count(), BigInt::from(16));
    assert_eq!(k4.spanning_trees(100).unwrap().len(), 16);
    assert!(matches!(k4.spanning_trees(15), Err(Error::TreeCapExceeded { .. })));
  }

  #[test]
  fn complete_graph_counts() {
    // Cayley: n^(n-2)
    for n in 1..=6usize {
      let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
      let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
      let g = PartyGraph::new(names.iter().map(Vertex::from), edges.map(|(i, j)| Simplex::new([&names[i], &names[j]]).unwrap())).unwrap();
      let expected = if n == 1 { 1 } else { n.pow(n as u32 - 2) };
      assert_eq!(g.spanning_tree_count(), BigInt::from(expected));
      assert_eq!(g.spanning_trees(10_000).unwrap().len(), expected);
    }
  }
}
