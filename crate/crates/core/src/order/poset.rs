use std::collections::BTreeMap;

use crate::complex::{OrientedComplex, Simplex};
use crate::error::{Error, Result};

/// A finite partial order on named elements.
///
/// Elements are indexed in input order; `leq` is the full reflexive-transitive
/// relation and `covers` its transitive reduction.
#[derive(Clone, PartialEq, Eq)]
pub struct FinitePoset {
  names: Vec<String>,
  index: BTreeMap<String, usize>,
  leq: Vec<Vec<bool>>,
  covers: Vec<(usize, usize)>,
}

impl FinitePoset {
  /// Builds the order generated by `relations`, each pair `(a, b)` meaning `a ≤ b`.
  pub fn new<S: AsRef<str>>(elements: &[S], relations: &[(S, S)]) -> Result<Self> {
    let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
    let mut index = BTreeMap::new();
    for (i, n) in names.iter().enumerate() {
      if index.insert(n.clone(), i).is_some() {
        return Err(Error::NotAPartialOrder(format!("duplicate element {n}")));
      }
    }
    let n = names.len();
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
      row[i] = true;
    }
    for (a, b) in relations {
      let lookup = |s: &S| index.get(s.as_ref()).copied().ok_or_else(|| Error::UnknownElement(s.as_ref().to_string()));
      let (i, j) = (lookup(a)?, lookup(b)?);
      leq[i][j] = true;
    }
    Self::from_relation(names, leq)
  }

  fn from_relation(names: Vec<String>, mut leq: Vec<Vec<bool>>) -> Result<Self> {
    let n = names.len();
    for k in 0..n {
      for i in 0..n {
        if leq[i][k] {
          for j in 0..n {
            if leq[k][j] {
              leq[i][j] = true;
            }
          }
        }
      }
    }
    for i in 0..n {
      for j in i + 1..n {
        if leq[i][j] && leq[j][i] {
          return Err(Error::NotAPartialOrder(format!("{} and {} lie on a cycle", names[i], names[j])));
        }
      }
    }
    let mut covers = Vec::new();
    for i in 0..n {
      for j in 0..n {
        if i != j && leq[i][j] && !(0..n).any(|k| k != i && k != j && leq[i][k] && leq[k][j]) {
          covers.push((i, j));
        }
      }
    }
    let index = names.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    Ok(Self { names, index, leq, covers })
  }

  pub fn len(&self) -> usize { self.names.len() }

  pub fn is_empty(&self) -> bool { self.names.is_empty() }

  pub fn name(&self, p: usize) -> &str { &self.names[p] }

  pub fn names(&self) -> &[String] { &self.names }

  pub fn index_of(&self, name: &str) -> Result<usize> { self.index.get(name).copied().ok_or_else(|| Error::UnknownElement(name.to_string())) }

  pub fn leq(&self, p: usize, q: usize) -> bool { self.leq[p][q] }

  pub fn lt(&self, p: usize, q: usize) -> bool { p != q && self.leq[p][q] }

  pub fn comparable(&self, p: usize, q: usize) -> bool { self.leq[p][q] || self.leq[q][p] }

  /// Covering pairs `(p, q)`, `p ⋖ q`, in lexicographic index order.
  pub fn covers(&self) -> &[(usize, usize)] { &self.covers }

  /// The same elements with the order reversed.
  pub fn opposite(&self) -> Self {
    let n = self.len();
    let leq = (0..n).map(|i| (0..n).map(|j| self.leq[j][i]).collect()).collect();
    Self::from_relation(self.names.clone(), leq).expect("reversal preserves antisymmetry")
  }

  /// The induced order on a subset of elements, listed in the order given.
  pub fn induced(&self, elements: &[usize]) -> Self {
    let names = elements.iter().map(|&p| self.names[p].clone()).collect();
    let leq = elements.iter().map(|&i| elements.iter().map(|&j| self.leq[i][j]).collect()).collect();
    Self::from_relation(names, leq).expect("a restriction of a partial order is a partial order")
  }

  pub fn minimal_elements(&self) -> Vec<usize> { (0..self.len()).filter(|&p| !(0..self.len()).any(|q| self.lt(q, p))).collect() }

  pub fn maximal_elements(&self) -> Vec<usize> { (0..self.len()).filter(|&p| !(0..self.len()).any(|q| self.lt(p, q))).collect() }

  /// The least element, if there is one.
  pub fn minimum(&self) -> Option<usize> { (0..self.len()).find(|&p| (0..self.len()).all(|q| self.leq[p][q])) }

  /// `↑p = {q : p ≤ q}`.
  pub fn up_set(&self, p: usize) -> Vec<usize> { (0..self.len()).filter(|&q| self.leq[p][q]).collect() }

  /// `↓p = {q : q ≤ p}`.
  pub fn down_set(&self, p: usize) -> Vec<usize> { (0..self.len()).filter(|&q| self.leq[q][p]).collect() }

  pub fn is_up_set(&self, set: &[usize]) -> bool { set.iter().all(|&p| self.up_set(p).iter().all(|q| set.contains(q))) }

  pub fn is_down_set(&self, set: &[usize]) -> bool { set.iter().all(|&p| self.down_set(p).iter().all(|q| set.contains(q))) }

  /// Elements sorted so that `p < q` implies `p` comes first; ties by index.
  pub fn linear_extension(&self) -> Vec<usize> {
    let mut order: Vec<usize> = (0..self.len()).collect();
    order.sort_by_key(|&p| (self.down_set(p).len(), p));
    order
  }

  /// Strictly increasing chains `p₀ < ⋯ < p_k`, written bottom to top, in
  /// lexicographic order of their index sequences.
  pub fn chains(&self, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k + 1);
    for p in 0..self.len() {
      current.push(p);
      self.extend_chain(k, &mut current, &mut out);
      current.pop();
    }
    out.sort();
    out
  }

  fn extend_chain(&self, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if current.len() == k + 1 {
      out.push(current.clone());
      return;
    }
    let top = *current.last().unwrap();
    for q in 0..self.len() {
      if self.lt(top, q) {
        current.push(q);
        self.extend_chain(k, current, out);
        current.pop();
      }
    }
  }

  /// Length of the longest chain minus one, or `None` for the empty poset.
  pub fn height(&self) -> Option<usize> { (0..=self.len()).take_while(|&k| !self.chains(k).is_empty()).last() }

  /// Whether `chain` is a strictly increasing sequence of elements.
  pub fn is_chain(&self, chain: &[usize]) -> bool {
    !chain.is_empty() && chain.iter().all(|&p| p < self.len()) && chain.windows(2).all(|w| self.lt(w[0], w[1]))
  }

  /// Sorts a set of pairwise comparable elements into a chain.
  pub fn sort_chain(&self, elements: &[usize]) -> Result<Vec<usize>> {
    let mut c = elements.to_vec();
    c.sort_by_key(|&p| self.down_set(p).len());
    if !self.is_chain(&c) {
      let names: Vec<&str> = elements.iter().filter(|&&p| p < self.len()).map(|&p| self.name(p)).collect();
      return Err(Error::SimplexNotFound(format!("[{}] is not a chain", names.join(","))));
    }
    Ok(c)
  }

  pub fn chain_names(&self, chain: &[usize]) -> Vec<&str> { chain.iter().map(|&p| self.name(p)).collect() }

  /// Whether `f`, given as images of each element, preserves the order into `target`.
  pub fn is_order_preserving(&self, f: &[usize], target: &FinitePoset) -> bool {
    f.len() == self.len() && f.iter().all(|&x| x < target.len()) && self.covers.iter().all(|&(p, q)| target.leq(f[p], f[q]))
  }

  /// Order complex with element names as vertices.
  pub fn order_complex(&self) -> OrientedComplex {
    let mut simplices = Vec::new();
    for k in 0..=self.height().unwrap_or(0) {
      for c in self.chains(k) {
        simplices.push(Simplex::new(self.chain_names(&c)).expect("chains have distinct elements"));
      }
    }
    OrientedComplex::from_simplices(simplices)
  }
}

impl std::fmt::Debug for FinitePoset {
  fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
    let covers: Vec<String> = self.covers.iter().map(|&(p, q)| format!("{}<{}", self.names[p], self.names[q])).collect();
    f.debug_struct("FinitePoset").field("elements", &self.names).field("covers", &covers).finish()
  }
}
