use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::order::FinitePoset;

/// Open sets are bitmasks over poset indices.
pub type OpenSet = u64;

/// Opens are enumerated eagerly, so the poset is kept small.
pub const MAX_TOPOLOGY_ELEMENTS: usize = 20;

/// All up-closed subsets of a finite poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperIdealTopology {
  poset: FinitePoset,
  up: Vec<OpenSet>,
  opens: Vec<OpenSet>,
  index: BTreeMap<OpenSet, usize>,
}

impl UpperIdealTopology {
  pub fn new(poset: FinitePoset) -> Result<Self> {
    let n = poset.len();
    if n > MAX_TOPOLOGY_ELEMENTS {
      return Err(Error::TooLarge(format!("{n} poset elements, at most {MAX_TOPOLOGY_ELEMENTS} supported")));
    }
    let up: Vec<OpenSet> = (0..n).map(|x| poset.up_set(x).iter().fold(0, |m, &y| m | 1 << y)).collect();
    let mut opens = vec![0];
    for &u in &up {
      let grown: Vec<OpenSet> = opens.iter().map(|&o| o | u).collect();
      opens.extend(grown);
      opens.sort_unstable();
      opens.dedup();
    }
    let index = opens.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    Ok(Self { poset, up, opens, index })
  }

  pub fn poset(&self) -> &FinitePoset { &self.poset }

  pub fn opens(&self) -> &[OpenSet] { &self.opens }

  pub fn len(&self) -> usize { self.opens.len() }

  pub fn is_empty(&self) -> bool { self.opens.is_empty() }

  pub fn index_of(&self, u: OpenSet) -> Option<usize> { self.index.get(&u).copied() }

  pub fn is_open(&self, u: OpenSet) -> bool { self.index.contains_key(&u) }

  pub fn whole(&self) -> OpenSet { self.up.iter().fold(0, |m, &u| m | u) }

  /// `↑x`, the smallest open containing `x`.
  pub fn principal(&self, x: usize) -> OpenSet { self.up[x] }

  pub fn elements(&self, u: OpenSet) -> Vec<usize> { (0..self.poset.len()).filter(|&x| u >> x & 1 == 1).collect() }

  /// The `x` with `u = ↑x`, if any.
  pub fn generator(&self, u: OpenSet) -> Option<usize> { self.elements(u).into_iter().find(|&x| self.up[x] == u) }

  pub fn minimal_elements(&self, u: OpenSet) -> Vec<usize> {
    let els = self.elements(u);
    els.iter().copied().filter(|&x| !els.iter().any(|&y| self.poset.lt(y, x))).collect()
  }

  pub fn name_set(&self, u: OpenSet) -> String {
    let names: Vec<&str> = self.elements(u).into_iter().map(|x| self.poset.name(x)).collect();
    format!("{{{}}}", names.join(","))
  }

  /// Covers of `u` tested by the axiom checks: every subfamily of the basis
  /// `{↑x : x ∈ u}` whose union is `u`, and every pair of opens with union `u`.
  pub fn test_covers(&self, u: OpenSet) -> Vec<Vec<OpenSet>> {
    let els = self.elements(u);
    let mut covers = Vec::new();
    for mask in 1u64..(1 << els.len()) {
      let family: Vec<OpenSet> = (0..els.len()).filter(|i| mask >> i & 1 == 1).map(|i| self.up[els[i]]).collect();
      if family.iter().fold(0, |m, &v| m | v) == u {
        covers.push(family);
      }
    }
    let inside: Vec<OpenSet> = self.opens.iter().copied().filter(|&v| v & !u == 0).collect();
    for (i, &v) in inside.iter().enumerate() {
      for &w in &inside[i..] {
        if v | w == u {
          covers.push(vec![v, w]);
        }
      }
    }
    covers
  }
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn wedge_opens() {
    let p = FinitePoset::new(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap();
    let t = UpperIdealTopology::new(p).unwrap();
    // ∅, {c}, {a,c}, {b,c}, {a,b,c}
    assert_eq!(t.len(), 5);
    assert_eq!(t.generator(t.principal(0)), Some(0));
    assert_eq!(t.generator(t.whole()), None);
    assert_eq!(t.minimal_elements(t.whole()), vec![0, 1]);
    for &u in t.opens() {
      for &v in t.opens() {
        assert!(t.is_open(u | v) && t.is_open(u & v));
      }
      for x in t.elements(u) {
        assert_eq!(t.principal(x) & !u, 0);
      }
    }
  }

  #[test]
  fn antichain_is_discrete() {
    let p = FinitePoset::new(&["a", "b", "c", "d"], &[]).unwrap();
    assert_eq!(UpperIdealTopology::new(p).unwrap().len(), 16);
  }
}
