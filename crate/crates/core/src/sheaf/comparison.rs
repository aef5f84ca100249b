use std::collections::BTreeMap;

use super::topology::{OpenSet, UpperIdealTopology};
use crate::cochain::CochainComplex;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseMatrix};
use crate::order::{order_cohomology, ChainSelector, CochainLayout, CoefficientSystem};
use crate::scalar::Field;

/// A nonempty intersection `↑z₀ ∩ ⋯ ∩ ↑z_p` of the basic cover and its generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NerveSimplex {
  pub members: Vec<usize>,
  pub generator: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeComparison {
  /// `H^*(or P; G)`.
  pub order: Vec<usize>,
  /// Total cohomology of the Čech-order double complex of the basic cover.
  pub cech_total: Vec<usize>,
  /// Čech cohomology of the basic cover with coefficients `H^0(↑z; G) = G_z`.
  pub cech: Vec<usize>,
  pub nerve: Vec<NerveSimplex>,
}

impl LatticeComparison {
  pub fn agree(&self) -> bool { trimmed(&self.order) == trimmed(&self.cech_total) && trimmed(&self.order) == trimmed(&self.cech) }
}

fn trimmed(v: &[usize]) -> &[usize] {
  let end = v.iter().rposition(|&d| d != 0).map_or(0, |i| i + 1);
  &v[..end]
}

/// Nerve of the cover `{↑z}`; fails unless every nonempty intersection is principal.
fn basic_nerve(t: &UpperIdealTopology) -> Result<Vec<NerveSimplex>> {
  let p = t.poset();
  let n = p.len();
  for x in 0..n {
    for y in x + 1..n {
      let w = t.principal(x) & t.principal(y);
      if w != 0 && t.generator(w).is_none() {
        return Err(Error::NoGoodCover(format!("↑{} ∩ ↑{} = {} is not principal", p.name(x), p.name(y), t.name_set(w))));
      }
    }
  }
  let mut nerve = Vec::new();
  let mut frontier: Vec<(Vec<usize>, OpenSet)> = (0..n).map(|x| (vec![x], t.principal(x))).collect();
  while !frontier.is_empty() {
    let mut next = Vec::new();
    for (members, w) in frontier {
      let generator = t.generator(w).ok_or_else(|| Error::NoGoodCover(format!("intersection {} is not principal", t.name_set(w))))?;
      for z in members.last().unwrap() + 1..n {
        let v = w & t.principal(z);
        if v != 0 {
          let mut m = members.clone();
          m.push(z);
          next.push((m, v));
        }
      }
      nerve.push(NerveSimplex { members, generator });
    }
    frontier = next;
  }
  Ok(nerve)
}

/// Compares order cohomology with the Čech-order total cohomology of the cover by
/// principal upper ideals. Requires every nonempty intersection of the cover to
/// be principal, which holds when pairs with an upper bound have a least one.
pub fn lattice_comparison<F: Field>(g: &CoefficientSystem<F>) -> Result<LatticeComparison> {
  let t = UpperIdealTopology::new(g.poset().clone())?;
  let nerve = basic_nerve(&t)?;
  let order = order_cohomology(g);
  let layout = CochainLayout::new(g);
  let n = g.poset().len();
  let degrees = layout.degrees();

  // per generator: cochain coordinates in each degree and the order differential
  let mut local: BTreeMap<usize, (Vec<Vec<usize>>, CochainComplex<F>)> = BTreeMap::new();
  for s in &nerve {
    local.entry(s.generator).or_insert_with(|| {
      let y = ChainSelector::of_elements(g.poset(), &t.elements(t.principal(s.generator)));
      let coords = (0..degrees).map(|k| layout.coordinates(&y, k)).collect();
      (coords, layout.selector_complex(g, &y).expect("subcomplexes are locally closed"))
    });
  }
  let index: BTreeMap<&[usize], usize> = nerve.iter().enumerate().map(|(i, s)| (s.members.as_slice(), i)).collect();

  // total complex blocks (nerve simplex, order degree), grouped by total degree
  let top = nerve.iter().map(|s| s.members.len() - 1).max().unwrap_or(0) + degrees;
  let mut blocks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); top];
  let mut offset = BTreeMap::new();
  let mut dims = vec![0; top];
  for (i, s) in nerve.iter().enumerate() {
    for q in 0..degrees {
      let len = local[&s.generator].0[q].len();
      let total = s.members.len() - 1 + q;
      offset.insert((i, q), dims[total]);
      blocks[total].push((i, q, len));
      dims[total] += len;
    }
  }
  let mut d = Vec::new();
  for m in 0..top.saturating_sub(1) {
    let mut mat = Matrix::zeros(dims[m + 1], dims[m]);
    for &(i, q, len) in &blocks[m] {
      if len == 0 {
        continue;
      }
      let s = &nerve[i];
      let col = offset[&(i, q)];
      let p = s.members.len() - 1;
      // order direction, with the sign (-1)^p
      if q + 1 < degrees {
        let dq = local[&s.generator].1.differential(q);
        let block = if p % 2 == 1 { -&dq } else { dq };
        mat.set_block(offset[&(i, q + 1)], col, &block);
      }
      // Čech direction: s is the j-th face of every coface s ∪ {z}
      for z in 0..n {
        if s.members.contains(&z) {
          continue;
        }
        let mut coface = s.members.clone();
        coface.push(z);
        coface.sort_unstable();
        let Some(&ci) = index.get(coface.as_slice()) else { continue };
        let j = coface.iter().position(|&e| e == z).unwrap();
        let (from, to) = (&local[&s.generator].0[q], &local[&nerve[ci].generator].0[q]);
        let sign = F::sign(j % 2 == 1);
        let row = offset[&(ci, q)];
        for (r, c) in to.iter().enumerate() {
          let k = from.binary_search(c).expect("restriction of a smaller upper ideal");
          mat.set(row + r, col + k, sign.clone());
        }
      }
    }
    d.push(mat);
  }
  let cech_total = cohomology_dims_sparse(&dims, &d);

  let size = nerve.iter().map(|s| s.members.len()).max().unwrap_or(0);
  let mut cdims = vec![0; size];
  let mut coff = BTreeMap::new();
  for (i, s) in nerve.iter().enumerate() {
    coff.insert(i, cdims[s.members.len() - 1]);
    cdims[s.members.len() - 1] += g.dim(s.generator);
  }
  let mut cd = Vec::new();
  for p in 0..size.saturating_sub(1) {
    let mut mat = Matrix::zeros(cdims[p + 1], cdims[p]);
    for (ci, c) in nerve.iter().enumerate().filter(|(_, c)| c.members.len() == p + 2) {
      for j in 0..c.members.len() {
        let mut face = c.members.clone();
        face.remove(j);
        let fi = index[face.as_slice()];
        let (a, b) = (nerve[fi].generator, c.generator);
        let phi = if a == b { Matrix::identity(g.dim(a)) } else { g.map(a, b).expect("generators are ordered").clone() };
        let block = if j % 2 == 1 { -&phi } else { phi };
        mat.set_block(coff[&ci], coff[&fi], &block);
      }
    }
    cd.push(mat);
  }
  let cech = cohomology_dims_sparse(&cdims, &cd);
  Ok(LatticeComparison { order, cech_total, cech, nerve })
}

fn cohomology_dims_sparse<F: Field>(dims: &[usize], d: &[Matrix<F>]) -> Vec<usize> {
  let ranks: Vec<usize> = d.iter().map(|m| SparseMatrix::from_dense(m).rank()).collect();
  (0..dims.len())
    .map(|k| {
      let out = ranks.get(k).copied().unwrap_or(0);
      let inc = if k == 0 { 0 } else { ranks.get(k - 1).copied().unwrap_or(0) };
      dims[k] - out - inc
    })
    .collect()
}

#[cfg(test)]
mod tests {
  use num_rational::BigRational;

  use super::*;
  use crate::order::FinitePoset;

  type Q = BigRational;

  #[test]
  fn diamond_lattice_agrees() {
    let p = FinitePoset::new(&["0", "x", "y", "1"], &[("0", "x"), ("0", "y"), ("x", "1"), ("y", "1")]).unwrap();
    let g = CoefficientSystem::<Q>::constant(p, 2);
    let c = lattice_comparison(&g).unwrap();
    assert!(c.agree(), "{c:?}");
    assert_eq!(trimmed(&c.order), &[2]);
  }

  #[test]
  fn join_semilattice_without_bottom() {
    // the wedge: ↑a ∩ ↑b = ↑c
    let p = FinitePoset::new(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap();
    let maps = BTreeMap::from([((0, 2), Matrix::zeros(1, 0)), ((1, 2), Matrix::zeros(1, 0))]);
    let g = CoefficientSystem::<Q>::new(p, vec![0, 0, 1], maps).unwrap();
    let c = lattice_comparison(&g).unwrap();
    assert_eq!(trimmed(&c.order), &[0, 1]);
    assert!(c.agree(), "{c:?}");
  }

  #[test]
  fn chain_agrees() {
    let p = FinitePoset::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
    let g = CoefficientSystem::<Q>::constant(p, 1);
    assert!(lattice_comparison(&g).unwrap().agree());
  }

  #[test]
  fn no_good_cover() {
    let p = FinitePoset::new(&["a", "b", "c", "d", "e"], &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "e"), ("d", "e")]).unwrap();
    let maps = BTreeMap::from([((2, 4), Matrix::zeros(1, 0)), ((3, 4), Matrix::zeros(1, 0))]);
    let g = CoefficientSystem::<Q>::new(p, vec![0, 0, 0, 0, 1], maps).unwrap();
    let err = lattice_comparison(&g).unwrap_err();
    assert!(matches!(err, Error::NoGoodCover(_)));
    assert!(err.to_string().contains("↑a ∩ ↑b = {c,d,e}"));
  }
}
