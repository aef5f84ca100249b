use std::collections::BTreeMap;

use super::SubdivisionMap;
use crate::complex::{OrientedComplex, Simplex, Vertex};
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::scalar::Field;

/// Stellar subdivision of `x` at `sigma` with new vertex `w`.
///
/// Every simplex `τ ⊇ σ` is replaced by the cone from `w` over `∂σ * (τ∖σ)`.
/// The chain map sends such a `τ = [v₀,…,v_k]` to the sum, over positions `i`
/// with `v_i ∈ σ`, of `τ` with `v_i` replaced by `w`; all other simplices map
/// to themselves. Starring at a vertex is the identity subdivision.
pub fn stellar_subdivide<F: Field>(x: &OrientedComplex, sigma: &Simplex, w: &Vertex) -> Result<SubdivisionMap<F>> {
  if !x.contains(sigma) {
    return Err(Error::SimplexNotFound(sigma.to_string()));
  }
  if sigma.dim() == 0 {
    return Ok(SubdivisionMap::identity(x));
  }
  if x.has_vertex(w) {
    return Err(Error::VertexCollision(w.to_string()));
  }

  let mut fine_top = Vec::new();
  for s in x.all_simplices() {
    if !sigma.is_face_of(s) {
      fine_top.push(s.clone());
      continue;
    }
    let rest = s.minus(sigma);
    for (_, facet) in sigma.boundary_faces() {
      let base = rest.as_ref().map_or(facet.clone(), |r| facet.union(r));
      fine_top.push(base.join(w)?);
    }
  }
  let fine = OrientedComplex::from_simplices(fine_top);

  let carrier: BTreeMap<Simplex, Simplex> = fine
    .all_simplices()
    .map(|t| {
      let c = if t.contains(w) {
        match t.minus(&Simplex::vertex(w.clone())) {
          Some(rest) => rest.union(sigma),
          None => sigma.clone(),
        }
      } else {
        t.clone()
      };
      (t.clone(), c)
    })
    .collect();

  let top = x.dim().map_or(0, |d| d + 1);
  let mut chain_map = Vec::with_capacity(top);
  for k in 0..top {
    let mut m = SparseMatrix::zeros(fine.count(k), 0);
    for s in x.simplices(k) {
      if !sigma.is_face_of(s) {
        m.push_column([(fine.index_of(s).expect("unstarred simplices survive"), F::one())]);
        continue;
      }
      let mut entries = Vec::new();
      for (i, v) in s.vertices().iter().enumerate() {
        if !sigma.contains(v) {
          continue;
        }
        let mut seq = s.vertices().to_vec();
        seq[i] = w.clone();
        let (piece, odd) = Simplex::oriented(seq)?;
        let row = fine.index_of(&piece).ok_or_else(|| Error::SimplexNotFound(piece.to_string()))?;
        entries.push((row, F::sign(odd)));
      }
      m.push_column(entries);
    }
    chain_map.push(m);
  }
  Ok(SubdivisionMap::from_parts_unchecked(x.clone(), fine, carrier, chain_map))
}

/// Name of the barycenter vertex of `s`: `b(v₀,…,v_k)` over the sorted vertices.
pub fn barycentric_vertex_name(s: &Simplex) -> Vertex {
  let names: Vec<&str> = s.vertices().iter().map(Vertex::as_str).collect();
  Vertex::from(format!("b({})", names.join(",")))
}

/// Barycentric subdivision as the composite of stellar moves at every simplex of
/// positive dimension, highest dimension first.
pub fn barycentric_subdivide<F: Field>(x: &OrientedComplex) -> Result<SubdivisionMap<F>> {
  let mut acc = SubdivisionMap::identity(x);
  let Some(top) = x.dim() else { return Ok(acc) };
  for d in (1..=top).rev() {
    for s in x.simplices(d) {
      let step = stellar_subdivide(acc.fine(), s, &barycentric_vertex_name(s))?;
      acc = acc.compose(&step)?;
    }
  }
  Ok(acc)
}
