//! Finite cochain complexes of vector spaces, induced maps on cohomology and
//! long exact sequences.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Field;

/// `C⁰ → C¹ → ⋯ → Cⁿ` with `d[k] : C^k → C^{k+1}` stored as `dim(k+1) × dim(k)` matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct CochainComplex<F> {
  dims: Vec<usize>,
  d: Vec<Matrix<F>>,
}

/// Per-degree components of a cochain map.
pub type CochainMap<F> = Vec<Matrix<F>>;

impl<F: Field> CochainComplex<F> {
  /// `d` holds the differentials out of degrees `0..dims.len() - 1`.
  pub fn new(dims: Vec<usize>, d: Vec<Matrix<F>>) -> Result<Self> {
    if d.len() + 1 != dims.len().max(1) {
      return Err(Error::DimensionMismatch(format!("{} differentials for {} degrees", d.len(), dims.len())));
    }
    for (k, m) in d.iter().enumerate() {
      if m.rows() != dims[k + 1] || m.cols() != dims[k] {
        return Err(Error::DimensionMismatch(format!("differential {k} has the wrong shape")));
      }
    }
    for k in 1..d.len() {
      if !(&d[k] * &d[k - 1]).is_zero() {
        return Err(Error::InvariantViolation(format!("d∘d ≠ 0 in degree {}", k - 1)));
      }
    }
    Ok(Self { dims, d })
  }

  pub fn zero() -> Self { Self { dims: Vec::new(), d: Vec::new() } }

  /// Number of degrees.
  pub fn len(&self) -> usize { self.dims.len() }

  pub fn is_empty(&self) -> bool { self.dims.is_empty() }

  pub fn dim(&self, k: usize) -> usize { self.dims.get(k).copied().unwrap_or(0) }

  pub fn dims(&self) -> &[usize] { &self.dims }

  /// `d^k`, including the zero maps at either end.
  pub fn differential(&self, k: usize) -> Matrix<F> { self.d.get(k).cloned().unwrap_or_else(|| Matrix::zeros(self.dim(k + 1), self.dim(k))) }

  /// Basis of `Z^k` as columns.
  pub fn cocycles(&self, k: usize) -> Matrix<F> { self.differential(k).kernel() }

  /// Spanning set of `B^k` as columns.
  pub fn coboundaries(&self, k: usize) -> Matrix<F> {
    if k == 0 {
      Matrix::zeros(self.dim(0), 0)
    } else {
      self.differential(k - 1)
    }
  }

  pub fn cohomology_dim(&self, k: usize) -> usize { self.differential(k).nullity() - self.coboundaries(k).rank() }

  pub fn cohomology_dims(&self) -> Vec<usize> { (0..self.len()).map(|k| self.cohomology_dim(k)).collect() }

  /// Cocycles representing a basis of `H^k`: the kernel-basis vectors that are
  /// pivots after the coboundaries, in order.
  pub fn cohomology_basis(&self, k: usize) -> Matrix<F> {
    let b = self.coboundaries(k);
    let z = self.cocycles(k);
    let pivots = b.hstack(&z).echelon().pivots;
    let chosen: Vec<usize> = pivots.into_iter().filter(|&p| p >= b.cols()).map(|p| p - b.cols()).collect();
    z.select_cols(&chosen)
  }

  pub fn is_cocycle(&self, k: usize, v: &[F]) -> bool { self.differential(k).mul_vec(v).iter().all(|x| x.is_zero()) }

  pub fn is_coboundary(&self, k: usize, v: &[F]) -> bool { self.coboundaries(k).spans(&Matrix::column_vector(v)) }

  /// Checks `f^{k+1} d_A = d_B f^k` in every degree.
  pub fn check_chain_map(f: &CochainMap<F>, a: &Self, b: &Self) -> Result<()> {
    let n = a.len().max(b.len());
    for k in 0..n {
      let fk = component(f, k, a, b);
      if fk.rows() != b.dim(k) || fk.cols() != a.dim(k) {
        return Err(Error::DimensionMismatch(format!("cochain map component {k} has the wrong shape")));
      }
      if &component(f, k + 1, a, b) * &a.differential(k) != &b.differential(k) * &fk {
        return Err(Error::InvariantViolation(format!("cochain map does not commute with d in degree {k}")));
      }
    }
    Ok(())
  }
}

fn component<F: Field>(f: &CochainMap<F>, k: usize, a: &CochainComplex<F>, b: &CochainComplex<F>) -> Matrix<F> {
  f.get(k).cloned().unwrap_or_else(|| Matrix::zeros(b.dim(k), a.dim(k)))
}

/// Rank of `H^k(f) : H^k(A) → H^k(B)`.
pub fn induced_rank<F: Field>(f: &CochainMap<F>, a: &CochainComplex<F>, b: &CochainComplex<F>, k: usize) -> usize {
  rank_modulo(&(&component(f, k, a, b) * &a.cocycles(k)), &b.coboundaries(k))
}

/// `rank [v | b] − rank b`: the rank of the columns of `v` modulo the span of `b`.
pub fn rank_modulo<F: Field>(v: &Matrix<F>, b: &Matrix<F>) -> usize { b.hstack(v).rank() - b.rank() }

/// `0 → A → B → C → 0` with cochain maps `f : A → B` and `g : B → C`.
#[derive(Clone, Debug)]
pub struct ShortExactSequence<F> {
  pub a: CochainComplex<F>,
  pub b: CochainComplex<F>,
  pub c: CochainComplex<F>,
  pub f: CochainMap<F>,
  pub g: CochainMap<F>,
}

/// One term of the long exact sequence with the ranks on either side of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesNode {
  /// `"A"`, `"B"` or `"C"`.
  pub term: &'static str,
  pub degree: usize,
  pub dimension: usize,
  /// Rank of the map into this term.
  pub incoming_rank: usize,
  /// Dimension of the kernel of the map out of this term.
  pub outgoing_kernel: usize,
  pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LesReport {
  /// `f` injective, `g` surjective and `im f = ker g` in every degree.
  pub short_exact: bool,
  /// Consecutive maps of the long sequence compose to zero on cohomology.
  pub compositions_vanish: bool,
  pub nodes: Vec<LesNode>,
}

impl LesReport {
  pub fn is_exact(&self) -> bool { self.short_exact && self.compositions_vanish && self.nodes.iter().all(|n| n.exact) }
}

impl<F: Field> ShortExactSequence<F> {
  pub fn degrees(&self) -> usize { self.a.len().max(self.b.len()).max(self.c.len()) }

  fn f(&self, k: usize) -> Matrix<F> { component(&self.f, k, &self.a, &self.b) }

  fn g(&self, k: usize) -> Matrix<F> { component(&self.g, k, &self.b, &self.c) }

  /// Checks both maps commute with the differentials.
  pub fn check_maps(&self) -> Result<()> {
    CochainComplex::check_chain_map(&self.f, &self.a, &self.b)?;
    CochainComplex::check_chain_map(&self.g, &self.b, &self.c)
  }

  pub fn is_short_exact(&self) -> bool {
    (0..self.degrees()).all(|k| {
      let (f, g) = (self.f(k), self.g(k));
      f.rank() == self.a.dim(k) && g.rank() == self.c.dim(k) && (&g * &f).is_zero() && self.b.dim(k) == self.a.dim(k) + self.c.dim(k)
    })
  }

  /// Image under the connecting map of a `k`-cocycle of `C`, as a `(k+1)`-cocycle of `A`.
  pub fn connecting(&self, k: usize, z: &[F]) -> Result<Vec<F>> {
    let lift = self.g(k).solve(z).ok_or_else(|| Error::InvariantViolation(format!("g is not surjective in degree {k}")))?;
    let pushed = self.b.differential(k).mul_vec(&lift);
    self.f(k + 1).solve(&pushed).ok_or_else(|| Error::InvariantViolation(format!("d(lift) is not in the image of f in degree {}", k + 1)))
  }

  /// Connecting map applied to the columns of `zs`.
  pub fn connecting_matrix(&self, k: usize, zs: &Matrix<F>) -> Result<Matrix<F>> {
    let cols: Result<Vec<Vec<F>>> = zs.columns().iter().map(|z| self.connecting(k, z)).collect();
    Ok(Matrix::from_columns(self.a.dim(k + 1), &cols?))
  }

  /// Verifies short exactness, then exactness of the long sequence at every term
  /// by rank arithmetic together with the vanishing of consecutive composites.
  pub fn check(&self) -> Result<LesReport> {
    self.check_maps()?;
    let short_exact = self.is_short_exact();
    let n = self.degrees();
    let mut nodes = Vec::with_capacity(3 * n);
    let mut compositions_vanish = true;
    if !short_exact {
      return Ok(LesReport { short_exact, compositions_vanish: false, nodes });
    }
    let mut delta_rank = vec![0; n];
    for k in 0..n {
      let zc = self.c.cocycles(k);
      let dz = self.connecting_matrix(k, &zc)?;
      delta_rank[k] = rank_modulo(&dz, &self.a.coboundaries(k + 1));
      // f* ∘ ∂ = 0
      compositions_vanish &= self.b.coboundaries(k + 1).spans(&(&self.f(k + 1) * &dz));
      // ∂ ∘ g* = 0
      let gz = &self.g(k) * &self.b.cocycles(k);
      compositions_vanish &= self.a.coboundaries(k + 1).spans(&self.connecting_matrix(k, &gz)?);
      // g* ∘ f* = 0
      compositions_vanish &= self.c.coboundaries(k).spans(&(&(&self.g(k) * &self.f(k)) * &self.a.cocycles(k)));
    }
    for k in 0..n {
      let rf = induced_rank(&self.f, &self.a, &self.b, k);
      let rg = induced_rank(&self.g, &self.b, &self.c, k);
      let (ha, hb, hc) = (self.a.cohomology_dim(k), self.b.cohomology_dim(k), self.c.cohomology_dim(k));
      let before = if k == 0 { 0 } else { delta_rank[k - 1] };
      for (term, dimension, incoming_rank, outgoing_rank) in [("A", ha, before, rf), ("B", hb, rf, rg), ("C", hc, rg, delta_rank[k])] {
        let outgoing_kernel = dimension - outgoing_rank;
        nodes.push(LesNode { term, degree: k, dimension, incoming_rank, outgoing_kernel, exact: incoming_rank == outgoing_kernel });
      }
    }
    Ok(LesReport { short_exact, compositions_vanish, nodes })
  }
}

/// Block-diagonal direct sum of complexes.
pub fn direct_sum<F: Field>(a: &CochainComplex<F>, b: &CochainComplex<F>) -> CochainComplex<F> {
  let n = a.len().max(b.len());
  let dims = (0..n).map(|k| a.dim(k) + b.dim(k)).collect();
  let d = (0..n.saturating_sub(1)).map(|k| Matrix::block_diagonal(&[a.differential(k), b.differential(k)])).collect();
  CochainComplex::new(dims, d).expect("a direct sum of complexes is a complex")
}
