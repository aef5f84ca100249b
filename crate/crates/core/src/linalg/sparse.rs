use std::collections::BTreeMap;

use super::Matrix;
use crate::scalar::Field;

/// Column-compressed sparse matrix. Each column holds `(row, value)` pairs sorted
/// by row with no stored zeros, so structural equality is matrix equality.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<F> {
  rows: usize,
  columns: Vec<Vec<(usize, F)>>,
}

impl<F: Field> SparseMatrix<F> {
  pub fn zeros(rows: usize, cols: usize) -> Self { Self { rows, columns: vec![Vec::new(); cols] } }

  pub fn identity(n: usize) -> Self { Self { rows: n, columns: (0..n).map(|i| vec![(i, F::one())]).collect() } }

  /// Builds a column from arbitrary entries, merging duplicates and dropping zeros.
  pub fn push_column(&mut self, entries: impl IntoIterator<Item = (usize, F)>) {
    let mut acc: BTreeMap<usize, F> = BTreeMap::new();
    for (r, v) in entries {
      assert!(r < self.rows, "row index out of range");
      let slot = acc.entry(r).or_insert_with(F::zero);
      *slot = slot.clone() + v;
    }
    self.columns.push(acc.into_iter().filter(|(_, v)| !v.is_zero()).collect());
  }

  pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, F)>>) -> Self {
    let mut m = Self::zeros(rows, 0);
    for c in columns {
      m.push_column(c);
    }
    m
  }

  pub fn rows(&self) -> usize { self.rows }

  pub fn cols(&self) -> usize { self.columns.len() }

  pub fn column(&self, j: usize) -> &[(usize, F)] { &self.columns[j] }

  pub fn nnz(&self) -> usize { self.columns.iter().map(Vec::len).sum() }

  pub fn is_zero(&self) -> bool { self.columns.iter().all(Vec::is_empty) }

  pub fn get(&self, i: usize, j: usize) -> F {
    self.columns[j].binary_search_by_key(&i, |(r, _)| *r).map(|k| self.columns[j][k].1.clone()).unwrap_or_else(|_| F::zero())
  }

  pub fn to_dense(&self) -> Matrix<F> {
    let mut m = Matrix::zeros(self.rows, self.cols());
    for (j, col) in self.columns.iter().enumerate() {
      for (i, v) in col {
        m.set(*i, j, v.clone());
      }
    }
    m
  }

  pub fn from_dense(m: &Matrix<F>) -> Self {
    Self::from_columns(m.rows(), (0..m.cols()).map(|j| (0..m.rows()).map(|i| (i, m.get(i, j).clone())).collect()).collect())
  }

  pub fn transpose(&self) -> Self {
    let mut cols: Vec<Vec<(usize, F)>> = vec![Vec::new(); self.rows];
    for (j, col) in self.columns.iter().enumerate() {
      for (i, v) in col {
        cols[*i].push((j, v.clone()));
      }
    }
    Self { rows: self.cols(), columns: cols }
  }

  pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
    assert_eq!(v.len(), self.cols(), "vector length mismatch");
    let mut out = vec![F::zero(); self.rows];
    for (j, col) in self.columns.iter().enumerate() {
      if v[j].is_zero() {
        continue;
      }
      for (i, a) in col {
        out[*i] = out[*i].clone() + a.clone() * v[j].clone();
      }
    }
    out
  }

  /// `self · rhs`.
  pub fn mul(&self, rhs: &Self) -> Self {
    assert_eq!(self.cols(), rhs.rows, "product shape mismatch");
    let mut out = Self::zeros(self.rows, 0);
    for col in &rhs.columns {
      let mut entries = Vec::new();
      for (k, b) in col {
        for (i, a) in &self.columns[*k] {
          entries.push((*i, a.clone() * b.clone()));
        }
      }
      out.push_column(entries);
    }
    out
  }

  pub fn sub(&self, rhs: &Self) -> Self {
    assert_eq!((self.rows, self.cols()), (rhs.rows, rhs.cols()), "difference shape mismatch");
    let mut out = Self::zeros(self.rows, 0);
    for (a, b) in self.columns.iter().zip(&rhs.columns) {
      out.push_column(a.iter().cloned().chain(b.iter().map(|(i, v)| (*i, -v.clone()))));
    }
    out
  }

  /// Rank by column reduction keyed on the lowest nonzero row of each column.
  pub fn rank(&self) -> usize {
    let mut owner: BTreeMap<usize, Vec<(usize, F)>> = BTreeMap::new();
    for col in &self.columns {
      let mut c = col.clone();
      while let Some(&(low, _)) = c.last() {
        let Some(pivot_col) = owner.get(&low) else { break };
        let factor = c.last().unwrap().1.clone() / pivot_col.last().unwrap().1.clone();
        c = axpy(&c, &factor, pivot_col);
      }
      if let Some(&(low, _)) = c.last() {
        owner.insert(low, c);
      }
    }
    owner.len()
  }
}

/// `x - factor · y` on sorted sparse vectors.
fn axpy<F: Field>(x: &[(usize, F)], factor: &F, y: &[(usize, F)]) -> Vec<(usize, F)> {
  let mut out = Vec::with_capacity(x.len() + y.len());
  let (mut i, mut j) = (0, 0);
  while i < x.len() || j < y.len() {
    let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
    let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
    if take_x {
      out.push(x[i].clone());
      i += 1;
    } else if take_y {
      out.push((y[j].0, -(factor.clone() * y[j].1.clone())));
      j += 1;
    } else {
      let v = x[i].1.clone() - factor.clone() * y[j].1.clone();
      if !v.is_zero() {
        out.push((x[i].0, v));
      }
      i += 1;
      j += 1;
    }
  }
  out
}
