use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Field;

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
  rows: usize,
  cols: usize,
  data: Vec<F>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
  pub reduced: Matrix<F>,
  pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
  pub fn zeros(rows: usize, cols: usize) -> Self {
    Self { rows, cols, data: vec![F::zero(); rows * cols] }
  }

  pub fn identity(n: usize) -> Self {
    let mut m = Self::zeros(n, n);
    for i in 0..n {
      m.set(i, i, F::one());
    }
    m
  }

  pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
    let mut data = Vec::with_capacity(rows * cols);
    for i in 0..rows {
      for j in 0..cols {
        data.push(f(i, j));
      }
    }
    Self { rows, cols, data }
  }

  /// Builds a matrix from its rows. `cols` is needed to shape matrices without rows.
  pub fn from_rows(cols: usize, rows: Vec<Vec<F>>) -> Self {
    let n = rows.len();
    let mut data = Vec::with_capacity(n * cols);
    for row in rows {
      assert_eq!(row.len(), cols, "ragged rows");
      data.extend(row);
    }
    Self { rows: n, cols, data }
  }

  /// Builds a matrix whose columns are the given vectors.
  pub fn from_columns(rows: usize, columns: &[Vec<F>]) -> Self {
    Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
  }

  pub fn column_vector(v: &[F]) -> Self { Self::from_fn(v.len(), 1, |i, _| v[i].clone()) }

  pub fn rows(&self) -> usize { self.rows }

  pub fn cols(&self) -> usize { self.cols }

  pub fn get(&self, i: usize, j: usize) -> &F { &self.data[i * self.cols + j] }

  pub fn set(&mut self, i: usize, j: usize, value: F) { self.data[i * self.cols + j] = value; }

  pub fn add_at(&mut self, i: usize, j: usize, value: F) {
    let slot = &mut self.data[i * self.cols + j];
    *slot = slot.clone() + value;
  }

  pub fn row(&self, i: usize) -> &[F] { &self.data[i * self.cols..(i + 1) * self.cols] }

  pub fn column(&self, j: usize) -> Vec<F> { (0..self.rows).map(|i| self.get(i, j).clone()).collect() }

  pub fn columns(&self) -> Vec<Vec<F>> { (0..self.cols).map(|j| self.column(j)).collect() }

  pub fn is_zero(&self) -> bool { self.data.iter().all(|x| x.is_zero()) }

  pub fn transpose(&self) -> Self { Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone()) }

  pub fn scale(&self, c: &F) -> Self {
    Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.clone() * c.clone()).collect() }
  }

  pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
    assert_eq!(v.len(), self.cols, "vector length mismatch");
    (0..self.rows)
      .map(|i| {
        self.row(i).iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).fold(F::zero(), |acc, (a, b)| {
          acc + a.clone() * b.clone()
        })
      })
      .collect()
  }

  pub fn select_rows(&self, rows: &[usize]) -> Self { Self::from_fn(rows.len(), self.cols, |i, j| self.get(rows[i], j).clone()) }

  pub fn select_cols(&self, cols: &[usize]) -> Self { Self::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone()) }

  /// Places `other` to the right of `self`.
  pub fn hstack(&self, other: &Self) -> Self {
    assert_eq!(self.rows, other.rows, "hstack row mismatch");
    Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
      if j < self.cols {
        self.get(i, j).clone()
      } else {
        other.get(i, j - self.cols).clone()
      }
    })
  }

  /// Places `other` below `self`.
  pub fn vstack(&self, other: &Self) -> Self {
    assert_eq!(self.cols, other.cols, "vstack column mismatch");
    let mut data = self.data.clone();
    data.extend(other.data.iter().cloned());
    Self { rows: self.rows + other.rows, cols: self.cols, data }
  }

  pub fn block_diagonal(blocks: &[Self]) -> Self {
    let rows = blocks.iter().map(|b| b.rows).sum();
    let cols = blocks.iter().map(|b| b.cols).sum();
    let mut out = Self::zeros(rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
      out.set_block(r0, c0, b);
      r0 += b.rows;
      c0 += b.cols;
    }
    out
  }

  /// Overwrites the block with top-left corner `(r0, c0)`.
  pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
    for i in 0..block.rows {
      for j in 0..block.cols {
        self.set(r0 + i, c0 + j, block.get(i, j).clone());
      }
    }
  }

  pub fn echelon(&self) -> Echelon<F> {
    let mut m = self.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
      if r == m.rows {
        break;
      }
      let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
      m.swap_rows(r, p);
      let inv = F::one() / m.get(r, c).clone();
      for j in c..m.cols {
        let v = m.get(r, j).clone() * inv.clone();
        m.set(r, j, v);
      }
      for i in 0..m.rows {
        if i == r || m.get(i, c).is_zero() {
          continue;
        }
        let factor = m.get(i, c).clone();
        for j in c..m.cols {
          if m.get(r, j).is_zero() {
            continue;
          }
          let v = m.get(i, j).clone() - factor.clone() * m.get(r, j).clone();
          m.set(i, j, v);
        }
      }
      pivots.push(c);
      r += 1;
    }
    Echelon { reduced: m, pivots }
  }

  fn swap_rows(&mut self, a: usize, b: usize) {
    if a == b {
      return;
    }
    for j in 0..self.cols {
      self.data.swap(a * self.cols + j, b * self.cols + j);
    }
  }

  pub fn rank(&self) -> usize {
    if self.rows == 0 || self.cols == 0 {
      return 0;
    }
    // eliminate along the shorter side
    if self.rows > self.cols {
      self.transpose().echelon().pivots.len()
    } else {
      self.echelon().pivots.len()
    }
  }

  /// Kernel basis read off the reduced echelon form: one vector per free column,
  /// with a 1 in that column. Returned as the columns of a `cols × nullity` matrix.
  pub fn kernel(&self) -> Self {
    let Echelon { reduced, pivots } = self.echelon();
    let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Self::zeros(self.cols, free.len());
    for (k, &f) in free.iter().enumerate() {
      basis.set(f, k, F::one());
      for (r, &p) in pivots.iter().enumerate() {
        let v = reduced.get(r, f);
        if !v.is_zero() {
          basis.set(p, k, -v.clone());
        }
      }
    }
    basis
  }

  pub fn nullity(&self) -> usize { self.cols - self.rank() }

  /// Some solution of `self · x = b`, with free variables set to zero.
  pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
    assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
    let aug = self.hstack(&Self::column_vector(b));
    let Echelon { reduced, pivots } = aug.echelon();
    if pivots.last() == Some(&self.cols) {
      return None;
    }
    let mut x = vec![F::zero(); self.cols];
    for (r, &p) in pivots.iter().enumerate() {
      x[p] = reduced.get(r, self.cols).clone();
    }
    Some(x)
  }

  pub fn inverse(&self) -> Option<Self> {
    if self.rows != self.cols {
      return None;
    }
    let n = self.rows;
    let Echelon { reduced, pivots } = self.hstack(&Self::identity(n)).echelon();
    if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
      return None;
    }
    Some(Self::from_fn(n, n, |i, j| reduced.get(i, n + j).clone()))
  }

  /// Whether every column of `other` lies in the column space of `self`.
  pub fn spans(&self, other: &Self) -> bool { self.hstack(other).rank() == self.rank() }
}

impl<F: Field> Mul for &Matrix<F> {
  type Output = Matrix<F>;

  fn mul(self, rhs: &Matrix<F>) -> Matrix<F> {
    assert_eq!(self.cols, rhs.rows, "product shape mismatch");
    let mut out = Matrix::zeros(self.rows, rhs.cols);
    for i in 0..self.rows {
      for k in 0..self.cols {
        let a = self.get(i, k);
        if a.is_zero() {
          continue;
        }
        for j in 0..rhs.cols {
          let b = rhs.get(k, j);
          if !b.is_zero() {
            out.add_at(i, j, a.clone() * b.clone());
          }
        }
      }
    }
    out
  }
}

impl<F: Field> Add for &Matrix<F> {
  type Output = Matrix<F>;

  fn add(self, rhs: &Matrix<F>) -> Matrix<F> {
    assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sum shape mismatch");
    Matrix {
      rows: self.rows,
      cols: self.cols,
      data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect(),
    }
  }
}

impl<F: Field> Sub for &Matrix<F> {
  type Output = Matrix<F>;

  fn sub(self, rhs: &Matrix<F>) -> Matrix<F> {
    assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "difference shape mismatch");
    Matrix {
      rows: self.rows,
      cols: self.cols,
      data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect(),
    }
  }
}

impl<F: Field> Neg for &Matrix<F> {
  type Output = Matrix<F>;

  fn neg(self) -> Matrix<F> { Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x.clone()).collect() } }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
    for i in 0..self.rows {
      writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
    }
    write!(f, "]")
  }
}
