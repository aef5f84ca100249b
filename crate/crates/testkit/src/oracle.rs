//! Plain Gaussian elimination on row lists, written independently of the
//! library's linear algebra.

use num_traits::Zero;
use transgress_core::transgression::{ChainSystem, CycleAssignment};

use crate::Q;

pub fn rank(rows: &[Vec<Q>]) -> usize {
  let mut m: Vec<Vec<Q>> = rows.to_vec();
  let cols = m.first().map_or(0, Vec::len);
  let mut r = 0;
  for c in 0..cols {
    let Some(pivot) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
    m.swap(r, pivot);
    let lead = m[r][c].clone();
    for i in 0..m.len() {
      if i != r && !m[i][c].is_zero() {
        let factor = m[i][c].clone() / lead.clone();
        for k in c..cols {
          let sub = factor.clone() * m[r][k].clone();
          m[i][k] -= sub;
        }
      }
    }
    r += 1;
  }
  r
}

/// `A x = b` has a solution.
pub fn solvable(a: &[Vec<Q>], b: &[Q]) -> bool {
  let augmented: Vec<Vec<Q>> = a.iter().zip(b).map(|(row, x)| row.iter().cloned().chain([x.clone()]).collect()).collect();
  rank(a) == rank(&augmented)
}

/// Some `γ` satisfies `∂γ(pq) = ζ(q) − Φ(p,q)ζ(p)` on every strict pair and
/// `γ(qr) − γ(pr) + Φ(q,r)γ(pq) = 0` on every strict triple.
pub fn path_independent_exists(sys: &ChainSystem<Q>, zeta: &CycleAssignment<Q>) -> bool {
  let p = sys.poset();
  let n = p.len();
  let j = zeta.degree + 1;
  let mut pairs = Vec::new();
  for a in 0..n {
    for b in 0..n {
      if p.lt(a, b) {
        pairs.push((a, b));
      }
    }
  }
  let mut offset = Vec::new();
  let mut width = 0;
  for &(_, b) in &pairs {
    offset.push(width);
    width += sys.complex(b).dim(j);
  }
  let slot = |a: usize, b: usize| pairs.iter().position(|&e| e == (a, b)).unwrap();
  let mut rows = Vec::new();
  let mut rhs = Vec::new();
  for (e, &(a, b)) in pairs.iter().enumerate() {
    let d = sys.complex(b).boundary(j);
    let phi = sys.map(a, b, zeta.degree);
    for r in 0..d.rows() {
      let mut row = vec![Q::zero(); width];
      for c in 0..d.cols() {
        row[offset[e] + c] = d.get(r, c).clone();
      }
      rows.push(row);
      let pushed: Q = (0..phi.cols()).map(|c| phi.get(r, c).clone() * zeta.values[a][c].clone()).sum();
      rhs.push(zeta.values[b][r].clone() - pushed);
    }
  }
  for a in 0..n {
    for b in 0..n {
      for c in 0..n {
        if !(p.lt(a, b) && p.lt(b, c)) {
          continue;
        }
        let (ab, bc, ac) = (slot(a, b), slot(b, c), slot(a, c));
        let phi = sys.map(b, c, j);
        for r in 0..sys.complex(c).dim(j) {
          let mut row = vec![Q::zero(); width];
          row[offset[bc] + r] += Q::from_integer(1.into());
          row[offset[ac] + r] -= Q::from_integer(1.into());
          for k in 0..phi.cols() {
            row[offset[ab] + k] += phi.get(r, k).clone();
          }
          rows.push(row);
          rhs.push(Q::zero());
        }
      }
    }
  }
  if width == 0 {
    return rhs.iter().all(Zero::is_zero);
  }
  solvable(&rows, &rhs)
}

/// `v` is a boundary in chain degree `i` of the complex at `p`.
pub fn is_boundary(sys: &ChainSystem<Q>, p: usize, i: usize, v: &[Q]) -> bool {
  let d = sys.complex(p).boundary(i + 1);
  if d.cols() == 0 {
    return v.iter().all(Zero::is_zero);
  }
  let rows: Vec<Vec<Q>> = (0..d.rows()).map(|r| d.row(r).to_vec()).collect();
  solvable(&rows, v)
}
