use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Vertex identifier. Cheap to clone; ordered by its string form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(Arc<str>);

impl Vertex {
  pub fn new(name: &str) -> Self { Self(Arc::from(name)) }

  pub fn as_str(&self) -> &str { &self.0 }
}

impl From<&str> for Vertex {
  fn from(s: &str) -> Self { Self::new(s) }
}

impl From<String> for Vertex {
  fn from(s: String) -> Self { Self(Arc::from(s)) }
}

impl From<&String> for Vertex {
  fn from(s: &String) -> Self { Self::new(s) }
}

impl From<&Vertex> for Vertex {
  fn from(v: &Vertex) -> Self { v.clone() }
}

impl fmt::Display for Vertex {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result { f.write_str(&self.0) }
}

impl fmt::Debug for Vertex {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result { write!(f, "{}", self.0) }
}

/// A simplex in canonical form: its vertices sorted ascending.
///
/// The canonical vertex order is the reference orientation. An arbitrary vertex
/// sequence denotes `±` the canonical simplex according to the parity of the
/// permutation that sorts it, see [`Simplex::oriented`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
  vertices: Vec<Vertex>,
}

impl Simplex {
  /// Canonical simplex on the given vertex set, ignoring the order supplied.
  pub fn new<V: Into<Vertex>>(vertices: impl IntoIterator<Item = V>) -> Result<Self> { Ok(Self::oriented(vertices)?.0) }

  /// Normalizes an ordered vertex sequence. Returns the canonical simplex and
  /// whether the sequence is an odd permutation of it.
  pub fn oriented<V: Into<Vertex>>(vertices: impl IntoIterator<Item = V>) -> Result<(Self, bool)> {
    let mut vs: Vec<Vertex> = vertices.into_iter().map(Into::into).collect();
    if vs.is_empty() {
      return Err(Error::MalformedSimplex("empty vertex list".into()));
    }
    // insertion sort, counting transpositions
    let mut odd = false;
    for i in 1..vs.len() {
      let mut j = i;
      while j > 0 && vs[j - 1] > vs[j] {
        vs.swap(j - 1, j);
        odd = !odd;
        j -= 1;
      }
    }
    if vs.windows(2).any(|w| w[0] == w[1]) {
      return Err(Error::MalformedSimplex(format!("repeated vertex in {}", display_list(&vs))));
    }
    Ok((Self { vertices: vs }, odd))
  }

  pub fn vertex(v: impl Into<Vertex>) -> Self { Self { vertices: vec![v.into()] } }

  pub fn dim(&self) -> usize { self.vertices.len() - 1 }

  pub fn vertices(&self) -> &[Vertex] { &self.vertices }

  pub fn contains(&self, v: &Vertex) -> bool { self.vertices.binary_search(v).is_ok() }

  pub fn is_face_of(&self, other: &Simplex) -> bool { self.vertices.iter().all(|v| other.contains(v)) }

  /// Codimension-one faces with their incidence signs `(-1)^i`.
  pub fn boundary_faces(&self) -> impl Iterator<Item = (bool, Simplex)> + '_ {
    let n = self.vertices.len();
    (0..if n > 1 { n } else { 0 }).map(move |i| {
      let mut vs = self.vertices.clone();
      vs.remove(i);
      (i % 2 == 1, Simplex { vertices: vs })
    })
  }

  /// Every nonempty face, including the simplex itself.
  pub fn faces(&self) -> Vec<Simplex> {
    let n = self.vertices.len();
    assert!(n < 64, "simplex too large to enumerate faces");
    (1u64..(1 << n))
      .map(|mask| Simplex { vertices: (0..n).filter(|i| mask >> i & 1 == 1).map(|i| self.vertices[i].clone()).collect() })
      .collect()
  }

  /// The join with a vertex not in the simplex.
  pub fn join(&self, v: &Vertex) -> Result<Simplex> { Simplex::new(self.vertices.iter().cloned().chain(std::iter::once(v.clone()))) }

  /// Union of vertex sets.
  pub fn union(&self, other: &Simplex) -> Simplex {
    let mut vs: Vec<Vertex> = self.vertices.iter().chain(other.vertices.iter()).cloned().collect();
    vs.sort();
    vs.dedup();
    Simplex { vertices: vs }
  }

  /// Vertices of `self` not in `other`, or `None` if that set is empty.
  pub fn minus(&self, other: &Simplex) -> Option<Simplex> {
    let vs: Vec<Vertex> = self.vertices.iter().filter(|v| !other.contains(v)).cloned().collect();
    (!vs.is_empty()).then_some(Simplex { vertices: vs })
  }

  /// Common face, if any.
  pub fn intersection(&self, other: &Simplex) -> Option<Simplex> {
    let vs: Vec<Vertex> = self.vertices.iter().filter(|v| other.contains(v)).cloned().collect();
    (!vs.is_empty()).then_some(Simplex { vertices: vs })
  }
}

fn display_list(vs: &[Vertex]) -> String {
  let names: Vec<&str> = vs.iter().map(Vertex::as_str).collect();
  format!("[{}]", names.join(","))
}

impl fmt::Display for Simplex {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result { f.write_str(&display_list(&self.vertices)) }
}

impl fmt::Debug for Simplex {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result { write!(f, "{self}") }
}
