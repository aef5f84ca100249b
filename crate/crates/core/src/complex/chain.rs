use std::collections::BTreeMap;
use std::fmt;

use super::{Simplex, Vertex};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// A finite linear combination of equal-dimensional simplices in canonical
/// orientation. Zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct Chain<F> {
  degree: usize,
  terms: BTreeMap<Simplex, F>,
}

impl<F: Field> Chain<F> {
  pub fn zero(degree: usize) -> Self { Self { degree, terms: BTreeMap::new() } }

  /// Collects `(simplex, coefficient)` pairs, summing duplicates.
  pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Simplex, F)>) -> Result<Self> {
    let mut c = Self::zero(degree);
    for (s, x) in terms {
      c.add_term(s, x)?;
    }
    Ok(c)
  }

  /// Chain from ordered vertex sequences; each sequence is normalized and its
  /// coefficient negated for odd orderings.
  pub fn from_oriented<V: Into<Vertex>>(degree: usize, terms: impl IntoIterator<Item = (Vec<V>, F)>) -> Result<Self> {
    let mut c = Self::zero(degree);
    for (vs, x) in terms {
      let (s, odd) = Simplex::oriented(vs)?;
      c.add_term(s, if odd { -x } else { x })?;
    }
    Ok(c)
  }

  pub fn simplex(s: Simplex) -> Self {
    let degree = s.dim();
    let mut terms = BTreeMap::new();
    terms.insert(s, F::one());
    Self { degree, terms }
  }

  pub fn add_term(&mut self, s: Simplex, x: F) -> Result<()> {
    if s.dim() != self.degree {
      return Err(Error::DimensionMismatch(format!("{s} in a chain of degree {}", self.degree)));
    }
    if x.is_zero() {
      return Ok(());
    }
    let updated = self.terms.get(&s).cloned().unwrap_or_else(F::zero) + x;
    if updated.is_zero() {
      self.terms.remove(&s);
    } else {
      self.terms.insert(s, updated);
    }
    Ok(())
  }

  pub fn degree(&self) -> usize { self.degree }

  pub fn coefficient(&self, s: &Simplex) -> F { self.terms.get(s).cloned().unwrap_or_else(F::zero) }

  pub fn is_zero(&self) -> bool { self.terms.is_empty() }

  pub fn len(&self) -> usize { self.terms.len() }

  pub fn is_empty(&self) -> bool { self.terms.is_empty() }

  pub fn iter(&self) -> impl Iterator<Item = (&Simplex, &F)> { self.terms.iter() }

  pub fn support(&self) -> impl Iterator<Item = &Simplex> { self.terms.keys() }

  /// Sum of the coefficients (the augmentation, for 0-chains).
  pub fn mass(&self) -> F { self.terms.values().fold(F::zero(), |a, x| a + x.clone()) }

  pub fn scale(&self, c: &F) -> Self {
    if c.is_zero() {
      return Self::zero(self.degree);
    }
    Self { degree: self.degree, terms: self.terms.iter().map(|(s, x)| (s.clone(), x.clone() * c.clone())).collect() }
  }

  pub fn add(&self, other: &Self) -> Result<Self> {
    let mut out = self.clone();
    for (s, x) in &other.terms {
      out.add_term(s.clone(), x.clone())?;
    }
    Ok(out)
  }

  pub fn sub(&self, other: &Self) -> Result<Self> { self.add(&other.scale(&-F::one())) }

  /// Simplicial boundary. A 0-chain has empty boundary, returned as the zero
  /// chain of degree 0 since the augmented degree is not modelled.
  pub fn boundary(&self) -> Self {
    let mut out = Self::zero(self.degree.saturating_sub(1));
    if self.degree == 0 {
      return out;
    }
    for (s, x) in &self.terms {
      for (odd, face) in s.boundary_faces() {
        let c = if odd { -x.clone() } else { x.clone() };
        out.add_term(face, c).expect("faces have the right dimension");
      }
    }
    out
  }
}

impl<F: fmt::Display> fmt::Display for Chain<F> {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if self.terms.is_empty() {
      return write!(f, "0");
    }
    let parts: Vec<String> = self.terms.iter().map(|(s, x)| format!("{x}·{s}")).collect();
    write!(f, "{}", parts.join(" + "))
  }
}

impl<F: fmt::Debug> fmt::Debug for Chain<F> {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "Chain<{}>", self.degree)?;
    f.debug_map().entries(self.terms.iter()).finish()
  }
}
