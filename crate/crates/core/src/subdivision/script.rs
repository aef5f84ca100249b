use super::{barycentric_subdivide, stellar_subdivide, SubdivisionMap};
use crate::complex::{OrientedComplex, Simplex, Vertex};
use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Move {
  Star { simplex: Simplex, vertex: Vertex },
  Barycentric,
}

/// An ordered list of subdivision moves.
///
/// Text form, one move per line, `#` starting a comment:
///
/// ```text
/// star a,b,c w
/// star [a,b] m
/// barycentric
/// ```
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubdivisionScript {
  pub moves: Vec<Move>,
}

impl SubdivisionScript {
  pub fn parse(text: &str) -> Result<Self> {
    let mut moves = Vec::new();
    for (n, raw) in text.lines().enumerate() {
      let line = raw.split('#').next().unwrap_or("").trim();
      if line.is_empty() {
        continue;
      }
      let tokens: Vec<&str> = line.split_whitespace().collect();
      let err = |tok: &str, why: &str| Error::Parse(format!("line {}: {why} at token '{tok}'", n + 1));
      match tokens[0] {
        "barycentric" => {
          if let Some(extra) = tokens.get(1) {
            return Err(err(extra, "unexpected argument"));
          }
          moves.push(Move::Barycentric);
        },
        "star" => {
          if tokens.len() != 3 {
            return Err(err(tokens.last().unwrap(), "expected `star <simplex> <vertex>`"));
          }
          let body = tokens[1].trim_start_matches('[').trim_end_matches(']');
          let names: Vec<&str> = body.split(',').map(str::trim).collect();
          if names.iter().any(|s| s.is_empty()) {
            return Err(err(tokens[1], "empty vertex name"));
          }
          let simplex = Simplex::new(names).map_err(|e| err(tokens[1], &e.to_string()))?;
          moves.push(Move::Star { simplex, vertex: Vertex::new(tokens[2]) });
        },
        other => return Err(err(other, "unknown move")),
      }
    }
    Ok(Self { moves })
  }

  /// Applies the moves in order and composes the resulting subdivisions.
  pub fn apply<F: Field>(&self, x: &OrientedComplex) -> Result<SubdivisionMap<F>> {
    let mut acc = SubdivisionMap::identity(x);
    for m in &self.moves {
      let step = match m {
        Move::Star { simplex, vertex } => stellar_subdivide(acc.fine(), simplex, vertex)?,
        Move::Barycentric => barycentric_subdivide(acc.fine())?,
      };
      acc = acc.compose(&step)?;
    }
    Ok(acc)
  }
}

#[cfg(test)]
mod tests {
  use num_rational::BigRational;

  use super::*;

  #[test]
  fn parses_moves() {
    let s = SubdivisionScript::parse("# refine\nstar [a,b] m\n\nstar a,m n  # again\nbarycentric\n").unwrap();
    assert_eq!(s.moves.len(), 3);
    assert_eq!(s.moves[2], Move::Barycentric);
    let x = OrientedComplex::from_maximal([["a", "b"]]).unwrap();
    let sd = s.apply::<BigRational>(&x).unwrap();
    assert_eq!(sd.fine().count(1), 6);
  }

  #[test]
  fn reports_line_and_token() {
    let err = SubdivisionScript::parse("star a,b m\nflip a,b\n").unwrap_err();
    assert_eq!(err, Error::Parse("line 2: unknown move at token 'flip'".into()));
    assert!(SubdivisionScript::parse("star a,a m").is_err());
    assert!(SubdivisionScript::parse("star a,b").is_err());
  }
}
