use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification used by front ends to pick an exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
  /// Malformed or inconsistent input data.
  Input,
  /// A well-posed question whose answer is "no such object".
  Infeasible,
  /// A structural invariant failed to hold on data that passed validation.
  Invariant,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
  #[error("malformed simplex: {0}")]
  MalformedSimplex(String),
  #[error("simplex {0} is not in the complex")]
  SimplexNotFound(String),
  #[error("vertex {0} is not in the complex")]
  VertexNotFound(String),
  #[error("vertex {0} already exists")]
  VertexCollision(String),
  #[error("dimension mismatch: {0}")]
  DimensionMismatch(String),
  #[error("not a subcomplex: {0}")]
  NotASubcomplex(String),
  #[error("complex mismatch: {0}")]
  ComplexMismatch(String),
  #[error("chain map fails to commute with the boundary in degree {degree}")]
  NotAChainMap { degree: usize },
  #[error("invalid carrier data: {0}")]
  InvalidCarrier(String),
  #[error("homology is not preserved in degree {degree}")]
  HomologyMismatch { degree: usize },
  #[error("0-chain has nonzero coefficient sum")]
  NonzeroMass,
  #[error("edge set does not span the vertex set: {0}")]
  NotSpanning(String),
  #[error("{count} spanning trees exceed the cap of {cap}; use the min-norm lift instead")]
  TreeCapExceeded { count: String, cap: u64 },
  #[error("no solution: {0}")]
  NoSolution(String),
  #[error("relation is not a partial order: {0}")]
  NotAPartialOrder(String),
  #[error("unknown poset element {0}")]
  UnknownElement(String),
  #[error("coefficient system is not functorial: {0}")]
  NotFunctorial(String),
  #[error("map is not order-preserving: {0}")]
  NotOrderPreserving(String),
  #[error("selector is not locally closed in the order complex")]
  NotLocallyClosed,
  #[error("not a cover: {0}")]
  NotACover(String),
  #[error("sequence of systems is not pointwise exact: {0}")]
  NotPointwiseExact(String),
  #[error("morphism of systems is not natural: {0}")]
  NotNatural(String),
  #[error("subdivision maps are not coherent on {0}")]
  Incoherent(String),
  #[error("not a valid cycle assignment: {0}")]
  InvalidCycleAssignment(String),
  #[error("{0} is not homologous to the assigned base cycle")]
  NotHomologous(String),
  #[error("poset has no unique minimal element")]
  NoUniqueMinimum,
  #[error("no good cover: {0}")]
  NoGoodCover(String),
  #[error("invariant violated: {0}")]
  InvariantViolation(String),
  #[error("input too large: {0}")]
  TooLarge(String),
  #[error("parse error: {0}")]
  Parse(String),
}

impl Error {
  pub fn class(&self) -> ErrorClass {
    use Error::*;
    match self {
      NonzeroMass
      | TreeCapExceeded { .. }
      | NoSolution(_)
      | InvalidCycleAssignment(_)
      | NotHomologous(_)
      | NoGoodCover(_) => ErrorClass::Infeasible,
      NotAChainMap { .. } | HomologyMismatch { .. } | Incoherent(_) | InvariantViolation(_) => ErrorClass::Invariant,
      _ => ErrorClass::Input,
    }
  }
}
