use super::{ChainSelector, CochainLayout, CoefficientSystem, SystemMorphism};
use crate::cochain::{induced_rank, CochainComplex, CochainMap, LesReport, ShortExactSequence};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Field;

fn restriction<F: Field>(layout: &CochainLayout, large: &ChainSelector, small: &ChainSelector) -> CochainMap<F> {
  layout.inclusion::<F>(small, large).iter().map(Matrix::transpose).collect()
}

/// Cohomology of `X`, of the selector and of the pair, with the long exact sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeReport {
  pub absolute: Vec<usize>,
  pub subspace: Vec<usize>,
  /// `H^*(X, Y)`, computed as the cohomology of cochains supported off `Y`.
  pub relative: Vec<usize>,
  pub les: LesReport,
}

impl RelativeReport {
  pub fn is_exact(&self) -> bool { self.les.is_exact() }
}

/// Long exact sequence of the pair `(X, Y)` for `Y` a subcomplex (closed) or an
/// open star-closed set of simplices. For closed `Y` the short exact sequence is
/// `C(X,Y) → C(X) → C(Y)`; for open `Y` it is `C(Y) → C(X) → C(X,Y)`.
pub fn relative_sequence_check<F: Field>(g: &CoefficientSystem<F>, y: &ChainSelector) -> Result<RelativeReport> {
  let poset = g.poset();
  let layout = CochainLayout::new(g);
  let all = ChainSelector::all(poset);
  if !y.is_subset(&all) {
    return Err(Error::NotASubcomplex("selector contains chains outside the order complex".into()));
  }
  let rest = all.difference(y);
  let cx = layout.complex(g);
  let cy = layout.selector_complex(g, y)?;
  let crel = layout.selector_complex(g, &rest)?;
  let ses = if y.is_closed() {
    ShortExactSequence {
      a: crel.clone(),
      b: cx.clone(),
      c: cy.clone(),
      f: layout.inclusion(&rest, &all),
      g: restriction(&layout, &all, y),
    }
  } else if y.is_open(poset) {
    ShortExactSequence {
      a: cy.clone(),
      b: cx.clone(),
      c: crel.clone(),
      f: layout.inclusion(y, &all),
      g: restriction(&layout, &all, &rest),
    }
  } else {
    return Err(Error::NotASubcomplex("selector is neither closed under faces nor under cofaces".into()));
  };
  Ok(RelativeReport { absolute: cx.cohomology_dims(), subspace: cy.cohomology_dims(), relative: crel.cohomology_dims(), les: ses.check()? })
}

/// Degreewise behaviour of `C(X) → C(U₁) ⊕ C(U₂) → C(U₁∩U₂) → 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverDegree {
  pub degree: usize,
  /// Dimension of the kernel of `C^k(X) → C^k(U₁) ⊕ C^k(U₂)`.
  pub kernel_at_x: usize,
  /// `dim C^k(Y)`, the cochains on simplices subordinate to neither part.
  pub defect: usize,
  pub exact_at_sum: bool,
  pub surjective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
  pub degrees: Vec<CoverDegree>,
  /// `C(Y) → C(X) → Q`, with `Q` the cochains on `U₁ ∪ U₂`.
  pub splice: LesReport,
  /// `Q → C(U₁) ⊕ C(U₂) → C(U₁∩U₂)`.
  pub mayer_vietoris: LesReport,
  pub cohomology_x: Vec<usize>,
  pub cohomology_q: Vec<usize>,
  pub cohomology_u1: Vec<usize>,
  pub cohomology_u2: Vec<usize>,
  pub cohomology_meet: Vec<usize>,
}

impl CoverReport {
  /// The four-term sequence fails to be exact only at `C(X)`, by exactly `C(Y)`,
  /// and both spliced sequences are exact.
  pub fn is_exact(&self) -> bool {
    self.degrees.iter().all(|d| d.exact_at_sum && d.surjective && d.kernel_at_x == d.defect) && self.splice.is_exact() && self.mayer_vietoris.is_exact()
  }
}

/// Sequences attached to a cover `P = Δ₁ ∪ Δ₂` with `U_i = or(Δ_i)`.
pub fn cover_sequence_check<F: Field>(g: &CoefficientSystem<F>, delta1: &[usize], delta2: &[usize]) -> Result<CoverReport> {
  let poset = g.poset();
  if let Some(p) = (0..poset.len()).find(|p| !delta1.contains(p) && !delta2.contains(p)) {
    return Err(Error::NotACover(format!("{} lies in neither part", poset.name(p))));
  }
  if let Some(p) = delta1.iter().chain(delta2).find(|&&p| p >= poset.len()) {
    return Err(Error::UnknownElement(p.to_string()));
  }
  let layout = CochainLayout::new(g);
  let all = ChainSelector::all(poset);
  let u1 = ChainSelector::of_elements(poset, delta1);
  let u2 = ChainSelector::of_elements(poset, delta2);
  let meet = u1.intersection(&u2);
  let u = u1.union(&u2);
  let y = all.difference(&u);
  let (cx, cy, cu) = (layout.complex(g), layout.selector_complex(g, &y)?, layout.selector_complex(g, &u)?);
  let (c1, c2, cm) = (layout.selector_complex(g, &u1)?, layout.selector_complex(g, &u2)?, layout.selector_complex(g, &meet)?);
  let sum = crate::cochain::direct_sum(&c1, &c2);

  let to_parts: CochainMap<F> = restriction::<F>(&layout, &u, &u1).iter().zip(restriction::<F>(&layout, &u, &u2)).map(|(a, b)| a.vstack(&b)).collect();
  let difference: CochainMap<F> = restriction::<F>(&layout, &u1, &meet)
    .iter()
    .zip(restriction::<F>(&layout, &u2, &meet))
    .map(|(a, b)| a.hstack(&b.scale(&-F::one())))
    .collect();
  let restrict_x: CochainMap<F> = restriction::<F>(&layout, &all, &u);

  let mut degrees = Vec::new();
  for k in 0..layout.degrees() {
    let x_to_sum = &to_parts[k] * &restrict_x[k];
    let kernel_at_x = x_to_sum.nullity();
    let exact_at_sum = difference[k].nullity() == x_to_sum.rank() && (&difference[k] * &x_to_sum).is_zero();
    let surjective = difference[k].rank() == cm.dim(k);
    degrees.push(CoverDegree { degree: k, kernel_at_x, defect: cy.dim(k), exact_at_sum, surjective });
  }
  let splice = ShortExactSequence { a: cy, b: cx.clone(), c: cu.clone(), f: layout.inclusion(&y, &all), g: restrict_x }.check()?;
  let mayer_vietoris = ShortExactSequence { a: cu.clone(), b: sum, c: cm.clone(), f: to_parts, g: difference }.check()?;
  Ok(CoverReport {
    degrees,
    splice,
    mayer_vietoris,
    cohomology_x: cx.cohomology_dims(),
    cohomology_q: cu.cohomology_dims(),
    cohomology_u1: c1.cohomology_dims(),
    cohomology_u2: c2.cohomology_dims(),
    cohomology_meet: cm.cohomology_dims(),
  })
}

/// The limit of `G` over `P`: families `(g_p)` in `∏ G_p` with `Φ(p,q) g_p = g_q`
/// for every covering pair, as the columns of a basis matrix.
pub fn limit<F: Field>(g: &CoefficientSystem<F>) -> Matrix<F> {
  let n = g.poset().len();
  let offsets: Vec<usize> = (0..n).scan(0, |acc, p| {
    let o = *acc;
    *acc += g.dim(p);
    Some(o)
  }).collect();
  let total: usize = g.dims().iter().sum();
  let mut blocks = Vec::new();
  for &(p, q) in g.poset().covers() {
    let mut rows = Matrix::zeros(g.dim(q), total);
    rows.set_block(0, offsets[p], g.map(p, q).unwrap());
    rows.set_block(0, offsets[q], &Matrix::identity(g.dim(q)).scale(&-F::one()));
    blocks.push(rows);
  }
  let constraints = blocks.iter().fold(Matrix::zeros(0, total), |acc, b| acc.vstack(b));
  constraints.kernel()
}

/// Cochain map induced by a morphism of systems: the component at each chain is
/// the morphism at its top element.
pub fn induced_cochain_map<F: Field>(
  a: &CoefficientSystem<F>,
  b: &CoefficientSystem<F>,
  eta: &SystemMorphism<F>,
) -> Result<CochainMap<F>> {
  eta.check(a, b)?;
  let (la, lb) = (CochainLayout::new(a), CochainLayout::new(b));
  Ok(
    (0..la.degrees())
      .map(|k| {
        let mut m = Matrix::zeros(lb.dim(k), la.dim(k));
        for c in la.chains(k) {
          let (rows, cols) = (lb.block(c).unwrap(), la.block(c).unwrap());
          m.set_block(rows.start, cols.start, &eta.components[*c.last().unwrap()]);
        }
        m
      })
      .collect(),
  )
}

/// `0 → A → B → C → 0` of coefficient systems on one poset.
#[derive(Clone, Debug)]
pub struct SystemSequence<F> {
  pub a: CoefficientSystem<F>,
  pub b: CoefficientSystem<F>,
  pub c: CoefficientSystem<F>,
  pub f: SystemMorphism<F>,
  pub g: SystemMorphism<F>,
}

impl<F: Field> SystemSequence<F> {
  /// Checks naturality of both maps and exactness at every element.
  pub fn validate(&self) -> Result<()> {
    self.f.check(&self.a, &self.b)?;
    self.g.check(&self.b, &self.c)?;
    for p in 0..self.a.poset().len() {
      let (f, g) = (&self.f.components[p], &self.g.components[p]);
      let ok = f.rank() == self.a.dim(p) && g.rank() == self.c.dim(p) && (g * f).is_zero() && self.b.dim(p) == self.a.dim(p) + self.c.dim(p);
      if !ok {
        return Err(Error::NotPointwiseExact(format!("at {}", self.a.poset().name(p))));
      }
    }
    Ok(())
  }

  pub fn cochain_sequence(&self) -> Result<ShortExactSequence<F>> {
    self.validate()?;
    Ok(ShortExactSequence {
      a: CochainLayout::new(&self.a).complex(&self.a),
      b: CochainLayout::new(&self.b).complex(&self.b),
      c: CochainLayout::new(&self.c).complex(&self.c),
      f: induced_cochain_map(&self.a, &self.b, &self.f)?,
      g: induced_cochain_map(&self.b, &self.c, &self.g)?,
    })
  }
}

/// Short exactness of the cochain sequence and exactness of its long sequence.
pub fn ses_of_systems_check<F: Field>(s: &SystemSequence<F>) -> Result<LesReport> { s.cochain_sequence()?.check() }

/// For a morphism `(α, β, γ)` between two short exact sequences of systems, checks
/// that `α_* ∂ = ∂' γ_*` on cohomology in every degree.
pub fn connecting_naturality_check<F: Field>(
  s: &SystemSequence<F>,
  t: &SystemSequence<F>,
  alpha: &SystemMorphism<F>,
  beta: &SystemMorphism<F>,
  gamma: &SystemMorphism<F>,
) -> Result<bool> {
  let (cs, ct) = (s.cochain_sequence()?, t.cochain_sequence()?);
  let a = induced_cochain_map(&s.a, &t.a, alpha)?;
  beta.check(&s.b, &t.b)?;
  let c = induced_cochain_map(&s.c, &t.c, gamma)?;
  for p in 0..s.a.poset().len() {
    let left = &beta.components[p] * &s.f.components[p] == &t.f.components[p] * &alpha.components[p];
    let right = &gamma.components[p] * &s.g.components[p] == &t.g.components[p] * &beta.components[p];
    if !(left && right) {
      return Err(Error::NotNatural(format!("morphism of sequences fails to commute at {}", s.a.poset().name(p))));
    }
  }
  for k in 0..cs.degrees() {
    let z = cs.c.cocycles(k);
    let ak1 = a.get(k + 1).cloned().unwrap_or_else(|| Matrix::zeros(ct.a.dim(k + 1), cs.a.dim(k + 1)));
    let lhs = &ak1 * &cs.connecting_matrix(k, &z)?;
    let rhs = ct.connecting_matrix(k, &(&c[k] * &z))?;
    let diff = &lhs - &rhs;
    if !ct.a.coboundaries(k + 1).spans(&diff) {
      return Ok(false);
    }
  }
  Ok(true)
}

/// Whether `H^k(f) : H^k(A) → H^k(B)` is injective.
pub fn induced_injective<F: Field>(a: &CoefficientSystem<F>, b: &CoefficientSystem<F>, f: &SystemMorphism<F>, k: usize) -> Result<bool> {
  let map = induced_cochain_map(a, b, f)?;
  let ca: CochainComplex<F> = CochainLayout::new(a).complex(a);
  let cb: CochainComplex<F> = CochainLayout::new(b).complex(b);
  Ok(induced_rank(&map, &ca, &cb, k) == ca.cohomology_dim(k))
}
