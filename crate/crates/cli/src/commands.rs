use std::path::Path;

use serde_json::{json, Map, Value};
use transgress_core::complex::homology_dimensions;
use transgress_core::euler::{euler_cycle, euler_difference, link_local_coefficient, transgress_euler, LiftMode, TransgressOptions, DEFAULT_TREE_CAP};
use transgress_core::order::{limit, order_cohomology, relative_sequence_check, FinitePoset};
use transgress_core::sheaf::{check_sheaf_axioms, flasque_check, lattice_comparison, sheaf_from_system, system_from_sheaf, MAX_TOPOLOGY_ELEMENTS};
use transgress_core::transgression::{
  canonical_fixed_complex_transgression, find_path_independent, is_path_independent, kernel_delta_z, path_independent_solution_dim, transgress,
};
use transgress_core::{Error as CoreError, Rational};

use crate::error::{CliError, CliResult};
use crate::input::{self, read_json};
use crate::output as out;

pub const TREE_CAP_VAR: &str = "TRANSGRESS_TREE_CAP";

fn load_complex(path: &Path) -> CliResult<transgress_core::OrientedComplex> {
  let (src, v) = read_json(path)?;
  input::complex(&src, &v)
}

fn load_system(poset: &Path, system: &Path) -> CliResult<transgress_core::order::CoefficientSystem<Rational>> {
  let (psrc, pv) = read_json(poset)?;
  let p = input::poset(&psrc, &pv)?;
  let (ssrc, sv) = read_json(system)?;
  input::system(&ssrc, &sv, &p)
}

fn tree_cap() -> CliResult<u64> {
  match std::env::var(TREE_CAP_VAR) {
    Ok(raw) => raw.trim().parse().map_err(|_| CliError::Usage(format!("{TREE_CAP_VAR} must be a nonnegative integer, got `{raw}`"))),
    Err(_) => Ok(DEFAULT_TREE_CAP),
  }
}

pub fn homology(complex: &Path) -> CliResult<Value> {
  let x = load_complex(complex)?;
  let counts: Vec<usize> = (0..x.dim().map_or(0, |d| d + 1)).map(|k| x.count(k)).collect();
  Ok(json!({
    "betti": out::dims(&homology_dimensions::<Rational>(&x)),
    "simplex_counts": out::dims(&counts),
    "euler_characteristic": x.euler_characteristic(),
  }))
}

pub fn euler(complex: &Path) -> CliResult<Value> {
  let x = load_complex(complex)?;
  let e = euler_cycle::<Rational>(&x);
  let mut coefficients = Map::new();
  let mut link = Map::new();
  for v in x.vertices() {
    coefficients.insert(v.to_string(), out::rational(&e.coefficient(v)));
    link.insert(v.to_string(), out::rational(&link_local_coefficient::<Rational>(v, &x)?));
  }
  Ok(json!({ "coefficients": coefficients, "link_formula": link, "total": out::rational(&e.total()) }))
}

pub fn subdivide(complex: &Path, script: &Path) -> CliResult<Value> {
  let x = load_complex(complex)?;
  let s = input::script(script)?.apply::<Rational>(&x)?;
  let top = x.dim().map_or(0, |d| d + 1);
  let parties: Vec<Value> = (0..top)
    .flat_map(|k| s.parties(k))
    .map(|party| {
      json!({
        "degree": party.degree,
        "coarse_simplex": out::simplex(&party.coarse_simplex),
        "fine_simplices": party.fine_simplices.iter().map(out::simplex).collect::<Vec<_>>(),
      })
    })
    .collect();
  let carriers: Vec<Value> = s
    .fine()
    .all_simplices()
    .map(|f| json!({ "simplex": out::simplex(f), "carrier": s.carrier(f).map(out::simplex) }))
    .collect();
  Ok(json!({ "fine": out::complex(s.fine()), "parties": parties, "carriers": carriers }))
}

pub fn transgress_euler_cmd(complex: &Path, script: &Path, mode: LiftMode) -> CliResult<Value> {
  let x = load_complex(complex)?;
  let s = input::script(script)?.apply::<Rational>(&x)?;
  let options = TransgressOptions { tree_cap: tree_cap()?, ..TransgressOptions::with_lift(mode) };
  let t = transgress_euler(&s, &options)?;
  let parties: Vec<Value> = t
    .summands
    .iter()
    .map(|p| {
      json!({
        "coarse_simplex": out::simplex(&p.coarse_simplex),
        "coefficient": out::rational(&p.coefficient),
        "difference": out::chain(&p.difference),
        "lift": out::chain(&p.lift),
      })
    })
    .collect();
  Ok(json!({
    "mode": match mode { LiftMode::TreeAverage => "tree-average", LiftMode::MinNorm => "min-norm" },
    "gamma": out::chain(&t.gamma),
    "euler_difference": out::chain(&euler_difference(&s)?),
    "parties": parties,
  }))
}

pub fn order_cohomology_cmd(poset: &Path, system: &Path, relative: Option<&Path>) -> CliResult<Value> {
  let g = load_system(poset, system)?;
  let mut body = Map::new();
  body.insert("cohomology".into(), out::dims(&order_cohomology(&g)));
  if let Some(path) = relative {
    let (src, v) = read_json(path)?;
    let y = input::selector(&src, &v, g.poset())?;
    let r = relative_sequence_check(&g, &y)?;
    let nodes: Vec<Value> = r
      .les
      .nodes
      .iter()
      .map(|n| {
        json!({
          "term": n.term, "degree": n.degree, "dimension": n.dimension,
          "incoming_rank": n.incoming_rank, "outgoing_kernel": n.outgoing_kernel, "exact": n.exact,
        })
      })
      .collect();
    body.insert(
      "relative".into(),
      json!({
        "absolute": out::dims(&r.absolute),
        "subspace": out::dims(&r.subspace),
        "relative": out::dims(&r.relative),
        "exact": r.is_exact(),
        "nodes": nodes,
      }),
    );
  }
  Ok(Value::Object(body))
}

pub fn limit_cmd(poset: &Path, system: &Path) -> CliResult<Value> {
  let g = load_system(poset, system)?;
  let basis = limit(&g);
  let p = g.poset();
  let columns: Vec<Value> = basis
    .columns()
    .iter()
    .map(|col| {
      let mut at = 0;
      let mut family = Map::new();
      for x in 0..p.len() {
        family.insert(p.name(x).to_string(), out::rationals(&col[at..at + g.dim(x)]));
        at += g.dim(x);
      }
      Value::Object(family)
    })
    .collect();
  Ok(json!({
    "dimension": basis.cols(),
    "basis": columns,
    "h0": order_cohomology(&g).first().copied().unwrap_or(0),
  }))
}

fn chain_names(p: &FinitePoset, c: &[usize]) -> Value { out::names(p, c) }

pub fn path_independence(bundle: &Path, assignment: &Path) -> CliResult<Value> {
  let (_, tri) = input::bundle(bundle)?;
  let zeta = input::assignment(assignment, &tri)?;
  let s = &tri.system;
  let p = s.poset();
  let i = zeta.degree;
  let boundaries: Map<String, Value> = (0..p.len()).map(|x| (p.name(x).to_string(), Value::Bool(s.complex(x).is_boundary(i, &zeta.values[x])))).collect();
  let edgewise = transgress(s, &zeta)?;
  let check = is_path_independent(s, &edgewise);
  let certificate = check.certificate.map(|(c, defect)| json!({ "chain": chain_names(p, &c), "defect": out::chain(&tri.chain(c[2], i + 1, &defect)) }));
  let found = find_path_independent(s, &zeta)?;
  Ok(json!({
    "degree": i,
    "boundaries": boundaries,
    "all_boundaries": boundaries.values().all(|b| b == &Value::Bool(true)),
    "kernel_delta_z": kernel_delta_z(s, i).cols(),
    "solution_dimension": path_independent_solution_dim(s, i),
    "edgewise": { "transgression": out::transgression(&tri, &edgewise), "path_independent": check.independent, "certificate": certificate },
    "path_independent": { "exists": found.is_some(), "transgression": found.map(|g| out::transgression(&tri, &g)) },
  }))
}

pub fn canonical_transgression(bundle: &Path, assignment: &Path, base_cycle: Option<&Path>) -> CliResult<Value> {
  let (_, tri) = input::bundle(bundle)?;
  let zeta = input::assignment(assignment, &tri)?;
  let s = &tri.system;
  let p = s.poset();
  let explicit = match base_cycle {
    Some(path) => {
      let base = p.minimum().ok_or(CoreError::NoUniqueMinimum)?;
      Some(input::base_cycle(path, &tri, base, zeta.degree)?)
    },
    None => None,
  };
  let c = canonical_fixed_complex_transgression(s, &zeta, explicit.as_deref())?;
  let lifts: Map<String, Value> = c.lifts.iter().enumerate().map(|(q, h)| (p.name(q).to_string(), out::chain(&tri.chain(q, zeta.degree + 1, h)))).collect();
  Ok(json!({
    "base": p.name(c.base),
    "base_cycle": out::chain(&tri.chain(c.base, zeta.degree, &c.base_cycle)),
    "lifts": lifts,
    "gamma": out::transgression(&tri, &c.gamma),
    "path_independent": is_path_independent(s, &c.gamma).independent,
    "solution_dimension": path_independent_solution_dim(s, zeta.degree),
  }))
}

pub fn sheaf_compare(poset: &Path, system: &Path) -> CliResult<Value> {
  let g = load_system(poset, system)?;
  let p = g.poset();
  if p.len() > MAX_TOPOLOGY_ELEMENTS {
    return Err(CoreError::TooLarge(format!("{} elements, at most {MAX_TOPOLOGY_ELEMENTS} supported", p.len())).into());
  }
  let f = sheaf_from_system(&g);
  let report = check_sheaf_axioms(&f);
  let back = system_from_sheaf(&f)?;
  let round_trip: Map<String, Value> = (0..p.len()).map(|x| (p.name(x).to_string(), json!(back.dim(x)))).collect();
  let c = lattice_comparison(&g)?;
  let nerve: Vec<Value> = c.nerve.iter().map(|s| json!({ "members": out::names(p, &s.members), "generator": p.name(s.generator) })).collect();
  Ok(json!({
    "order": out::dims(&c.order),
    "cech_total": out::dims(&c.cech_total),
    "cech": out::dims(&c.cech),
    "agree": c.agree(),
    "nerve": nerve,
    "sheaf": {
      "opens": report.opens,
      "covers": report.covers,
      "is_sheaf": report.is_sheaf(),
      "flasque": flasque_check(&f),
      "round_trip_dims": round_trip,
    },
  }))
}
