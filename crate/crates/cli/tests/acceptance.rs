//! One line per acceptance criterion, written straight to stdout so it shows
//! without `--nocapture`.

mod common;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigInt;
use rand::Rng;
use transgress_core::complex::homology_dimensions;
use transgress_core::euler::{
  average_tree_lift, barycenter, euler_cycle, euler_difference, inclusion_exclusion_euler, link_local_coefficient, local_terms, min_norm_lift,
  transgress_euler, Decomposition, PartyGraph, TransgressOptions,
};
use transgress_core::order::{
  cover_sequence_check, limit, order_cohomology, relative_sequence_check, ses_of_systems_check, ChainSelector, CochainLayout, CoefficientSystem,
};
use transgress_core::sheaf::{check_sheaf_axioms, flasque_check, lattice_comparison, sheaf_from_system, system_from_sheaf, upper_ideal_cochain_dims};
use transgress_core::subdivision::{barycentric_subdivide, Move, SubdivisionMap};
use transgress_core::transgression::{
  canonical_fixed_complex_transgression, coboundary_of_transgression, delta_z_image_dim, find_path_independent, is_path_independent,
  is_transgression, kernel_delta_z, path_independent_solution_dim, TriangulationSystem,
};
use transgress_core::{Chain, Error, OrientedComplex, Simplex};
use transgress_testkit::random::ComplexShape;
use transgress_testkit::{fixtures, oracle, q, random, Q};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
  ($cond:expr, $($msg:tt)+) => {
    if !$cond {
      return Err(format!($($msg)+));
    }
  };
}

fn trim(mut v: Vec<usize>) -> Vec<usize> {
  while v.last() == Some(&0) {
    v.pop();
  }
  v
}

fn corpus() -> Vec<OrientedComplex> {
  let mut all: Vec<OrientedComplex> = fixtures::complexes().into_iter().map(|(_, x)| x).collect();
  let mut rng = random::rng(1000);
  all.extend((0..30).map(|_| random::complex(&mut rng, 7, 5, 3)));
  all
}

fn stellar_instance(seed: u64) -> SubdivisionMap<Q> {
  let mut rng = random::rng(seed);
  let x = random::nontrivial_complex(&mut rng);
  let moves = rng.gen_range(1..=3);
  random::stellar_script(&mut rng, &x, moves).apply(&x).unwrap()
}

fn exactness_identities() -> Outcome {
  let mut rng = random::rng(1001);
  let mut complexes: Vec<OrientedComplex> = fixtures::complexes().into_iter().map(|(_, x)| x).collect();
  complexes.extend((0..100).map(|_| random::complex(&mut rng, 7, 5, 4)));
  for x in &complexes {
    for k in 1..=x.dim().unwrap_or(0) {
      ensure!(x.boundary_matrix::<Q>(k - 1).mul(&x.boundary_matrix(k)).is_zero(), "∂∂ ≠ 0 in degree {k}");
    }
  }
  for _ in 0..100 {
    let p = random::poset(&mut rng, 6, 1, 2);
    let g = random::system(&mut rng, &p, 5);
    let layout = CochainLayout::new(&g);
    for k in 0..layout.degrees().saturating_sub(2) {
      ensure!((&layout.coboundary_matrix(&g, k + 1) * &layout.coboundary_matrix(&g, k)).is_zero(), "δδ ≠ 0 in degree {k}");
    }
  }
  let mut maps: Vec<SubdivisionMap<Q>> = fixtures::complexes().into_iter().map(|(_, x)| barycentric_subdivide(&x).unwrap()).collect();
  maps.extend((0..100).map(|seed| stellar_instance(2000 + seed)));
  for s in &maps {
    for k in 1..=s.coarse().dim().unwrap_or(0) {
      let left = s.matrix(k - 1).mul(&s.coarse().boundary_matrix(k));
      ensure!(left.sub(&s.fine().boundary_matrix::<Q>(k).mul(&s.matrix(k))).is_zero(), "Φ∂ ≠ ∂Φ in degree {k}");
    }
  }
  Ok(format!("{} complexes, 100 systems, {} subdivisions", complexes.len(), maps.len()))
}

fn euler_axioms() -> Outcome {
  let names = ["a", "b", "c", "d", "e"];
  for k in 0..5 {
    let e = euler_cycle::<Q>(&OrientedComplex::closure_of(&Simplex::new(names[..=k].iter().copied()).unwrap()));
    ensure!(names[..=k].iter().all(|v| e.coefficient(&(*v).into()) == q(1, k as i64 + 1)), "calibration fails in dimension {k}");
  }
  ensure!(euler_cycle::<Q>(&OrientedComplex::empty()).chain().is_zero(), "e(∅) ≠ 0");
  let sum = |cs: Vec<Chain<Q>>| cs.into_iter().fold(Chain::zero(0), |a, b| a.add(&b).unwrap());
  let all = corpus();
  for x in &all {
    let direct = euler_cycle::<Q>(x);
    let parts: Vec<OrientedComplex> = x.maximal_simplices().iter().map(OrientedComplex::closure_of).collect();
    ensure!(inclusion_exclusion_euler::<Q>(x, &parts).unwrap() == *direct.chain(), "inclusion-exclusion oracle disagrees");
    let facewise = sum(local_terms::<Q>(x, Decomposition::FaceWise).unwrap().into_iter().map(|(t, c)| barycenter::<Q>(&t).scale(&c)).collect());
    ensure!(facewise == *direct.chain(), "face-wise decomposition disagrees");
    ensure!(direct.total() == Q::from_integer(x.euler_characteristic().into()), "mass ≠ χ");
  }
  Ok(format!("{} complexes", all.len()))
}

fn link_rewrite() -> Outcome {
  let mut vertices = 0;
  for x in corpus() {
    let e = euler_cycle::<Q>(&x);
    for v in x.vertices() {
      ensure!(link_local_coefficient::<Q>(v, &x).unwrap() == e.coefficient(v), "vertex {v}");
      vertices += 1;
    }
  }
  Ok(format!("{vertices} vertices"))
}

fn euler_transgression() -> Outcome {
  for seed in 0..50 {
    let s = stellar_instance(3000 + seed);
    let t = transgress_euler(&s, &TransgressOptions::default()).unwrap();
    ensure!(s.fine().boundary(&t.gamma).unwrap() == euler_difference(&s).unwrap(), "∂γ ≠ e(X) − Φe(Y) for seed {seed}");
  }
  let s = fixtures::star_center().apply::<Q>(&fixtures::triangle()).unwrap();
  let spokes = Chain::from_oriented(1, [(vec!["a", "w"], q(1, 6)), (vec!["b", "w"], q(1, 6)), (vec!["c", "w"], q(1, 6))]).unwrap();
  ensure!(transgress_euler(&s, &TransgressOptions::default()).unwrap().gamma == spokes, "stellar triangle spokes differ from 1/6");
  let mut rng = random::rng(1004);
  let mut local = 0;
  while local < 20 {
    let x = random::nontrivial_complex(&mut rng);
    let script = random::stellar_script(&mut rng, &x, 1);
    let Move::Star { simplex: sigma, .. } = &script.moves[0] else { unreachable!() };
    let extra = random::complex(&mut rng, 8, 3, 2);
    let added: Vec<Simplex> = extra.maximal_simplices().into_iter().filter(|s| !sigma.is_face_of(s)).collect();
    let y = x.union(&OrientedComplex::from_simplices(added));
    if y.all_simplices().filter(|s| sigma.is_face_of(s)).count() != x.all_simplices().filter(|s| sigma.is_face_of(s)).count() {
      continue;
    }
    let g1 = transgress_euler(&script.apply::<Q>(&x).unwrap(), &TransgressOptions::default()).unwrap().gamma;
    let g2 = transgress_euler(&script.apply::<Q>(&y).unwrap(), &TransgressOptions::default()).unwrap().gamma;
    ensure!(g1 == g2, "embedding changed the edge coefficients");
    local += 1;
  }
  Ok("50 instances, spokes 1/6, 20 locality pairs".into())
}

fn lift_equivalence() -> Outcome {
  let mut maps: Vec<SubdivisionMap<Q>> = (0..30).map(|seed| stellar_instance(4000 + seed)).collect();
  maps.extend(fixtures::complexes().into_iter().filter(|(_, x)| x.dim() <= Some(2)).map(|(_, x)| barycentric_subdivide(&x).unwrap()));
  let mut parties = 0;
  for s in &maps {
    for tau in s.coarse().all_simplices().filter(|t| t.dim() > 0) {
      let graph = PartyGraph::of_party(s, tau);
      if graph.spanning_tree_count() > BigInt::from(200) {
        continue;
      }
      let difference = euler_cycle::<Q>(&s.restricted_to(tau)).into_chain().sub(&s.apply(&barycenter(tau)).unwrap()).unwrap();
      ensure!(average_tree_lift(&graph, &difference, 200).unwrap() == min_norm_lift(&graph, &difference).unwrap(), "party {tau}");
      parties += 1;
    }
  }
  ensure!(parties > 50, "only {parties} parties");
  Ok(format!("{parties} parties"))
}

fn order_propositions() -> Outcome {
  let mut rng = random::rng(1006);
  for _ in 0..50 {
    let n = rng.gen_range(2..=6);
    let p = random::poset_with_minimum(&mut rng, n);
    let pieces = rng.gen_range(1..=5);
    let g = random::system(&mut rng, &p, pieces);
    let h = order_cohomology(&g);
    ensure!(h[0] == g.dim(0) && h[1..].iter().all(|&d| d == 0), "inverted cone {h:?}");
  }
  ensure!(order_cohomology(&fixtures::wedge_spike()) == vec![0, 1], "wedge spike");
  for _ in 0..40 {
    let (p, _, delta2) = random::double_cone(&mut rng);
    let pieces = rng.gen_range(1..=6);
    let g = random::system(&mut rng, &p, pieces);
    let (hx, hu) = (order_cohomology(&g), order_cohomology(&g.restrict(&delta2)));
    ensure!(hx.get(1).copied().unwrap_or(0) == hu.get(1).copied().unwrap_or(0), "double cone {hx:?} vs {hu:?}");
  }
  for _ in 0..50 {
    let n = rng.gen_range(1..=7);
    let p = random::poset(&mut rng, n, 1, 3);
    let g = CoefficientSystem::<Q>::constant(p.clone(), 1);
    ensure!(trim(order_cohomology(&g)) == trim(homology_dimensions::<Q>(&p.order_complex())), "constant system");
  }
  Ok("50 inverted cones, wedge [0,1], 40 double cones, 50 constant systems".into())
}

fn sequence_exactness() -> Outcome {
  let mut rng = random::rng(1007);
  for _ in 0..30 {
    let p = random::poset(&mut rng, 5, 1, 2);
    let g = random::system(&mut rng, &p, 5);
    let k = rng.gen_range(0..=p.len());
    let closed = ChainSelector::of_elements(&p, &(0..k).collect::<Vec<_>>());
    for y in [closed.clone(), closed.complement(&p)] {
      ensure!(relative_sequence_check(&g, &y).unwrap().is_exact(), "relative sequence");
    }
    let (mut d1, mut d2) = (Vec::new(), Vec::new());
    for x in 0..p.len() {
      match rng.gen_range(0..3) {
        0 => d1.push(x),
        1 => d2.push(x),
        _ => {
          d1.push(x);
          d2.push(x);
        },
      }
    }
    ensure!(cover_sequence_check(&g, &d1, &d2).unwrap().is_exact(), "cover sequence");
    ensure!(ses_of_systems_check(&random::system_sequence(&mut rng, &p, 6)).unwrap().is_exact(), "system sequence");
  }
  for _ in 0..50 {
    let n = rng.gen_range(1..=6);
    let p = random::poset(&mut rng, n, 1, 2);
    let g = random::system(&mut rng, &p, 5).transpose();
    ensure!(limit(&g).cols() == order_cohomology(&g)[0], "lim ≠ H⁰");
  }
  Ok("30 relative, cover and system sequences, 50 limits".into())
}

fn path_independence() -> Outcome {
  let mut rng = random::rng(30);
  let (mut systems, mut classes, mut acyclic_systems, mut converse) = (0, 0, 0, 0);
  for _ in 0..120 {
    let n = rng.gen_range(3..=5);
    let p = random::fence(n);
    let homology = vec![rng.gen_range(0..=1), rng.gen_range(1..=2)];
    let shapes: Vec<ComplexShape> =
      (0..n).map(|i| ComplexShape { homology: homology.clone(), pairs: vec![if i % 2 == 1 { rng.gen_range(1..=4) } else { rng.gen_range(0..=1) }] }).collect();
    let s = random::chain_system(&mut rng, &p, &shapes);
    if kernel_delta_z(&s, 0).cols() != 0 {
      continue;
    }
    systems += 1;
    let acyclic = order_cohomology(&s.coefficient_system(1)).get(1).copied().unwrap_or(0) == 0;
    acyclic_systems += usize::from(acyclic);
    for zeta in [random::boundary_assignment(&mut rng, &s), random::class_assignment(&mut rng, &s)] {
      let boundaries = (0..n).all(|x| oracle::is_boundary(&s, x, 0, &zeta.values[x]));
      classes += usize::from(!boundaries);
      let found = find_path_independent(&s, &zeta).unwrap();
      ensure!(found.is_some() == oracle::path_independent_exists(&s, &zeta), "solver and oracle disagree");
      if let Some(gamma) = &found {
        ensure!(is_transgression(&s, &zeta, gamma) && is_path_independent(&s, gamma).independent, "invalid solution");
      }
      ensure!(!boundaries || found.is_some(), "boundaries without a path-independent transgression");
      if !boundaries && found.is_some() {
        ensure!(!acyclic, "non-boundaries solved although H¹(or P; C_1) = 0");
        converse += 1;
      }
    }
  }
  ensure!(systems >= 20, "only {systems} systems with ker δ⁰_Z = 0");
  Ok(format!(
    "{systems} systems with ker δ⁰_Z = 0 ({acyclic_systems} with H¹(or P; C_1) = 0), {classes} non-boundary assignments, {converse} solvable only through H¹(or P; C_1) ≠ 0"
  ))
}

fn fixed_complex(t: &TriangulationSystem<Q>) -> Result<(), String> {
  let s = &t.system;
  let zeta = fixtures::euler_assignment(t);
  let gamma = canonical_fixed_complex_transgression(s, &zeta, None).map_err(|e| e.to_string())?.gamma;
  ensure!(is_transgression(s, &zeta, &gamma), "not a transgression");
  ensure!(coboundary_of_transgression(s, &gamma).values().all(|v| v.iter().all(|x| *x == q(0, 1))), "δγ ≠ 0");
  for c in s.poset().chains(2) {
    let (p, m, r) = (c[0], c[1], c[2]);
    let pushed = s.map(m, r, 1).mul_vec(&gamma.values[&(p, m)]);
    let lhs: Vec<Q> = gamma.values[&(m, r)].iter().zip(pushed).map(|(a, b)| a + b).collect();
    ensure!(lhs == gamma.values[&(p, r)], "triple relation fails");
  }
  ensure!(path_independent_solution_dim(s, 0) == delta_z_image_dim(s, 0), "solution set dimension");
  Ok(())
}

fn canonical_construction() -> Outcome {
  fixed_complex(&fixtures::refined_edge())?;
  fixed_complex(&fixtures::triangle_diamond())?;
  Ok("refined edge, triangle diamond".into())
}

fn sheaf_correspondence() -> Outcome {
  let mut rng = random::rng(1010);
  for _ in 0..30 {
    let n = rng.gen_range(1..=7);
    let p = random::poset(&mut rng, n, 1, 3);
    let pieces = rng.gen_range(0..=3);
    let g = random::system(&mut rng, &p, pieces);
    let f = sheaf_from_system(&g);
    ensure!(check_sheaf_axioms(&f).is_sheaf() && flasque_check(&f), "axioms or flasqueness");
    ensure!(system_from_sheaf(&f).unwrap().dims() == upper_ideal_cochain_dims(&g).as_slice(), "round trip dimensions");
  }
  for _ in 0..20 {
    let p = random::subset_lattice(&mut rng);
    let pieces = rng.gen_range(1..=3);
    let c = lattice_comparison(&random::system(&mut rng, &p, pieces)).unwrap();
    ensure!(c.agree(), "lattice comparison {:?} {:?}", c.order, c.cech_total);
  }
  ensure!(matches!(lattice_comparison(&fixtures::crown_system()), Err(Error::NoGoodCover(_))), "crown fixture has a good cover");
  Ok("30 posets, 20 lattices, crown fixture rejected".into())
}

fn cli_determinism() -> Outcome {
  for &(name, args, code) in common::CASES {
    let golden = std::fs::read(common::golden_dir().join(format!("{name}.json"))).map_err(|e| format!("{name}: {e}"))?;
    for _ in 0..2 {
      let out = common::run(args);
      ensure!(out.status.code() == Some(code), "{name}: exit {:?}", out.status.code());
      ensure!(common::document(&out) == golden, "{name}: output differs from golden");
    }
  }
  Ok(format!("{} fixture commands, two runs each; cross-platform comparison needs a second host", common::CASES.len()))
}

#[test]
fn acceptance() {
  let criteria: [Criterion; 11] = [
    ("exactness identities", exactness_identities),
    ("Euler cycle axioms", euler_axioms),
    ("link rewrite", link_rewrite),
    ("Euler transgression", euler_transgression),
    ("lift equivalence", lift_equivalence),
    ("order cohomology propositions", order_propositions),
    ("sequence exactness", sequence_exactness),
    ("path independence", path_independence),
    ("canonical transgression", canonical_construction),
    ("poset sheaves", sheaf_correspondence),
    ("CLI determinism", cli_determinism),
  ];
  let mut failed = Vec::new();
  for (i, (name, check)) in criteria.iter().enumerate() {
    let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
    let line = match outcome {
      Ok(detail) => format!("criterion {:>2} {name}: PASS ({detail})", i + 1),
      Err(why) => {
        failed.push(i + 1);
        format!("criterion {:>2} {name}: FAIL ({why})", i + 1)
      },
    };
    writeln!(std::io::stdout().lock(), "{line}").unwrap();
  }
  assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
