use num_bigint::BigInt;
use rand::Rng;
use transgress_core::euler::{
  average_tree_lift, barycenter, euler_cycle, euler_difference, inclusion_exclusion_euler, link_local_coefficient, local_terms,
  maximal_face_coefficients, min_norm_lift, transgress_euler, Decomposition, LiftMode, PartyGraph, TransgressOptions,
};
use transgress_core::subdivision::{barycentric_subdivide, SubdivisionMap};
use transgress_core::{Chain, OrientedComplex, Rational as Q, Simplex};
use transgress_testkit::{fixtures, q, random};

fn corpus() -> Vec<OrientedComplex> {
  let mut all: Vec<OrientedComplex> = fixtures::complexes().into_iter().map(|(_, x)| x).collect();
  let mut rng = random::rng(10);
  all.extend((0..30).map(|_| random::complex(&mut rng, 7, 5, 3)));
  all
}

fn sum(terms: impl IntoIterator<Item = Chain<Q>>) -> Chain<Q> { terms.into_iter().fold(Chain::zero(0), |a, b| a.add(&b).unwrap()) }

#[test]
fn calibration_and_empty() {
  let names = ["a", "b", "c", "d", "e"];
  for k in 0..5 {
    let s = Simplex::new(names[..=k].iter().copied()).unwrap();
    let e = euler_cycle::<Q>(&OrientedComplex::closure_of(&s));
    for v in &names[..=k] {
      assert_eq!(e.coefficient(&(*v).into()), q(1, k as i64 + 1));
    }
  }
  assert!(euler_cycle::<Q>(&OrientedComplex::empty()).chain().is_zero());
}

#[test]
fn inclusion_exclusion_agrees_with_direct_formula() {
  for x in corpus() {
    let direct = euler_cycle::<Q>(&x).into_chain();
    let parts: Vec<OrientedComplex> = x.maximal_simplices().iter().map(OrientedComplex::closure_of).collect();
    assert_eq!(inclusion_exclusion_euler::<Q>(&x, &parts).unwrap(), direct);
    let facewise = sum(local_terms::<Q>(&x, Decomposition::FaceWise).unwrap().into_iter().map(|(t, c)| barycenter::<Q>(&t).scale(&c)));
    assert_eq!(facewise, direct);
    let mobius = sum(maximal_face_coefficients(&x).unwrap().into_iter().map(|(t, c)| barycenter::<Q>(&t).scale(&Q::from_integer(c.into()))));
    assert_eq!(mobius, direct);
  }
}

#[test]
fn mass_is_euler_characteristic() {
  for x in corpus() {
    assert_eq!(euler_cycle::<Q>(&x).total(), Q::from_integer(x.euler_characteristic().into()));
  }
}

#[test]
fn link_formula_at_every_vertex() {
  for x in corpus() {
    let e = euler_cycle::<Q>(&x);
    for v in x.vertices() {
      assert_eq!(link_local_coefficient::<Q>(v, &x).unwrap(), e.coefficient(v), "vertex {v}");
    }
  }
}

fn random_instance(seed: u64) -> SubdivisionMap<Q> {
  let mut rng = random::rng(seed);
  let x = random::nontrivial_complex(&mut rng);
  let moves = rng.gen_range(1..=3);
  random::stellar_script(&mut rng, &x, moves).apply(&x).unwrap()
}

#[test]
fn transgression_bounds_euler_difference() {
  for seed in 0..50 {
    let s = random_instance(100 + seed);
    let target = euler_difference(&s).unwrap();
    for decomposition in [Decomposition::FaceWise, Decomposition::InclusionExclusion] {
      for lift in [LiftMode::TreeAverage, LiftMode::MinNorm] {
        let options = TransgressOptions { lift, decomposition, ..TransgressOptions::default() };
        let t = transgress_euler(&s, &options).unwrap();
        assert_eq!(s.fine().boundary(&t.gamma).unwrap(), target, "seed {seed}");
      }
    }
  }
}

#[test]
fn stellar_triangle_spokes() {
  let s = fixtures::star_center().apply::<Q>(&fixtures::triangle()).unwrap();
  let spokes = Chain::from_oriented(1, [(vec!["a", "w"], q(1, 6)), (vec!["b", "w"], q(1, 6)), (vec!["c", "w"], q(1, 6))]).unwrap();
  for lift in [LiftMode::TreeAverage, LiftMode::MinNorm] {
    assert_eq!(transgress_euler(&s, &TransgressOptions::with_lift(lift)).unwrap().gamma, spokes);
  }
}

/// Extra simplices that avoid the starred simplex leave the transgression unchanged.
#[test]
fn locality() {
  let mut rng = random::rng(7);
  let mut checked = 0;
  while checked < 20 {
    let x = random::nontrivial_complex(&mut rng);
    let script = random::stellar_script(&mut rng, &x, 1);
    let sigma = match &script.moves[0] {
      transgress_core::subdivision::Move::Star { simplex, .. } => simplex.clone(),
      _ => unreachable!(),
    };
    let extra = random::complex(&mut rng, 8, 3, 2);
    let added: Vec<Simplex> = extra.maximal_simplices().into_iter().filter(|s| !sigma.is_face_of(s)).collect();
    let y = x.union(&OrientedComplex::from_simplices(added));
    if y.all_simplices().filter(|s| sigma.is_face_of(s)).count() != x.all_simplices().filter(|s| sigma.is_face_of(s)).count() {
      continue;
    }
    let g1 = transgress_euler(&script.apply::<Q>(&x).unwrap(), &TransgressOptions::default()).unwrap().gamma;
    let g2 = transgress_euler(&script.apply::<Q>(&y).unwrap(), &TransgressOptions::default()).unwrap().gamma;
    assert_eq!(g1, g2);
    checked += 1;
  }
}

#[test]
fn tree_average_equals_min_norm_on_small_parties() {
  let mut maps: Vec<SubdivisionMap<Q>> = (0..30).map(|seed| random_instance(500 + seed)).collect();
  maps.extend(fixtures::complexes().into_iter().filter(|(_, x)| x.dim() <= Some(2)).map(|(_, x)| barycentric_subdivide(&x).unwrap()));
  let mut rng = random::rng(11);
  let mut parties = 0;
  for s in &maps {
    for tau in s.coarse().all_simplices().filter(|t| t.dim() > 0) {
      let graph = PartyGraph::of_party(s, tau);
      if graph.spanning_tree_count() > BigInt::from(200) {
        continue;
      }
      let local = s.restricted_to(tau);
      let difference = euler_cycle::<Q>(&local).into_chain().sub(&s.apply(&barycenter(tau)).unwrap()).unwrap();
      let mut demand: Vec<Q> = graph.vertices().iter().map(|_| Q::from_integer(rng.gen_range(-3..=3).into())).collect();
      let total: Q = demand.iter().cloned().sum();
      demand[0] -= total;
      let random_demand = Chain::from_terms(0, graph.vertices().iter().cloned().map(Simplex::vertex).zip(demand)).unwrap();
      for b in [difference, random_demand] {
        assert_eq!(average_tree_lift(&graph, &b, 200).unwrap(), min_norm_lift(&graph, &b).unwrap());
      }
      parties += 1;
    }
  }
  assert!(parties > 50);
}
