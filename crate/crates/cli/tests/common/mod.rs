#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

/// `(golden name, arguments, exit status)`; arguments are relative to the fixture directory.
pub const CASES: &[(&str, &[&str], i32)] = &[
  ("homology_triangle", &["homology", "triangle.json"], 0),
  ("homology_circle", &["homology", "circle.json"], 0),
  ("homology_sphere", &["homology", "sphere.json"], 0),
  ("homology_annulus", &["homology", "annulus.json"], 0),
  ("euler_triangle", &["euler", "triangle.json"], 0),
  ("euler_bowtie", &["euler", "bowtie.json"], 0),
  ("euler_annulus", &["euler", "annulus.json"], 0),
  ("subdivide_stellar", &["subdivide", "triangle.json", "stellar_center.script"], 0),
  ("subdivide_barycentric", &["subdivide", "triangle.json", "barycentric.script"], 0),
  ("transgress_stellar", &["transgress-euler", "triangle.json", "stellar_center.script"], 0),
  ("transgress_stellar_min_norm", &["transgress-euler", "triangle.json", "stellar_center.script", "--mode", "min-norm"], 0),
  ("transgress_barycentric", &["transgress-euler", "triangle.json", "barycentric.script"], 0),
  ("transgress_edge_midpoints", &["transgress-euler", "triangle.json", "edge_midpoints.script"], 0),
  ("transgress_annulus", &["transgress-euler", "annulus.json", "annulus.script", "--mode", "min-norm"], 0),
  ("order_wedge_spike", &["order-cohomology", "wedge.poset.json", "wedge_spike.system.json"], 0),
  ("order_wedge_relative", &["order-cohomology", "wedge.poset.json", "wedge_mixed.system.json", "--relative", "wedge_bottom.selector.json"], 0),
  ("order_diamond", &["order-cohomology", "diamond.poset.json", "diamond.system.json"], 0),
  ("limit_diamond", &["limit", "diamond.poset.json", "diamond.system.json"], 0),
  ("limit_wedge_mixed", &["limit", "wedge.poset.json", "wedge_mixed.system.json"], 0),
  ("sheaf_diamond", &["sheaf-compare", "diamond.poset.json", "diamond.system.json"], 0),
  ("sheaf_wedge_spike", &["sheaf-compare", "wedge.poset.json", "wedge_spike.system.json"], 0),
  ("sheaf_crown", &["sheaf-compare", "crown.poset.json", "crown.system.json"], 3),
  ("path_refined_edge_euler", &["path-independence", "refined_edge.bundle.json", "refined_edge.euler.json"], 0),
  ("path_refined_edge_points", &["path-independence", "refined_edge.bundle.json", "refined_edge.points.json"], 0),
  ("path_triangle_diamond", &["path-independence", "triangle_diamond.bundle.json", "triangle_diamond.euler.json"], 0),
  ("path_unbalanced", &["path-independence", "refined_edge.bundle.json", "refined_edge.unbalanced.json"], 3),
  ("canonical_refined_edge", &["canonical-transgression", "refined_edge.bundle.json", "refined_edge.euler.json"], 0),
  ("canonical_refined_edge_base", &["canonical-transgression", "refined_edge.bundle.json", "refined_edge.euler.json", "--base-cycle", "vertex_a.chain.json"], 0),
  ("canonical_triangle_diamond", &["canonical-transgression", "triangle_diamond.bundle.json", "triangle_diamond.euler.json"], 0),
  ("error_syntax", &["homology", "bad_syntax.json"], 2),
  ("error_vertex", &["homology", "bad_vertex.json"], 2),
  ("error_move", &["subdivide", "triangle.json", "bad_move.script"], 2),
];

pub fn fixtures() -> PathBuf { Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures") }

pub fn golden_dir() -> PathBuf { Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden") }

pub fn run(args: &[&str]) -> Output {
  Command::new(env!("CARGO_BIN_EXE_transgress")).args(args).current_dir(fixtures()).env_remove("TRANSGRESS_TREE_CAP").output().expect("binary runs")
}

/// Stdout on success, stderr otherwise.
pub fn document(out: &Output) -> Vec<u8> { if out.status.success() { out.stdout.clone() } else { out.stderr.clone() } }

pub fn json(out: &Output) -> serde_json::Value { serde_json::from_slice(&document(out)).expect("output is JSON") }
