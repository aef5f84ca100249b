//! Finite posets, coefficient systems and order cohomology.

mod cochains;
mod poset;
mod sequences;
mod system;

pub use cochains::{
  coboundary, cohomology_representatives, order_cohomology, selector_cohomology, ChainSelector, CochainLayout, OrderCochain,
};
pub use poset::FinitePoset;
pub use sequences::*;
pub use system::{CoefficientSystem, SystemMorphism};
