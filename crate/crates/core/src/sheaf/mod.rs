//! Sheaves on a finite poset with the upper-ideal topology, and their relation to
//! coefficient systems.

mod comparison;
mod presheaf;
mod topology;

pub use comparison::{lattice_comparison, LatticeComparison, NerveSimplex};
pub use presheaf::{
  check_sheaf_axioms, flasque_check, sheaf_from_system, system_from_sheaf, upper_ideal_cochain_dims, AxiomReport, PosetSheaf,
};
pub use topology::{OpenSet, UpperIdealTopology, MAX_TOPOLOGY_ELEMENTS};
