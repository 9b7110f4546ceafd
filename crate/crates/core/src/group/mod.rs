//! Finite groups as dense multiplication tables, built from polycyclic-style
//! presentations, plus subgroup machinery (closure, commutators, power
//! subgroups).

mod pc;
mod subgroup;
mod table;

pub use pc::{PcPresentation, Word};
pub use subgroup::{closure, commutator_subgroup, power_subgroup, Subgroup};
pub use table::{GroupTable, StructureProfile};

pub(crate) use table::smallest_prime_divisor;
