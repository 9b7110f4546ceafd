//! A workbench for zero-sum invariants of finite groups.
//!
//! The crate builds finite groups as dense multiplication tables (from
//! polycyclic-style presentations or direct products), computes the product
//! sets of sequences over them exactly, determines the small and ordered
//! Davenport constants and the Gao constant by certified exhaustive search,
//! computes the Loewy length of the modular group algebra two independent
//! ways, and runs end-to-end verifiers for the relations between all of
//! these on a catalog of concrete group families.

pub mod constructions;
pub mod elemset;
pub mod error;
pub mod group;
pub mod invariant;
pub mod modalg;
pub mod products;
pub mod props;
pub mod seq;

pub use elemset::ElemSet;
pub use error::{Error, Result};
pub use group::{GroupTable, PcPresentation, Subgroup};
pub use seq::{SeqMulti, SeqOrdered};
