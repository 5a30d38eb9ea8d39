//! Normal-subgroup lattices of small finite groups: Möbius functions,
//! socle and radical structure, generation by conjugacy classes and
//! faithful irreducible characters.

pub mod catalog;
pub mod chartable;
pub mod cli;
pub mod error;
pub mod generation;
pub mod group;
pub mod lattice;
pub mod moebius;
pub mod perm;
pub mod report;

mod modp;

pub use error::{Error, Result};
pub use group::{ConjClass, Group, QuotientMap, Subgroup};
pub use lattice::{NormalLattice, SocleDecomposition};
