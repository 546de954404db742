//! Homogeneous co-Higgs fields on toric sheaves.
//!
//! A toric reflexive sheaf is stored as one decreasing filtration per ray of
//! its fan. Every computation is exact over ℚ.

pub mod catalog;
pub mod error;
pub mod higgs;
pub mod klyachko;
pub mod lattice;
pub mod prehiggs;
pub mod ratlin;
pub mod symlaurent;

pub use error::{Error, Result};
pub use lattice::{Fan, HalfSpaceRegion, LatticePolytope, LatticeVec};
pub use ratlin::{Mat, Rat, Subspace};
