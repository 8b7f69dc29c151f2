//! Exact Ehrhart data for lattice polytopes of small dimension.
//!
//! The crate computes lattice point counts of dilates, h*-polynomials,
//! degree and normalized volume with exact integer arithmetic, and checks the
//! known inequalities for polytopes of degree two (Scott's bound in the plane
//! and its higher-dimensional generalization) on constructed, random and
//! exhaustively enumerated polytopes.

pub mod checks;
pub mod constructions;
pub mod ehrhart;
pub mod enumeration;
pub mod equivalence;
pub mod error;
mod hull;
pub mod lattice_count;
pub mod linalg;
pub mod point;
pub mod polytope;

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 6;

pub use error::{Error, Result};
pub use point::{IntVector, LatticePoint};
pub use polytope::{affine_dim, hull, AffineLattice, Face, Halfspace, LatticePolytope};
