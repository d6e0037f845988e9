//! Verification engine and simulator for the classical integrable systems built on the
//! rational 11-vertex R-matrix.

pub mod error;
pub mod exact;
pub mod rmatrix;
pub mod tops;
pub mod poisson;
pub mod integrate;
pub mod manybody;
pub mod lattice;
pub mod field;
