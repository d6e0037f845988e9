//! Gaudin models and classical spin chains built from the top Lax matrices.

pub mod canonical;
pub mod chain;
pub mod gaudin;

pub use chain::{Chain, Site, TildeSite};
pub use gaudin::Gaudin;
