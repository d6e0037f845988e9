//! 1+1 field theories built on the same Lax matrix as the top: the deformed
//! Landau-Lifshitz equation, the rational principal chiral model and the 1+1 Gaudin model.
//! Algebraic identities are checked on jets; evolution uses the method of lines.

pub mod chiral;
pub mod gaudin;
pub mod grid;
pub mod jet;
pub mod ll;
pub mod pde;

pub use grid::FieldGrid;
pub use jet::Jet;
pub use pde::{pde_run, Model, Monitor, PdeRun};
