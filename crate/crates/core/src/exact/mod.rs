//! Exact scalars, sparse Laurent polynomials and small matrix/tensor algebra.

pub mod laurent;
pub mod poly;
pub mod ring;
pub mod sample;
pub mod spin;
pub mod tensor;

pub use laurent::LaurentBi;
pub use poly::{Monomial, Point, SparsePoly, Var};
pub use num_traits::{One, Zero};
pub use ring::{q, q_sqrt, q_to_f64, qf, Ring, Q};
pub use sample::Sampler;
pub use spin::SpinMat;
pub use tensor::{kron, on1, on2, partial_trace_2, LegPair, TensorOp};

/// Exact scalar used by every algebraic identity check.
pub type ExactScalar = Q;
