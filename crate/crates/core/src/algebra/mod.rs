//! Exact and floating scalar arithmetic, dense and monomial matrices, and the
//! tensor-product convention used by every representation in this crate.

mod dense;
mod exact;
mod monomial;
mod phase;
mod scalar;

pub use dense::{kron, partial_trace_second, DenseMatrix};
pub use exact::ExactMatrix;
pub use monomial::{monomial_compose, monomial_from_dense, MonomialMatrix};
pub use phase::{Phase, PhaseSum};
pub use scalar::Scalar;
