//! Braid group representations arising from the 4x4 unitary solutions of the
//! Yang-Baxter equation.
//!
//! The crate is organized around the pipeline
//!
//! ```text
//! ybe (solution families)  ->  braid (words, pi_n)  ->  image (finite closures)
//!                                                   ->  invariants (Markov traces)
//!                                                   ->  bmw (BMW relations, Wenzl trace)
//! ```
//!
//! with `algebra` underneath supplying exact root-of-unity scalars, monomial
//! (generalized permutation) matrices, dense complex matrices and the tensor
//! product convention used throughout: `X (x) A` places the *left* factor on
//! the fast index, so an n-strand basis state is the bitstring `(b_1, .., b_n)`
//! at index `sum_j b_j * 2^(j-1)`.

pub mod algebra;
pub mod bmw;
pub mod braid;
mod error;
pub mod image;
pub mod invariants;
pub mod tol;
pub mod ybe;

pub use algebra::{DenseMatrix, MonomialMatrix, Phase, PhaseSum, Scalar};
pub use braid::{BraidWord, Rep};
pub use error::{Error, Result};
pub use image::{GroupOrder, GroupReport};
pub use ybe::{Family, QInput, SolutionSpec, YbeSolution};
