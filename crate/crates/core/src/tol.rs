//! Tolerance thresholds shared across the crate.
//!
//! Everything downstream of the exact monomial path is checked at `EXACT_EQ`;
//! the thresholds only matter on the dense `f64` path, where matrix products
//! of a handful of 4x4..64x64 unitaries accumulate a few ulps of noise.

/// Equality of dense matrices and residuals of identities that hold exactly.
pub const EXACT_EQ: f64 = 1e-10;

/// Grid step used when hashing dense matrices during closure enumeration.
/// Coarser than `EXACT_EQ` so float noise cannot split one element into two;
/// merges are re-verified at `EXACT_EQ` after lookup.
pub const HASH_GRID: f64 = 1e-8;

/// Unit-modulus check on user-supplied scalars (family parameters, k, x).
pub const UNIT_MODULUS: f64 = 1e-9;

/// Residual bound for randomized invariance checks (Markov moves, Wenzl
/// axioms), which chain longer products than the structural identities.
pub const INVARIANCE: f64 = 1e-9;

/// Threshold above which an entry counts as nonzero when reading a monomial
/// structure off a dense matrix.
pub const MONOMIAL_ENTRY: f64 = 1e-8;

/// Largest common phase denominator kept on the exact path; parameter sets
/// that would need a finer grid fall back to dense floats.
pub const MAX_PHASE_ORDER: i64 = 3600;
